#include "papuf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "papuf/errors.hpp"

namespace papuf {
namespace {

void require_equal_lengths(std::span<const Response> responses) {
    for (const auto& r : responses) {
        if (r.size() != responses.front().size()) throw ShapeError("responses have different lengths");
    }
    if (responses.front().size() == 0) throw ShapeError("empty responses");
}

MinMaxAvg summarize(const std::vector<double>& values) {
    if (values.empty()) throw ParameterError("no values to summarize");
    MinMaxAvg s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.avg = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    return s;
}

/// First read of each cell, per device, in challenge order.
std::map<std::string, std::vector<const Response*>> first_reads(const CrpSet& crps) {
    std::map<std::string, std::vector<const Response*>> out;
    for (const auto& [id, cells] : crps.cells()) {
        auto& v = out[id];
        for (const auto& cell : cells) v.push_back(&cell.front()->response);
    }
    return out;
}

/// Challenge sequences must agree across devices.
std::size_t check_alignment(const CrpSet& crps) {
    const auto all = crps.cells();
    if (all.size() < 2) {
        throw PopulationError("population statistics need at least 2 devices, got " + std::to_string(all.size()));
    }
    const auto& ref = all.begin()->second;
    for (const auto& [id, cells] : all) {
        if (cells.size() != ref.size()) throw AlignmentError("device " + id + " answers a different number of challenges");
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!(cells[c].front()->challenge == ref[c].front()->challenge)) {
                throw AlignmentError("device " + id + " answers a different challenge set");
            }
        }
    }
    return ref.size();
}

void add_histogram(HdHistogram& into, const HdHistogram& from) {
    if (into.size() < from.size()) into.resize(from.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i) into[i] += from[i];
}

} // namespace

HdStats intra_hd(std::span<const Response> responses) {
    if (responses.size() < 2) throw ParameterError("intra HD needs at least 2 responses");
    require_equal_lengths(responses);
    const std::size_t n = responses.front().size();
    HdStats s;
    s.histogram.assign(n + 1, 0);
    // Integer totals keep the result independent of summation order.
    std::uint64_t total = 0;
    for (std::size_t i = 0; i + 1 < responses.size(); ++i) {
        const auto hd = hamming_distance(responses[i].bits, responses[i + 1].bits);
        ++s.histogram[hd];
        total += hd;
    }
    s.pairs = responses.size() - 1;
    s.percent = 100.0 * static_cast<double>(total) / static_cast<double>(s.pairs * n);
    return s;
}

HdStats inter_hd(std::span<const Response> responses) {
    if (responses.size() < 2) {
        throw PopulationError("inter HD needs at least 2 devices, got " + std::to_string(responses.size()));
    }
    require_equal_lengths(responses);
    const std::size_t n = responses.front().size();
    const std::size_t k = responses.size();
    HdStats s;
    s.histogram.assign(n + 1, 0);
    // 2 / (k (k - 1)) * sum(HD / n), from integer totals.
    std::uint64_t total = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto hd = hamming_distance(responses[i].bits, responses[j].bits);
            ++s.histogram[hd];
            total += hd;
        }
    }
    s.pairs = k * (k - 1) / 2;
    s.percent = 100.0 * static_cast<double>(total) / static_cast<double>(s.pairs * n);
    return s;
}

double uniformity(const Response& response) {
    if (response.size() == 0) throw ShapeError("empty response");
    return static_cast<double>(response.bits.popcount()) / static_cast<double>(response.size()) * 100.0;
}

MinMaxAvg uniformity(const CrpSet& crps, const std::optional<std::string>& device_id) {
    if (crps.empty()) throw ParameterError("uniformity of an empty CRP set");
    std::vector<double> values;
    for (const auto& [id, reads] : first_reads(crps)) {
        if (device_id && *device_id != id) continue;
        for (const Response* r : reads) values.push_back(uniformity(*r));
    }
    if (values.empty()) throw ParameterError("no responses for device " + device_id.value_or(""));
    return summarize(values);
}

MinMaxAvg bit_aliasing(const CrpSet& crps) {
    check_alignment(crps);
    const auto n = static_cast<std::size_t>(crps.response_size());
    std::vector<std::uint64_t> ones(n, 0);
    std::uint64_t rows = 0;
    for (const auto& [id, reads] : first_reads(crps)) {
        for (const Response* r : reads) {
            for (std::size_t i = 0; i < n; ++i) ones[i] += r->bits[i];
            ++rows;
        }
    }
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(ones[i]) / static_cast<double>(rows) * 100.0;
    return summarize(values);
}

Robustness robustness(const CrpSet& crps) {
    if (crps.empty()) throw ParameterError("robustness of an empty CRP set");
    std::uint64_t stable0 = 0, stable1 = 0, unstable = 0;
    const auto n = static_cast<std::size_t>(crps.response_size());
    for (const auto& [id, cells] : crps.cells()) {
        for (const auto& cell : cells) {
            if (cell.size() < 2) throw ParameterError("robustness needs at least 2 repetitions per challenge");
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t ones = 0;
                for (const CrpRecord* r : cell) ones += r->response.bits[i];
                if (ones == 0) {
                    ++stable0;
                } else if (ones == cell.size()) {
                    ++stable1;
                } else {
                    ++unstable;
                }
            }
        }
    }
    const double total = static_cast<double>(stable0 + stable1 + unstable);
    return {static_cast<double>(stable0) / total * 100.0, static_cast<double>(stable1) / total * 100.0,
            static_cast<double>(unstable) / total * 100.0};
}

HdStats reliability_hd(const CrpSet& crps, const ReliabilityOptions& options) {
    if (crps.empty()) throw ParameterError("reliability of an empty CRP set");
    if (options.enroll_reads < 1) throw ParameterError("enroll_reads must be at least 1");
    const auto n = static_cast<std::size_t>(crps.response_size());
    HdStats s;
    s.histogram.assign(n + 1, 0);
    double sum = 0.0;
    for (const auto& [id, cells] : crps.cells()) {
        for (const auto& cell : cells) {
            if (cell.size() < 2) throw ParameterError("reliability needs at least 2 repetitions per challenge");
            std::size_t enroll = std::min<std::size_t>(static_cast<std::size_t>(options.enroll_reads), cell.size());
            if (enroll % 2 == 0) --enroll;
            std::vector<Response> enrolled;
            for (std::size_t i = 0; i < enroll; ++i) enrolled.push_back(cell[i]->response);
            const Response reference = majority_vote(enrolled);
            for (const CrpRecord* r : cell) {
                const auto hd = hamming_distance(r->response.bits, reference.bits);
                ++s.histogram[hd];
                sum += static_cast<double>(hd) / static_cast<double>(n);
                ++s.pairs;
            }
        }
    }
    s.percent = 100.0 - sum / static_cast<double>(s.pairs) * 100.0;
    return s;
}

double reliability(const CrpSet& crps, const ReliabilityOptions& options) {
    return reliability_hd(crps, options).percent;
}

HdStats uniqueness_hd(const CrpSet& crps) {
    const std::size_t challenges = check_alignment(crps);
    const auto reads = first_reads(crps);
    HdStats s;
    double sum = 0.0;
    for (std::size_t c = 0; c < challenges; ++c) {
        std::vector<Response> by_device;
        for (const auto& [id, v] : reads) by_device.push_back(*v[c]);
        const HdStats one = inter_hd(by_device);
        sum += one.percent;
        add_histogram(s.histogram, one.histogram);
        s.pairs += one.pairs;
    }
    s.percent = sum / static_cast<double>(challenges);
    return s;
}

double uniqueness(const CrpSet& crps) { return uniqueness_hd(crps).percent; }

HdStats neighbor_intra_hd(const CrpSet& crps) {
    if (crps.metadata().challenge_mode != "chain") {
        throw ParameterError("neighbor intra HD needs a chain collection (challenges one bit apart)");
    }
    HdStats s;
    double sum = 0.0;
    for (const auto& [id, v] : first_reads(crps)) {
        std::vector<Response> seq;
        for (const Response* r : v) seq.push_back(*r);
        const HdStats one = intra_hd(seq);
        sum += one.percent * static_cast<double>(one.pairs);
        add_histogram(s.histogram, one.histogram);
        s.pairs += one.pairs;
    }
    s.percent = sum / static_cast<double>(s.pairs);
    return s;
}

MetricsReport compute_report(const CrpSet& crps, const ReliabilityOptions& options) {
    MetricsReport r;
    r.uniformity = uniformity(crps);
    const auto cells = crps.cells();
    r.devices = static_cast<int>(cells.size());
    r.challenges = static_cast<int>(cells.begin()->second.size());
    r.response_size = crps.response_size();
    int min_reads = std::numeric_limits<int>::max();
    for (const auto& [id, v] : cells) {
        for (const auto& cell : v) min_reads = std::min(min_reads, static_cast<int>(cell.size()));
    }
    r.repetitions = min_reads;
    if (r.devices >= 2) {
        r.bit_aliasing = bit_aliasing(crps);
        const HdStats u = uniqueness_hd(crps);
        r.uniqueness = u.percent;
        r.inter_hd_histogram = u.histogram;
    }
    r.intra_hd_source = "none";
    if (min_reads >= 2) {
        const HdStats rel = reliability_hd(crps, options);
        r.reliability = rel.percent;
        r.robustness = robustness(crps);
        r.intra_hd_histogram = rel.histogram;
        r.intra_hd_source = "repeat";
    }
    if (crps.metadata().challenge_mode == "chain" && r.challenges >= 2) {
        const HdStats intra = neighbor_intra_hd(crps);
        r.intra_hd_percent = intra.percent;
        r.intra_hd_histogram = intra.histogram;
        r.intra_hd_source = "neighbor";
    }
    return r;
}

double simulated_reliability(const DeviceInstance& device, double sigma_noise,
                             const CalibrationOptions& options) {
    const DeviceInstance noisy = device.with_noise(sigma_noise);
    CollectOptions collect;
    collect.num_challenges = options.challenges;
    collect.repetitions = options.repetitions;
    collect.response_size = options.response_size;
    collect.master_eval_seed = options.eval_seed;
    const CrpSet crps = collect_crps(std::span<const DeviceInstance>(&noisy, 1), collect);
    return reliability(crps, ReliabilityOptions{options.enroll_reads});
}

CalibrationResult calibrate_noise(double target, const DeviceInstance& device,
                                  const CalibrationOptions& options) {
    if (!(target > 50.0 && target <= 100.0)) throw ParameterError("target reliability must lie in (50, 100]");
    if (!(options.sigma_low >= 0.0 && options.sigma_high > options.sigma_low)) {
        throw ParameterError("calibration bounds must satisfy 0 <= low < high");
    }
    if (options.repetitions < 2) throw ParameterError("calibration needs at least 2 repetitions");

    CalibrationResult result;
    double lo = options.sigma_low;
    double hi = options.sigma_high;
    const double rel_lo = simulated_reliability(device, lo, options);
    result.iterations = 1;
    if (std::abs(rel_lo - target) <= options.tolerance) return {lo, rel_lo, 1};
    if (rel_lo < target) {
        throw CalibrationError("reliability at sigma_noise=" + std::to_string(lo) + " is already " +
                               std::to_string(rel_lo) + "%, below the target");
    }
    const double rel_hi = simulated_reliability(device, hi, options);
    result.iterations = 2;
    if (std::abs(rel_hi - target) <= options.tolerance) return {hi, rel_hi, 2};
    if (rel_hi > target) {
        throw CalibrationError("reliability at sigma_noise=" + std::to_string(hi) + " is still " +
                               std::to_string(rel_hi) + "%, above the target");
    }
    for (int it = 0; it < options.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double rel = simulated_reliability(device, mid, options);
        result.iterations += 1;
        if (std::abs(rel - target) <= options.tolerance) {
            result.sigma_noise = mid;
            result.reliability = rel;
            return result;
        }
        (rel > target ? lo : hi) = mid;
    }
    throw CalibrationError("bisection did not reach the target within " +
                           std::to_string(options.max_iterations) + " iterations");
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ParameterError("spearman needs two equal series of length >= 2");
    const auto ranks = [](std::span<const double> v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

} // namespace papuf
