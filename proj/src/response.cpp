#include "papuf/response.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "papuf/circuit.hpp"
#include "papuf/errors.hpp"
#include "papuf/lfsr.hpp"
#include "papuf/random.hpp"

namespace papuf {
namespace {

constexpr std::uint64_t kChallengeStream = 0x11;
constexpr std::uint64_t kChainFlipStream = 0x12;
constexpr std::uint64_t kRecordStream = 0x13;

} // namespace

bool is_supported_response_size(int size) noexcept {
    return std::find(std::begin(kSupportedResponseSizes), std::end(kSupportedResponseSizes), size) !=
           std::end(kSupportedResponseSizes);
}

Response evaluate_response(const DeviceInstance& device, const Challenge& seed_challenge,
                           int response_size, std::uint64_t eval_seed) {
    if (!is_supported_response_size(response_size)) {
        throw ParameterError("unsupported response size " + std::to_string(response_size));
    }
    if (seed_challenge.size() != static_cast<std::size_t>(device.netlist().stages())) {
        throw ShapeError("seed challenge width does not match the netlist stage count");
    }
    const auto challenges = expand_challenge(seed_challenge, response_size);
    Response r{BitVector(static_cast<std::size_t>(response_size))};
    for (int i = 0; i < response_size; ++i) {
        r.bits[static_cast<std::size_t>(i)] =
            propagate(device, challenges[static_cast<std::size_t>(i)], derive_seed(eval_seed, static_cast<std::uint64_t>(i)));
    }
    return r;
}

CrpSet::CrpSet(Metadata meta, std::vector<CrpRecord> records)
    : meta_(std::move(meta)), records_(std::move(records)) {
    std::sort(records_.begin(), records_.end(), [](const CrpRecord& a, const CrpRecord& b) {
        return std::tie(a.device_id, a.challenge_index, a.repetition) <
               std::tie(b.device_id, b.challenge_index, b.repetition);
    });
    std::set<std::tuple<std::string, Challenge, int>> keys;
    for (const auto& r : records_) {
        if (r.response.size() != records_.front().response.size()) {
            throw ShapeError("CRP set mixes response lengths");
        }
        if (r.repetition < 0) throw FormatError("negative repetition index");
        if (!keys.emplace(r.device_id, r.challenge, r.repetition).second) {
            throw FormatError("duplicate CRP record for device " + r.device_id + ", challenge " +
                              r.challenge.bits.to_hex() + ", repetition " + std::to_string(r.repetition));
        }
    }
}

int CrpSet::response_size() const noexcept {
    return records_.empty() ? 0 : static_cast<int>(records_.front().response.size());
}

std::vector<std::string> CrpSet::device_ids() const {
    std::vector<std::string> ids;
    for (const auto& r : records_) {
        if (ids.empty() || ids.back() != r.device_id) ids.push_back(r.device_id);
    }
    return ids;
}

int CrpSet::repetitions() const {
    int reps = 0;
    for (const auto& r : records_) reps = std::max(reps, r.repetition + 1);
    return reps;
}

std::map<std::string, std::vector<CrpSet::Cell>> CrpSet::cells() const {
    std::map<std::string, std::vector<Cell>> out;
    const CrpRecord* prev = nullptr;
    for (const auto& r : records_) {
        auto& device_cells = out[r.device_id];
        if (prev == nullptr || prev->device_id != r.device_id || prev->challenge_index != r.challenge_index) {
            device_cells.emplace_back();
        }
        device_cells.back().push_back(&r);
        prev = &r;
    }
    return out;
}

Challenge random_challenge(int width, std::uint64_t seed) {
    if (width < 1) throw ParameterError("challenge width must be positive");
    SplitMix64 engine(seed);
    Challenge c{BitVector(static_cast<std::size_t>(width))};
    do {
        std::uint64_t word = 0;
        for (int i = 0; i < width; ++i) {
            if (i % 64 == 0) word = engine();
            c.bits[static_cast<std::size_t>(i)] = static_cast<Bit>((word >> (i % 64)) & 1);
        }
    } while (c.bits.is_zero());
    return c;
}

CrpSet collect_crps(std::span<const DeviceInstance> population, const CollectOptions& options) {
    if (population.empty()) throw ParameterError("CRP collection needs a non-empty population");
    if (options.num_challenges < 1) throw ParameterError("num_challenges must be at least 1");
    if (options.repetitions < 1) throw ParameterError("repetitions must be at least 1");
    if (!is_supported_response_size(options.response_size)) {
        throw ParameterError("unsupported response size " + std::to_string(options.response_size));
    }
    const Netlist& netlist = population.front().netlist();
    for (const auto& d : population) {
        if (!(d.netlist() == netlist)) throw PopulationError("population mixes netlists");
    }
    const int width = netlist.stages();
    const std::uint64_t master = options.master_eval_seed;

    if (width < 63 && static_cast<double>(options.num_challenges) >= std::ldexp(1.0, width) - 1.0) {
        throw ParameterError("more challenges requested than distinct nonzero " + std::to_string(width) +
                             "-bit challenges");
    }
    std::vector<Challenge> challenges;
    std::set<Challenge> seen;
    if (options.challenge_mode == "random") {
        for (int c = 0; c < options.num_challenges; ++c) {
            for (std::uint64_t attempt = 0;; ++attempt) {
                auto next = random_challenge(width, derive_seed(master, {kChallengeStream, static_cast<std::uint64_t>(c), attempt}));
                if (seen.insert(next).second) {
                    challenges.push_back(std::move(next));
                    break;
                }
            }
        }
    } else if (options.challenge_mode == "chain") {
        challenges.push_back(random_challenge(width, derive_seed(master, {kChallengeStream, 0})));
        seen.insert(challenges.back());
        for (int c = 1; c < options.num_challenges; ++c) {
            for (std::uint64_t attempt = 0;; ++attempt) {
                Challenge next = challenges.back();
                const auto pos = derive_seed(master, {kChainFlipStream, static_cast<std::uint64_t>(c), attempt}) %
                                 static_cast<std::uint64_t>(width);
                next.bits.flip(static_cast<std::size_t>(pos));
                if (!next.bits.is_zero() && seen.insert(next).second) {
                    challenges.push_back(std::move(next));
                    break;
                }
                if (attempt > 10000) throw ParameterError("cannot extend the challenge chain without repeats");
            }
        }
    } else {
        throw ParameterError("unknown challenge mode '" + options.challenge_mode + "'");
    }

    std::vector<CrpRecord> records;
    records.reserve(population.size() * challenges.size() * static_cast<std::size_t>(options.repetitions));
    for (const auto& device : population) {
        for (std::size_t c = 0; c < challenges.size(); ++c) {
            for (int rep = 0; rep < options.repetitions; ++rep) {
                const auto seed = derive_seed(master, {kRecordStream, device.seed(), c, static_cast<std::uint64_t>(rep)});
                records.push_back(CrpRecord{device.id(), static_cast<int>(c), challenges[c], rep,
                                            evaluate_response(device, challenges[c], options.response_size, seed)});
            }
        }
    }

    CrpSet::Metadata meta;
    meta.netlist = netlist.descriptor();
    meta.lfsr = lfsr_taps(width).describe();
    meta.params = population.front().params();
    meta.eval_seed = master;
    meta.challenge_mode = options.challenge_mode;
    return CrpSet(std::move(meta), std::move(records));
}

Response majority_vote(std::span<const Response> responses) {
    if (responses.empty() || responses.size() % 2 == 0) {
        throw ParameterError("majority vote needs an odd number of responses, got " +
                             std::to_string(responses.size()));
    }
    const std::size_t n = responses.front().size();
    std::vector<std::size_t> ones(n, 0);
    for (const auto& r : responses) {
        if (r.size() != n) throw ShapeError("majority vote over responses of different lengths");
        for (std::size_t i = 0; i < n; ++i) ones[i] += r.bits[i];
    }
    Response out{BitVector(n)};
    for (std::size_t i = 0; i < n; ++i) out.bits[i] = ones[i] * 2 > responses.size() ? 1 : 0;
    return out;
}

} // namespace papuf
