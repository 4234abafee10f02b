#include "oracle.hpp"

#include <array>
#include <stdexcept>

namespace papuf::oracle {
namespace {

// Which input line drives `line` when its mux is switched. Written out as
// tables rather than derived: for two lines the signals cross; for three the
// signal on T moves to C, C to B and B to T.
constexpr std::array<int, 2> kSwapSource = {1, 0};
constexpr std::array<int, 3> kRotateSource = {2, 0, 1};

struct Tracer {
    const DeviceInstance& device;
    const Challenge& challenge;

    int select(int stage, int line) const {
        const auto& taps = device.netlist().taps();
        for (const auto& tap : taps) {
            if (tap.target_stage != stage) continue;
            const std::array<double, 3> a = {arrival(tap.tap_stage, 0), arrival(tap.tap_stage, 1),
                                             arrival(tap.tap_stage, 2)};
            // The arbiter on line x races x against the next line in T, C, B order.
            const int other = (line + 1) % 3;
            if (a[line] == a[other]) throw std::domain_error("tie");
            return a[line] < a[other] ? 1 : 0;
        }
        return challenge.bits[static_cast<std::size_t>(stage)];
    }

    // Arrival at the output of `stage` on `line`, by walking backwards.
    double arrival(int stage, int line) const {
        double sum = 0.0;
        for (int i = stage; i >= 0; --i) {
            const int s = select(i, line);
            sum += device.delay(i, s, line);
            if (s == 1) {
                line = device.netlist().lines() == 2 ? kSwapSource[static_cast<std::size_t>(line)]
                                                     : kRotateSource[static_cast<std::size_t>(line)];
            }
        }
        return sum;
    }
};

int latch(double data, double clock) {
    if (data == clock) throw std::domain_error("tie");
    return data < clock ? 1 : 0;
}

} // namespace

std::optional<Bit> exhaustive_propagate(const DeviceInstance& device, const Challenge& challenge) {
    const int stages = device.netlist().stages();
    if (stages > kMaxStages) throw std::invalid_argument("oracle limited to 4 stages");
    if (static_cast<int>(challenge.size()) != stages) throw std::invalid_argument("width mismatch");
    const Tracer tr{device, challenge};
    try {
        const int last = stages - 1;
        if (device.netlist().lines() == 2) {
            return static_cast<Bit>(latch(tr.arrival(last, 0), tr.arrival(last, 1)));
        }
        const double t = tr.arrival(last, 0), c = tr.arrival(last, 1), b = tr.arrival(last, 2);
        // Gate-level priority arbiter: three D flip-flops and an XNOR tree.
        const int q_t = latch(t, c);
        const int q_c = latch(c, b);
        const int q_b = latch(b, t);
        return static_cast<Bit>(1 - (q_t ^ q_c ^ q_b));
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

NearestCodeword naive_nearest_codeword(const BitVector& received, int n, int k,
                                       std::uint32_t generator) {
    if (n > kMaxCodeLength) throw std::invalid_argument("oracle limited to n <= 15");
    if (static_cast<int>(received.size()) != n) throw std::invalid_argument("length mismatch");
    std::uint32_t word = 0;
    for (int i = 0; i < n; ++i) word |= static_cast<std::uint32_t>(received[static_cast<std::size_t>(i)]) << i;

    NearestCodeword best;
    best.distance = n + 1;
    std::uint32_t best_cw = 0;
    for (std::uint32_t m = 0; m < (1u << k); ++m) {
        std::uint32_t cw = 0;
        for (int i = 0; i < k; ++i) {
            if ((m >> i) & 1u) cw ^= generator << i;
        }
        const int d = __builtin_popcount(cw ^ word);
        if (d < best.distance) {
            best.distance = d;
            best.unique = true;
            best_cw = cw;
        } else if (d == best.distance) {
            best.unique = false;
        }
    }
    best.codeword = BitVector(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) best.codeword[static_cast<std::size_t>(i)] = static_cast<Bit>((best_cw >> i) & 1u);
    best.message = best.codeword.slice(static_cast<std::size_t>(n - k), static_cast<std::size_t>(k));
    return best;
}

NearestCodeword naive_nearest_codeword(const BitVector& received, const BchCode& code) {
    if (code.n() > kMaxCodeLength) throw std::invalid_argument("oracle limited to n <= 15");
    std::uint32_t g = 0;
    const auto& coeffs = code.generator();
    for (std::size_t i = 0; i < coeffs.size(); ++i) g |= static_cast<std::uint32_t>(coeffs[i]) << i;
    return naive_nearest_codeword(received, code.n(), code.k(), g);
}

namespace {
long count_differences(const std::vector<int>& a, const std::vector<int>& b) {
    long d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}
} // namespace

double naive_intra_percent(const std::vector<std::vector<int>>& r) {
    long total = 0, pairs = 0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i, ++pairs) total += count_differences(r[i], r[i + 1]);
    return 100.0 * static_cast<double>(total) / static_cast<double>(pairs * static_cast<long>(r[0].size()));
}

double naive_inter_percent(const std::vector<std::vector<int>>& r) {
    long total = 0, pairs = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (i < j) {
                total += count_differences(r[i], r[j]);
                ++pairs;
            }
        }
    }
    return 100.0 * static_cast<double>(total) / static_cast<double>(pairs * static_cast<long>(r[0].size()));
}

} // namespace papuf::oracle
