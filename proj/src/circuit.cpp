#include "papuf/circuit.hpp"

#include <cmath>

#include "papuf/errors.hpp"
#include "papuf/random.hpp"

namespace papuf {
namespace {

// Stream ids under an evaluation seed.
constexpr std::uint64_t kTerminalNoise = 1;
constexpr std::uint64_t kFeedForwardNoise = 2;
constexpr std::uint64_t kFeedForwardTie = 3;
constexpr std::uint64_t kFinalTie = 4;

Bit coin(std::uint64_t seed) noexcept { return static_cast<Bit>(mix64(seed) >> 63); }

ArrivalTimes run_chain(const DeviceInstance& device, const Challenge& challenge,
                       std::uint64_t eval_seed, bool noisy) {
    const Netlist& net = device.netlist();
    if (challenge.size() != static_cast<std::size_t>(net.stages())) {
        throw ShapeError("challenge has " + std::to_string(challenge.size()) + " bits, netlist has " +
                         std::to_string(net.stages()) + " stages");
    }
    const int lines = net.lines();
    const double window = device.params().metastability_window;
    const auto& taps = net.taps();
    std::vector<FeedForwardBits> ff(taps.size());

    ArrivalTimes t{0.0, 0.0, 0.0};
    for (int stage = 0; stage < net.stages(); ++stage) {
        std::array<int, 3> select;
        const int driver = net.tap_driving(stage);
        if (driver < 0) {
            select.fill(challenge.bits[static_cast<std::size_t>(stage)]);
        } else {
            const auto& f = ff[static_cast<std::size_t>(driver)];
            select = {f.f0, f.f1, f.f2};
        }
        ArrivalTimes next{0.0, 0.0, 0.0};
        for (int line = 0; line < lines; ++line) {
            const int s = select[static_cast<std::size_t>(line)];
            const int source = s ? rotated_source(line, lines) : line;
            next[static_cast<std::size_t>(line)] =
                t[static_cast<std::size_t>(source)] + device.delay(stage, s, line);
        }
        t = next;
        for (std::size_t k = 0; k < taps.size(); ++k) {
            if (taps[k].tap_stage != stage) continue;
            ArrivalTimes sampled = t;
            if (noisy) {
                const LineJitter j = sample_noise(device, derive_seed(eval_seed, {kFeedForwardNoise, k}));
                for (int line = 0; line < lines; ++line) sampled[static_cast<std::size_t>(line)] += j[static_cast<std::size_t>(line)];
            }
            ff[k] = feed_forward_arbiter(sampled, window, derive_seed(eval_seed, {kFeedForwardTie, k}));
        }
    }
    if (noisy) {
        const LineJitter j = sample_noise(device, derive_seed(eval_seed, kTerminalNoise));
        for (int line = 0; line < lines; ++line) t[static_cast<std::size_t>(line)] += j[static_cast<std::size_t>(line)];
    }
    return t;
}

} // namespace

Bit simple_arbiter(double t_data, double t_clock, double window, std::uint64_t tie_seed) {
    // A zero window disables the random path: an exact tie latches 0.
    if (window > 0.0 && std::abs(t_data - t_clock) <= window) return coin(tie_seed);
    return t_data < t_clock ? 1 : 0;
}

int ordering_index(const std::array<int, 3>& o) {
    // Lexicographic rank of a permutation of {0, 1, 2}.
    const int first = o[0];
    const int second_rank = o[1] > o[2] ? 1 : 0;
    return first * 2 + second_rank;
}

Bit priority_arbiter(const ArrivalTimes& a, double window, std::uint64_t tie_seed,
                     const PriorityTable& table) {
    // wins[x] counts the pairwise races line x won.
    std::array<int, 3> wins{0, 0, 0};
    const auto race = [&](int x, int y, std::uint64_t pair) {
        if (simple_arbiter(a[static_cast<std::size_t>(x)], a[static_cast<std::size_t>(y)], window,
                           derive_seed(tie_seed, pair))) {
            ++wins[static_cast<std::size_t>(x)];
        } else {
            ++wins[static_cast<std::size_t>(y)];
        }
    };
    race(kTop, kCenter, 0);
    race(kCenter, kBottom, 1);
    race(kBottom, kTop, 2);

    std::array<int, 3> order{-1, -1, -1};
    for (int line = 0; line < 3; ++line) {
        const int w = wins[static_cast<std::size_t>(line)];
        // wins 2 -> first, 1 -> second, 0 -> last
        auto& slot = order[static_cast<std::size_t>(2 - w)];
        if (slot != -1) return window > 0.0 ? coin(derive_seed(tie_seed, 3)) : 0; // cyclic
        slot = line;
    }
    return table[static_cast<std::size_t>(ordering_index(order))];
}

FeedForwardBits feed_forward_arbiter(const ArrivalTimes& a, double window, std::uint64_t tie_seed) {
    return {simple_arbiter(a[kTop], a[kCenter], window, derive_seed(tie_seed, 0)),
            simple_arbiter(a[kCenter], a[kBottom], window, derive_seed(tie_seed, 1)),
            simple_arbiter(a[kBottom], a[kTop], window, derive_seed(tie_seed, 2))};
}

Bit propagate(const DeviceInstance& device, const Challenge& challenge, std::uint64_t eval_seed,
              const PriorityTable& table) {
    const ArrivalTimes t = run_chain(device, challenge, eval_seed, true);
    const double window = device.params().metastability_window;
    const std::uint64_t tie = derive_seed(eval_seed, kFinalTie);
    if (device.netlist().lines() == 2) return simple_arbiter(t[kTop], t[kCenter], window, tie);
    return priority_arbiter(t, window, tie, table);
}

ArrivalTimes final_arrivals(const DeviceInstance& device, const Challenge& challenge,
                            std::uint64_t tie_seed) {
    return run_chain(device, challenge, tie_seed, false);
}

} // namespace papuf
