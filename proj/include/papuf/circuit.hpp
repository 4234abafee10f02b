#pragma once

#include <array>
#include <cstdint>

#include "papuf/bits.hpp"
#include "papuf/device_model.hpp"

namespace papuf {

enum Line : int { kTop = 0, kCenter = 1, kBottom = 2 };

/// Arrival time per line (T, C, B); APUF uses the first two entries.
using ArrivalTimes = std::array<double, 3>;

/// D flip-flop arbiter: `data` arriving before `clock` latches 1, after latches 0.
/// Inside a positive metastability window the output is a fair coin keyed by
/// tie_seed; with a zero window an exact tie deterministically latches 0.
Bit simple_arbiter(double t_data, double t_clock, double window, std::uint64_t tie_seed);

/// Strict arrival ordering of three lines, enumerated first-to-last in
/// lexicographic order: TCB, TBC, CTB, CBT, BTC, BCT.
int ordering_index(const std::array<int, 3>& first_to_last);

/// Output bit for each of the six strict orderings (indexed by ordering_index).
using PriorityTable = std::array<Bit, 6>;

/// 1 exactly on the cyclic rotations of (T, C, B).
inline constexpr PriorityTable kCanonicalPriorityTable = {1, 0, 0, 1, 1, 0};

/// Three-input priority arbiter. Pairwise races are resolved like simple
/// arbiters; a consistent result is looked up in `table`. A cyclic result
/// (only possible under ties) yields a random bit, or 0 with a zero window.
Bit priority_arbiter(const ArrivalTimes& arrivals, double window, std::uint64_t tie_seed,
                     const PriorityTable& table = kCanonicalPriorityTable);

struct FeedForwardBits {
    Bit f0 = 0; // arb(T, C) -> T-line select
    Bit f1 = 0; // arb(C, B) -> C-line select
    Bit f2 = 0; // arb(B, T) -> B-line select

    friend bool operator==(const FeedForwardBits&, const FeedForwardBits&) = default;
};

FeedForwardBits feed_forward_arbiter(const ArrivalTimes& arrivals, double window,
                                     std::uint64_t tie_seed);

/// Source line feeding output `line` when its mux select is 1: swap for two
/// lines, rotation T->C->B->T for three.
constexpr int rotated_source(int line, int lines) noexcept {
    return lines == 2 ? 1 - line : (line + lines - 1) % lines;
}

/// Race the lines through the mux chain and arbitrate the response bit.
/// Noise and tie-breaking are derived from eval_seed.
Bit propagate(const DeviceInstance& device, const Challenge& challenge, std::uint64_t eval_seed,
              const PriorityTable& table = kCanonicalPriorityTable);

/// Noiseless arrival times at the end of the chain (feed-forward arbiters
/// resolved without jitter, ties keyed by tie_seed).
ArrivalTimes final_arrivals(const DeviceInstance& device, const Challenge& challenge,
                            std::uint64_t tie_seed = 0);

} // namespace papuf
