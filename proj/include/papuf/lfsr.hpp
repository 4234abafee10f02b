#pragma once

#include <string>
#include <vector>

#include "papuf/bits.hpp"

namespace papuf {

/// Fibonacci LFSR taps (maximal-length sets from the Xilinx XAPP052 table).
/// A tap t feeds back the register bit that is t steps old, so with the
/// register window w the next bit is XOR over taps of w[width - t].
struct LfsrTaps {
    int width = 0;
    std::vector<int> taps;

    std::string describe() const; // e.g. "16:16,15,13,4"
};

bool has_lfsr_taps(int width) noexcept;
/// Throws ParameterError for widths without a published tap set.
const LfsrTaps& lfsr_taps(int width);

/// Shift the window by one step.
void lfsr_step(BitVector& window, const LfsrTaps& taps);

/// Element 0 is the seed itself; element i is the register after i * width
/// shifts, so consecutive challenges share no register bits. Since 2^w - 1 is
/// odd, the decimated sequence still visits every nonzero state.
std::vector<Challenge> expand_challenge(const Challenge& seed, int count);

} // namespace papuf
