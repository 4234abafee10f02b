#include "papuf/lfsr.hpp"

#include <map>

#include "papuf/errors.hpp"

namespace papuf {
namespace {

const std::map<int, LfsrTaps>& tap_table() {
    static const std::map<int, LfsrTaps> table = [] {
        const std::vector<std::vector<int>> sets = {
            {2, 1},          {3, 2},          {4, 3},          {5, 3},         {6, 5},
            {7, 6},          {8, 6, 5, 4},    {9, 5},          {10, 7},        {11, 9},
            {12, 6, 4, 1},   {13, 4, 3, 1},   {14, 5, 3, 1},   {15, 14},       {16, 15, 13, 4},
            {17, 14},        {18, 11},        {19, 6, 2, 1},   {20, 17},       {21, 19},
            {22, 21},        {23, 18},        {24, 23, 22, 17}, {32, 22, 2, 1}, {64, 63, 61, 60},
            {128, 126, 101, 99},
        };
        std::map<int, LfsrTaps> m;
        for (const auto& s : sets) m[s.front()] = LfsrTaps{s.front(), s};
        return m;
    }();
    return table;
}

} // namespace

std::string LfsrTaps::describe() const {
    std::string s = std::to_string(width) + ":";
    for (std::size_t i = 0; i < taps.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(taps[i]);
    }
    return s;
}

bool has_lfsr_taps(int width) noexcept { return tap_table().count(width) != 0; }

const LfsrTaps& lfsr_taps(int width) {
    const auto& table = tap_table();
    const auto it = table.find(width);
    if (it == table.end()) throw ParameterError("no maximal-length LFSR taps for width " + std::to_string(width));
    return it->second;
}

void lfsr_step(BitVector& window, const LfsrTaps& taps) {
    const std::size_t n = window.size();
    Bit feedback = 0;
    for (int t : taps.taps) feedback ^= window[n - static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i + 1 < n; ++i) window[i] = window[i + 1];
    window[n - 1] = feedback;
}

std::vector<Challenge> expand_challenge(const Challenge& seed, int count) {
    if (count < 1) throw ParameterError("expansion count must be at least 1");
    const int width = static_cast<int>(seed.size());
    const LfsrTaps& taps = lfsr_taps(width);
    if (seed.bits.is_zero()) throw DegenerateSeedError("the all-zero seed challenge is a fixed point of the LFSR");

    // Register packed into 128 bits, bit i = window[i].
    using Word = unsigned __int128;
    Word state = 0;
    for (int i = 0; i < width; ++i) {
        if (seed.bits[static_cast<std::size_t>(i)]) state |= Word{1} << i;
    }
    Word tap_mask = 0;
    for (int t : taps.taps) tap_mask |= Word{1} << (width - t);
    const auto parity = [](Word w) {
        return (__builtin_popcountll(static_cast<std::uint64_t>(w)) +
                __builtin_popcountll(static_cast<std::uint64_t>(w >> 64))) & 1;
    };

    std::vector<Challenge> out;
    out.reserve(static_cast<std::size_t>(count));
    out.push_back(seed);
    for (int e = 1; e < count; ++e) {
        for (int s = 0; s < width; ++s) {
            const Word feedback = static_cast<Word>(parity(state & tap_mask));
            state = (state >> 1) | (feedback << (width - 1));
        }
        Challenge c{BitVector(static_cast<std::size_t>(width))};
        for (int i = 0; i < width; ++i) c.bits[static_cast<std::size_t>(i)] = static_cast<Bit>((state >> i) & 1);
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace papuf
