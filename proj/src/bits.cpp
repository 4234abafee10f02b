#include "papuf/bits.hpp"

#include <algorithm>
#include <cctype>

#include "papuf/errors.hpp"

namespace papuf {

BitVector::BitVector(std::vector<Bit> bits) : bits_(std::move(bits)) {
    for (Bit& b : bits_) {
        if (b > 1) throw ParameterError("bit values must be 0 or 1");
    }
}

BitVector BitVector::from_string(std::string_view s) {
    std::vector<Bit> bits;
    bits.reserve(s.size());
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw FormatError("invalid bit character in '" + std::string(s) + "'");
        bits.push_back(static_cast<Bit>(ch - '0'));
    }
    return BitVector(std::move(bits));
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t size) {
    if (hex.size() * 4 < size || hex.size() > (size + 3) / 4) {
        throw FormatError("hex string '" + std::string(hex) + "' does not hold " +
                          std::to_string(size) + " bits");
    }
    BitVector out(size);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[i])));
        int nibble;
        if (ch >= '0' && ch <= '9') {
            nibble = ch - '0';
        } else if (ch >= 'a' && ch <= 'f') {
            nibble = ch - 'a' + 10;
        } else {
            throw FormatError("invalid hex character in '" + std::string(hex) + "'");
        }
        for (int b = 0; b < 4; ++b) {
            const std::size_t pos = i * 4 + static_cast<std::size_t>(b);
            const Bit bit = static_cast<Bit>((nibble >> (3 - b)) & 1);
            if (pos < size) {
                out.bits_[pos] = bit;
            } else if (bit) {
                throw FormatError("nonzero padding bits in '" + std::string(hex) + "'");
            }
        }
    }
    return out;
}

std::size_t BitVector::popcount() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), Bit{1}));
}

BitVector BitVector::complement() const {
    BitVector out = *this;
    for (Bit& b : out.bits_) b ^= 1;
    return out;
}

BitVector BitVector::slice(std::size_t begin, std::size_t length) const {
    if (begin + length > bits_.size()) throw ShapeError("slice out of range");
    return BitVector(std::vector<Bit>(bits_.begin() + static_cast<std::ptrdiff_t>(begin),
                                      bits_.begin() + static_cast<std::ptrdiff_t>(begin + length)));
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (Bit b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
}

std::string BitVector::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    s.reserve((bits_.size() + 3) / 4);
    for (std::size_t i = 0; i < bits_.size(); i += 4) {
        int nibble = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            nibble <<= 1;
            if (i + b < bits_.size()) nibble |= bits_[i + b];
        }
        s.push_back(kDigits[nibble]);
    }
    return s;
}

BitVector operator^(const BitVector& a, const BitVector& b) {
    if (a.size() != b.size()) throw ShapeError("xor of bit vectors with different lengths");
    BitVector out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.bits_[i] ^= b.bits_[i];
    return out;
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
    if (a.size() != b.size()) {
        throw ShapeError("hamming distance of lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

} // namespace papuf
