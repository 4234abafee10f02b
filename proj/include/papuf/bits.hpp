#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace papuf {

using Bit = std::uint8_t;

/// Fixed-length bit string, one byte per bit (values 0/1).
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size, Bit fill = 0) : bits_(size, fill) {}
    explicit BitVector(std::vector<Bit> bits);

    /// Parse "0101..." (index 0 first).
    static BitVector from_string(std::string_view s);
    /// Parse a hex string; bit 0 is the most significant bit of the first nibble.
    static BitVector from_hex(std::string_view hex, std::size_t size);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    Bit operator[](std::size_t i) const noexcept { return bits_[i]; }
    Bit& operator[](std::size_t i) noexcept { return bits_[i]; }

    std::span<const Bit> view() const noexcept { return bits_; }
    const std::vector<Bit>& data() const noexcept { return bits_; }

    std::size_t popcount() const noexcept;
    bool is_zero() const noexcept { return popcount() == 0; }

    void flip(std::size_t i) noexcept { bits_[i] ^= 1; }
    BitVector complement() const;
    BitVector slice(std::size_t begin, std::size_t length) const;

    std::string to_string() const;
    /// Hex encoding padded with zero bits to a whole nibble count.
    std::string to_hex() const;

    friend BitVector operator^(const BitVector& a, const BitVector& b);
    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend auto operator<=>(const BitVector&, const BitVector&) = default;

private:
    std::vector<Bit> bits_;
};

std::size_t hamming_distance(const BitVector& a, const BitVector& b);

/// Challenge applied to a mux chain; bit i drives stage i.
struct Challenge {
    BitVector bits;

    std::size_t size() const noexcept { return bits.size(); }
    friend bool operator==(const Challenge&, const Challenge&) = default;
    friend auto operator<=>(const Challenge&, const Challenge&) = default;
};

/// Multi-bit PUF response.
struct Response {
    BitVector bits;

    std::size_t size() const noexcept { return bits.size(); }
    friend bool operator==(const Response&, const Response&) = default;
};

} // namespace papuf
