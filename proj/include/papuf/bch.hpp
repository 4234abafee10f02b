#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "papuf/bits.hpp"

namespace papuf {

/// GF(2^m) with log/antilog tables.
class GaloisField {
public:
    explicit GaloisField(int m);

    int m() const noexcept { return m_; }
    int order() const noexcept { return n_; } // 2^m - 1
    std::uint32_t primitive_polynomial() const noexcept { return prim_; }

    std::uint32_t alpha_pow(long e) const noexcept;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t inv(std::uint32_t a) const noexcept;
    int log(std::uint32_t a) const noexcept { return log_[a]; }

private:
    int m_;
    int n_;
    std::uint32_t prim_;
    std::vector<std::uint32_t> exp_;
    std::vector<int> log_;
};

/// Narrow-sense binary BCH code of length n = 2^m - 1 correcting t errors.
/// Encoding is systematic: codeword bit i is the coefficient of x^i, parity
/// occupies bits [0, n-k) and the message bits [n-k, n).
class BchCode {
public:
    BchCode(int m, int t);

    int n() const noexcept { return field_.order(); }
    int k() const noexcept { return k_; }
    int t() const noexcept { return t_; }
    const GaloisField& field() const noexcept { return field_; }

    /// Generator coefficients, index = power of x.
    const std::vector<Bit>& generator() const noexcept { return generator_; }
    std::string generator_hex() const;

    BitVector encode(const BitVector& message) const;

    struct Decoded {
        BitVector message;
        int corrected_errors = 0;
    };
    /// nullopt when the word is not within distance t of a codeword.
    std::optional<Decoded> decode(const BitVector& received) const;

    BitVector message_of(const BitVector& codeword) const;

private:
    GaloisField field_;
    int t_;
    int k_;
    std::vector<Bit> generator_;
};

/// BCH(127, 64, t=10).
BchCode default_bch_code();

} // namespace papuf
