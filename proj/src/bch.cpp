#include "papuf/bch.hpp"

#include <set>

#include "papuf/errors.hpp"

namespace papuf {
namespace {

// Primitive polynomials, bit i = coefficient of x^i.
std::uint32_t primitive_polynomial_for(int m) {
    switch (m) {
    case 3: return 0xB;
    case 4: return 0x13;
    case 5: return 0x25;
    case 6: return 0x43;
    case 7: return 0x89;
    case 8: return 0x11D;
    case 9: return 0x211;
    case 10: return 0x409;
    default: throw ParameterError("GF(2^" + std::to_string(m) + ") is not supported (m in 3..10)");
    }
}

// Polynomials with GF(2^m) coefficients, index = power.
using FieldPoly = std::vector<std::uint32_t>;

} // namespace

GaloisField::GaloisField(int m) : m_(m), n_((1 << m) - 1), prim_(primitive_polynomial_for(m)) {
    exp_.resize(static_cast<std::size_t>(2 * n_));
    log_.assign(static_cast<std::size_t>(n_ + 1), -1);
    std::uint32_t x = 1;
    for (int i = 0; i < n_; ++i) {
        exp_[static_cast<std::size_t>(i)] = x;
        log_[x] = i;
        x <<= 1;
        if (x & (1u << m_)) x ^= prim_;
    }
    for (int i = n_; i < 2 * n_; ++i) exp_[static_cast<std::size_t>(i)] = exp_[static_cast<std::size_t>(i - n_)];
}

std::uint32_t GaloisField::alpha_pow(long e) const noexcept {
    long r = e % n_;
    if (r < 0) r += n_;
    return exp_[static_cast<std::size_t>(r)];
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::size_t>(log_[a] + log_[b])];
}

std::uint32_t GaloisField::inv(std::uint32_t a) const noexcept {
    return exp_[static_cast<std::size_t>((n_ - log_[a]) % n_)];
}

BchCode::BchCode(int m, int t) : field_(m), t_(t) {
    const int n = field_.order();
    if (t < 1 || 2 * t >= n) throw ParameterError("BCH error capability t=" + std::to_string(t) + " is out of range");

    // g(x) = lcm of the minimal polynomials of alpha^1..alpha^(2t): the product
    // of (x - alpha^j) over the union of their cyclotomic cosets.
    std::set<int> roots;
    for (int i = 1; i <= 2 * t; ++i) {
        int j = i % n;
        do {
            roots.insert(j);
            j = (2 * j) % n;
        } while (j != i % n);
    }
    FieldPoly g{1};
    for (int r : roots) {
        const std::uint32_t a = field_.alpha_pow(r);
        FieldPoly next(g.size() + 1, 0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            next[i + 1] ^= g[i];
            next[i] ^= field_.mul(g[i], a);
        }
        g = std::move(next);
    }
    generator_.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] > 1) throw ParameterError("generator polynomial is not binary");
        generator_[i] = static_cast<Bit>(g[i]);
    }
    k_ = n - static_cast<int>(roots.size());
    if (k_ < 1) throw ParameterError("BCH code has no message bits for t=" + std::to_string(t));
}

std::string BchCode::generator_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    const std::size_t deg = generator_.size() - 1;
    const std::size_t nibbles = deg / 4 + 1;
    for (std::size_t q = nibbles; q-- > 0;) {
        int v = 0;
        for (int b = 3; b >= 0; --b) {
            const std::size_t idx = q * 4 + static_cast<std::size_t>(b);
            v = (v << 1) | (idx < generator_.size() ? generator_[idx] : 0);
        }
        s.push_back(kDigits[v]);
    }
    return s;
}

BitVector BchCode::encode(const BitVector& message) const {
    if (message.size() != static_cast<std::size_t>(k_)) {
        throw ShapeError("BCH message must have " + std::to_string(k_) + " bits, got " + std::to_string(message.size()));
    }
    const auto n = static_cast<std::size_t>(this->n());
    const std::size_t parity = n - static_cast<std::size_t>(k_);
    // Remainder of m(x) x^(n-k) divided by g(x).
    std::vector<Bit> rem(n, 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(k_); ++i) rem[parity + i] = message[i];
    for (std::size_t i = n; i-- > parity;) {
        if (!rem[i]) continue;
        for (std::size_t j = 0; j < generator_.size(); ++j) rem[i - parity + j] ^= generator_[j];
    }
    BitVector codeword(n);
    for (std::size_t i = 0; i < parity; ++i) codeword[i] = rem[i];
    for (std::size_t i = 0; i < static_cast<std::size_t>(k_); ++i) codeword[parity + i] = message[i];
    return codeword;
}

BitVector BchCode::message_of(const BitVector& codeword) const {
    return codeword.slice(static_cast<std::size_t>(n() - k_), static_cast<std::size_t>(k_));
}

std::optional<BchCode::Decoded> BchCode::decode(const BitVector& received) const {
    const int n = this->n();
    if (received.size() != static_cast<std::size_t>(n)) {
        throw ShapeError("BCH word must have " + std::to_string(n) + " bits, got " + std::to_string(received.size()));
    }
    const auto syndromes = [&](const BitVector& word) {
        FieldPoly s(static_cast<std::size_t>(2 * t_ + 1), 0);
        bool zero = true;
        for (int j = 1; j <= 2 * t_; ++j) {
            std::uint32_t acc = 0;
            for (int i = 0; i < n; ++i) {
                if (word[static_cast<std::size_t>(i)]) acc ^= field_.alpha_pow(static_cast<long>(i) * j);
            }
            s[static_cast<std::size_t>(j)] = acc;
            zero = zero && acc == 0;
        }
        return std::make_pair(s, zero);
    };

    const auto [syn, clean] = syndromes(received);
    if (clean) return Decoded{message_of(received), 0};

    // Berlekamp-Massey: shortest LFSR (error locator) generating S_1..S_2t.
    FieldPoly sigma{1}, prev{1};
    int length = 0;
    int shift = 1;
    std::uint32_t prev_discrepancy = 1;
    for (int r = 1; r <= 2 * t_; ++r) {
        std::uint32_t d = syn[static_cast<std::size_t>(r)];
        for (int i = 1; i <= length && i < static_cast<int>(sigma.size()); ++i) {
            d ^= field_.mul(sigma[static_cast<std::size_t>(i)], syn[static_cast<std::size_t>(r - i)]);
        }
        if (d == 0) {
            ++shift;
            continue;
        }
        const std::uint32_t coef = field_.mul(d, field_.inv(prev_discrepancy));
        FieldPoly updated = sigma;
        if (updated.size() < prev.size() + static_cast<std::size_t>(shift)) {
            updated.resize(prev.size() + static_cast<std::size_t>(shift), 0);
        }
        for (std::size_t i = 0; i < prev.size(); ++i) {
            updated[i + static_cast<std::size_t>(shift)] ^= field_.mul(coef, prev[i]);
        }
        if (2 * length <= r - 1) {
            prev = sigma;
            length = r - length;
            prev_discrepancy = d;
            shift = 1;
        } else {
            ++shift;
        }
        sigma = std::move(updated);
    }
    while (sigma.size() > 1 && sigma.back() == 0) sigma.pop_back();
    const int degree = static_cast<int>(sigma.size()) - 1;
    if (degree != length || degree > t_) return std::nullopt;

    // Chien search: error at position i iff sigma(alpha^-i) = 0.
    BitVector corrected = received;
    int found = 0;
    for (int i = 0; i < n; ++i) {
        std::uint32_t acc = 0;
        for (int j = 0; j <= degree; ++j) {
            acc ^= field_.mul(sigma[static_cast<std::size_t>(j)], field_.alpha_pow(-static_cast<long>(i) * j));
        }
        if (acc == 0) {
            corrected.flip(static_cast<std::size_t>(i));
            ++found;
        }
    }
    if (found != degree) return std::nullopt;
    if (!syndromes(corrected).second) return std::nullopt;
    return Decoded{message_of(corrected), found};
}

BchCode default_bch_code() { return BchCode(7, 10); }

} // namespace papuf
