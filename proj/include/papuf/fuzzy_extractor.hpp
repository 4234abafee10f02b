#pragma once

#include <cstdint>
#include <optional>

#include "papuf/bch.hpp"
#include "papuf/bits.hpp"

namespace papuf {

/// Public helper data of the code-offset construction. The offset covers
/// response bits [0, n); bits beyond n are discarded.
struct HelperData {
    int m = 0;
    int t = 0;
    BitVector offset;

    BchCode code() const { return BchCode(m, t); }
};

struct SecretKey {
    BitVector bits; // raw k-bit message

    friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct Enrollment {
    HelperData helper;
    SecretKey key;
};

Enrollment enroll(const Response& response, const BchCode& code, std::uint64_t key_seed);

struct Reproduction {
    SecretKey key;
    int corrected_errors = 0;
};

/// nullopt is the failure signal: the noisy slice is farther than t from the
/// enrolled codeword's coset.
std::optional<Reproduction> reproduce(const Response& noisy_response, const HelperData& helper);
std::optional<Reproduction> reproduce(const Response& noisy_response, const HelperData& helper,
                                      const BchCode& code);

} // namespace papuf
