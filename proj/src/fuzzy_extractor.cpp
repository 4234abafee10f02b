#include "papuf/fuzzy_extractor.hpp"

#include "papuf/errors.hpp"
#include "papuf/random.hpp"

namespace papuf {

Enrollment enroll(const Response& response, const BchCode& code, std::uint64_t key_seed) {
    const auto n = static_cast<std::size_t>(code.n());
    if (response.size() < n) {
        throw ParameterError("response of " + std::to_string(response.size()) + " bits is shorter than the code length " +
                             std::to_string(n));
    }
    SplitMix64 engine(derive_seed(key_seed, 0x6b6579));
    BitVector message(static_cast<std::size_t>(code.k()));
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < message.size(); ++i) {
        if (i % 64 == 0) word = engine();
        message[i] = static_cast<Bit>((word >> (i % 64)) & 1);
    }
    Enrollment e;
    e.helper.m = code.field().m();
    e.helper.t = code.t();
    e.helper.offset = code.encode(message) ^ response.bits.slice(0, n);
    e.key.bits = std::move(message);
    return e;
}

std::optional<Reproduction> reproduce(const Response& noisy, const HelperData& helper, const BchCode& code) {
    const auto n = static_cast<std::size_t>(code.n());
    if (helper.offset.size() != n) throw ShapeError("helper offset length does not match the code length");
    if (noisy.size() < n) throw ParameterError("response is shorter than the code length");
    const auto decoded = code.decode(helper.offset ^ noisy.bits.slice(0, n));
    if (!decoded) return std::nullopt;
    return Reproduction{SecretKey{decoded->message}, decoded->corrected_errors};
}

std::optional<Reproduction> reproduce(const Response& noisy, const HelperData& helper) {
    return reproduce(noisy, helper, helper.code());
}

} // namespace papuf
