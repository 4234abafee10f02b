#include "doctest.h"

#include <random>
#include <set>

#include "papuf/bits.hpp"
#include "papuf/errors.hpp"
#include "papuf/random.hpp"

using namespace papuf;

TEST_SUITE("bits") {

TEST_CASE("hex encoding puts bit 0 in the top of the first nibble") {
    const auto v = BitVector::from_string("100000011");
    CHECK(v.to_hex() == "818");
    CHECK(BitVector::from_hex("818", 9) == v);
    CHECK(BitVector::from_hex("8", 4).to_string() == "1000");
}

TEST_CASE("hex parsing rejects bad input") {
    CHECK_THROWS_AS(BitVector::from_hex("81c", 9), FormatError); // nonzero padding
    CHECK_THROWS_AS(BitVector::from_hex("8", 8), FormatError);   // too short
    CHECK_THROWS_AS(BitVector::from_hex("zz", 8), FormatError);
    CHECK_THROWS_AS(BitVector::from_string("012"), FormatError);
}

TEST_CASE("hex round trip on random vectors") {
    std::mt19937_64 rng(5);
    for (int size = 1; size <= 130; ++size) {
        BitVector v(static_cast<std::size_t>(size));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<Bit>(rng() & 1);
        CHECK(BitVector::from_hex(v.to_hex(), v.size()) == v);
    }
}

TEST_CASE("hamming distance and xor") {
    const auto a = BitVector::from_string("1100");
    const auto b = BitVector::from_string("1010");
    CHECK(hamming_distance(a, b) == 2);
    CHECK((a ^ b).to_string() == "0110");
    CHECK(a.complement().to_string() == "0011");
    CHECK(a.slice(1, 2).to_string() == "10");
    CHECK_THROWS_AS(hamming_distance(a, BitVector(3)), ShapeError);
}

} // TEST_SUITE

TEST_SUITE("random") {

TEST_CASE("mix64 is the SplitMix64 finalizer") {
    // First output of the reference SplitMix64 generator seeded with 0.
    CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
    SplitMix64 g(0);
    CHECK(g() == 0xe220a8397b1dcdafULL);
}

TEST_CASE("derived seeds are distinct and order sensitive") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2}) == derive_seed(1, 2));
}

} // TEST_SUITE
