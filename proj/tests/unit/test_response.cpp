#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "papuf/circuit.hpp"
#include "papuf/errors.hpp"
#include "papuf/lfsr.hpp"
#include "papuf/metrics.hpp"
#include "papuf/random.hpp"
#include "papuf/response.hpp"

using namespace papuf;
using papuf::testing::response_of;

namespace {
DeviceInstance quiet_device(std::uint64_t seed) {
    DelayParams p;
    p.sigma_noise = 0.0;
    return synthesize_device(p, Netlist::pa_puf(64), seed);
}
} // namespace

TEST_SUITE("response") {

TEST_CASE("noiseless responses repeat exactly") {
    const auto d = quiet_device(1);
    const auto c = random_challenge(64, 3);
    CHECK(evaluate_response(d, c, 128, 1) == evaluate_response(d, c, 128, 2));
}

TEST_CASE("supported sizes") {
    const auto d = quiet_device(1);
    const auto c = random_challenge(64, 3);
    for (int size : kSupportedResponseSizes) CHECK(evaluate_response(d, c, size, 0).size() == static_cast<std::size_t>(size));
    CHECK_THROWS_AS(evaluate_response(d, c, 12, 0), ParameterError);
    CHECK_THROWS_AS(evaluate_response(d, c, 256, 0), ParameterError);
}

TEST_CASE("bit i answers expanded challenge i") {
    const auto d = synthesize_device(DelayParams{}, Netlist::pa_puf(64), 4);
    const auto c = random_challenge(64, 8);
    const auto r = evaluate_response(d, c, 8, 77);
    const auto expanded = expand_challenge(c, 8);
    std::set<Challenge> distinct(expanded.begin(), expanded.end());
    CHECK(distinct.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(r.bits[i] == propagate(d, expanded[i], derive_seed(77, i)));
    // Deterministic under the evaluation seed.
    CHECK(evaluate_response(d, c, 8, 77) == r);
}

TEST_CASE("calibrated defaults flip about 4.6% of bits against the enrolled reference") {
    const auto d = synthesize_device(DelayParams{}, Netlist::pa_puf(64), 1);
    double flipped = 0.0;
    const int challenges = 200;
    for (int i = 0; i < challenges; ++i) {
        const auto c = random_challenge(64, derive_seed(5, i));
        std::vector<Response> reads;
        for (int r = 0; r < 11; ++r) reads.push_back(evaluate_response(d, c, 128, derive_seed(6, {std::uint64_t(i), std::uint64_t(r)})));
        const auto ref = majority_vote(reads);
        const auto fresh = evaluate_response(d, c, 128, derive_seed(7, i));
        flipped += static_cast<double>(hamming_distance(fresh.bits, ref.bits)) / 128.0;
    }
    CHECK(100.0 * flipped / challenges == doctest::Approx(4.63).epsilon(0.15));
}

TEST_CASE("random challenges are nonzero and seeded") {
    for (std::uint64_t s = 0; s < 200; ++s) CHECK_FALSE(random_challenge(8, s).bits.is_zero());
    CHECK(random_challenge(64, 9) == random_challenge(64, 9));
    CHECK(random_challenge(64, 9) != random_challenge(64, 10));
}

TEST_CASE("collection cardinality and ordering") {
    const auto pop = synthesize_population(DelayParams{}, Netlist::pa_puf(64), 3, 1);
    CollectOptions o;
    o.num_challenges = 100;
    o.repetitions = 11;
    o.response_size = 8;
    o.master_eval_seed = 3;
    const auto crps = collect_crps(pop, o);
    CHECK(crps.size() == 3300);
    CHECK(crps.device_ids().size() == 3);
    CHECK(crps.repetitions() == 11);
    for (std::size_t i = 1; i < crps.size(); ++i) {
        const auto& a = crps.records()[i - 1];
        const auto& b = crps.records()[i];
        CHECK(std::tie(a.device_id, a.challenge_index, a.repetition) <
              std::tie(b.device_id, b.challenge_index, b.repetition));
    }
    // Every device answers the same challenges.
    const auto cells = crps.cells();
    for (int c = 0; c < 100; ++c) {
        CHECK(cells.at("dev-0000")[static_cast<std::size_t>(c)][0]->challenge ==
              cells.at("dev-0002")[static_cast<std::size_t>(c)][0]->challenge);
    }
    CHECK(collect_crps(pop, o).records().back().response == crps.records().back().response);
}

TEST_CASE("collection edge cases") {
    std::vector<DeviceInstance> none;
    CHECK_THROWS_AS(collect_crps(none, CollectOptions{}), ParameterError);

    const std::vector<DeviceInstance> one{quiet_device(2)};
    CollectOptions o;
    o.repetitions = 5;
    const auto crps = collect_crps(one, o);
    REQUIRE(crps.size() == 5);
    for (const auto& r : crps.records()) CHECK(r.response == crps.records()[0].response);

    o.num_challenges = 0;
    CHECK_THROWS_AS(collect_crps(one, o), ParameterError);
    o.num_challenges = 1;
    o.challenge_mode = "spiral";
    CHECK_THROWS_AS(collect_crps(one, o), ParameterError);
}

TEST_CASE("chain mode walks single-bit neighbors") {
    const std::vector<DeviceInstance> one{quiet_device(2)};
    CollectOptions o;
    o.num_challenges = 50;
    o.challenge_mode = "chain";
    o.response_size = 8;
    const auto crps = collect_crps(one, o);
    std::set<Challenge> seen;
    for (std::size_t i = 0; i < crps.size(); ++i) {
        seen.insert(crps.records()[i].challenge);
        if (i > 0) CHECK(hamming_distance(crps.records()[i].challenge.bits, crps.records()[i - 1].challenge.bits) == 1);
    }
    CHECK(seen.size() == 50);
}

TEST_CASE("crp set validation") {
    CrpRecord a{"d", 0, random_challenge(8, 1), 0, response_of("0101")};
    CrpRecord dup = a;
    CHECK_THROWS_AS(CrpSet({}, {a, dup}), FormatError);
    CrpRecord longer{"d", 1, random_challenge(8, 2), 0, response_of("01010")};
    CHECK_THROWS_AS(CrpSet({}, {a, longer}), ShapeError);
}

TEST_CASE("majority vote") {
    const std::vector<Response> one{response_of("1011")};
    CHECK(majority_vote(one) == one[0]);
    const std::vector<Response> three{response_of("1100"), response_of("1010"), response_of("1001")};
    CHECK(majority_vote(three) == response_of("1000"));
    const std::vector<Response> two{response_of("1100"), response_of("1010")};
    CHECK_THROWS_AS(majority_vote(two), ParameterError);
    CHECK_THROWS_AS(majority_vote(std::vector<Response>{}), ParameterError);
}

TEST_CASE("eleven votes beat a single read when flips are rarer than one half") {
    std::mt19937_64 rng(12);
    for (double p : {0.05, 0.2, 0.4}) {
        std::bernoulli_distribution flip(p);
        long single = 0, voted = 0;
        const int trials = 2000;
        for (int t = 0; t < trials; ++t) {
            std::vector<Response> reads;
            for (int r = 0; r < 11; ++r) {
                Response x{BitVector(64)};
                for (std::size_t i = 0; i < 64; ++i) x.bits[i] = flip(rng);
                reads.push_back(x);
            }
            single += static_cast<long>(reads[0].bits.popcount());
            voted += static_cast<long>(majority_vote(reads).bits.popcount());
        }
        // Binomial tail: P(at least 6 of 11 flips) < p for p < 1/2.
        double tail = 0.0;
        for (int k = 6; k <= 11; ++k) tail += std::tgamma(12) / (std::tgamma(k + 1) * std::tgamma(12 - k)) * std::pow(p, k) * std::pow(1 - p, 11 - k);
        CHECK(tail < p);
        CHECK(voted < single);
        const double rate = static_cast<double>(voted) / (trials * 64.0);
        CHECK(rate <= 1.25 * tail + 1e-4);
        CHECK(rate >= 0.75 * tail - 1e-4);
    }
}

} // TEST_SUITE
