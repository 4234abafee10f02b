#include "doctest.h"

#include <cmath>
#include <numeric>

#include "papuf/device_model.hpp"
#include "papuf/errors.hpp"

using namespace papuf;

TEST_SUITE("device_model") {

TEST_CASE("parameter validation") {
    DelayParams p;
    p.mean_delay = 0.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.sigma_noise = -1.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = {};
    p.metastability_window = -0.1;
    CHECK_THROWS_AS(synthesize_device(p, Netlist::pa_puf(4), 1), ParameterError);
}

TEST_CASE("zero process variation gives the mean everywhere") {
    DelayParams p;
    p.sigma_process = 0.0;
    const auto d = synthesize_device(p, Netlist::pa_puf(16), 99);
    for (double x : d.delay_table()) CHECK(x == 100.0);
}

TEST_CASE("table shape, positivity and determinism") {
    const DelayParams p;
    for (const auto& net : {Netlist::apuf(64), Netlist::pa_puf(64)}) {
        const auto a = synthesize_device(p, net, 1);
        const auto b = synthesize_device(p, net, 1);
        CHECK(a.delay_table().size() == static_cast<std::size_t>(64 * 2 * net.lines()));
        CHECK(std::equal(a.delay_table().begin(), a.delay_table().end(), b.delay_table().begin()));
        for (double x : a.delay_table()) CHECK(x > 0.0);
    }
}

TEST_CASE("sample mean of a 64-stage PA-PUF table is within three standard errors") {
    const auto d = synthesize_device(DelayParams{}, Netlist::pa_puf(64), 1);
    const auto t = d.delay_table();
    REQUIRE(t.size() == 384);
    const double mean = std::accumulate(t.begin(), t.end(), 0.0) / 384.0;
    CHECK(std::abs(mean - 100.0) <= 3.0 * 5.0 / std::sqrt(384.0));
}

TEST_CASE("rejection keeps delays positive even with a huge spread") {
    DelayParams p;
    p.mean_delay = 1.0;
    p.sigma_process = 10.0;
    const auto d = synthesize_device(p, Netlist::pa_puf(32), 3);
    for (double x : d.delay_table()) CHECK(x > 0.0);
}

TEST_CASE("populations") {
    const DelayParams p;
    CHECK_THROWS_AS(synthesize_population(p, Netlist::pa_puf(8), 0, 1), ParameterError);
    CHECK(synthesize_population(p, Netlist::pa_puf(8), 3, 1).size() == 3);

    const auto pop = synthesize_population(p, Netlist::pa_puf(8), 50, 7);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        for (std::size_t j = i + 1; j < pop.size(); ++j) {
            CHECK(pop[i].seed() != pop[j].seed());
            CHECK_FALSE(std::equal(pop[i].delay_table().begin(), pop[i].delay_table().end(),
                                   pop[j].delay_table().begin()));
        }
    }
    CHECK(pop[4].id() == "dev-0004");

    // Growing the population leaves earlier devices untouched.
    const auto small = synthesize_population(p, Netlist::pa_puf(8), 5, 7);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(std::equal(small[i].delay_table().begin(), small[i].delay_table().end(),
                         pop[i].delay_table().begin()));
    }
}

TEST_CASE("noise samples") {
    DelayParams p;
    p.sigma_noise = 0.0;
    const auto quiet = synthesize_device(p, Netlist::pa_puf(4), 1);
    for (double j : sample_noise(quiet, 5)) CHECK(j == 0.0);

    const auto d = quiet.with_noise(2.0);
    CHECK(sample_noise(d, 11) == sample_noise(d, 11));

    double sum = 0.0, sq = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = sample_noise(d, static_cast<std::uint64_t>(i))[0];
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(sd - 2.0) <= 0.04);

    // APUF leaves the third slot empty.
    const auto a = synthesize_device(DelayParams{}, Netlist::apuf(4), 1);
    CHECK(sample_noise(a, 3)[2] == 0.0);
}

} // TEST_SUITE
