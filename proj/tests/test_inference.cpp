#include <doctest.h>

#include <cmath>

#include "esos/inference.hpp"
#include "esos/model.hpp"
#include "fixtures.hpp"

using namespace esos;

TEST_CASE("a single component always yields a zero statistic") {
    ScenarioSpec spec;
    spec.n = 1;
    spec.s = 1;
    spec.baseline = BaselineSpec::exponential(1, 1.0);
    spec.alpha = ParamTable::constant(1, 1, 1.0);
    const Dataset d = sample_dataset(spec, 25, 5);
    CHECK(lrt_statistic(d, spec.baseline) == doctest::Approx(0.0));
}

TEST_CASE("statistic is nonnegative on simulated data") {
    ScenarioSpec spec;
    spec.n = 3;
    spec.s = 2;
    spec.baseline = BaselineSpec::exponential(3, 1.0);
    spec.alpha = alpha_within_factor(3, 2, 1.3, 1.0);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Dataset d = sample_dataset(spec, 30, seed);
        try {
            CHECK(lrt_statistic(d, spec.baseline) >= 0.0);
        } catch (const std::runtime_error&) {
            // estimates did not exist for this draw; acceptable
        }
    }
}

TEST_CASE("worked-example statistic matches a direct likelihood evaluation") {
    const Dataset d = testing::example_2of3();
    const auto b = BaselineSpec::exponential(3, 1.0);
    const auto restricted = mle_order_restricted(d, b);
    const auto pooled = mle_pooled_sos(d, b);
    const double expected =
        -2.0 * (log_likelihood(d, ParamTable::by_level(3, pooled.restricted), b) -
                log_likelihood(d, restricted.params, b));
    CHECK(lrt_statistic(d, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected > 0.0);
}

TEST_CASE("statistic throws when component-wise estimates are missing") {
    Dataset d;
    d.n = 3;
    d.observations.push_back({{0.3, 0.8}, {1, 2}});
    d.observations.push_back({{0.1, 0.5}, {2, 1}});
    CHECK_THROWS_AS(lrt_statistic(d, BaselineSpec::exponential(3, 1.0)), std::runtime_error);
}

TEST_CASE("simulated null quantiles are ordered, deterministic and reliable") {
    ScenarioSpec h0;
    h0.n = 3;
    h0.s = 2;
    h0.baseline = BaselineSpec::exponential(3, 1.0);
    h0.alpha = ParamTable::by_level(3, {1.0, 1.5});
    h0.seed = 42;
    const std::vector<double> probs{0.5, 0.9, 0.95, 0.99};
    const auto q1 = simulate_null_quantiles(h0, 30, 400, probs, 42);
    const auto q2 = simulate_null_quantiles(h0, 30, 400, probs, 42);
    CHECK(q1.values == q2.values);
    REQUIRE(q1.probs.size() == 4);
    for (std::size_t i = 1; i < q1.values.size(); ++i) CHECK(q1.values[i] >= q1.values[i - 1]);
    CHECK(q1.simulations + q1.dropped == 400);
    CHECK(q1.reliable);
    CHECK(q1.value_at(0.95) == q1.values[2]);
    CHECK_THROWS_AS(q1.value_at(0.8), std::invalid_argument);
}

TEST_CASE("null quantiles require a level-identified scenario") {
    ScenarioSpec h1;
    h1.n = 2;
    h1.s = 2;
    h1.baseline = BaselineSpec::exponential(2, 1.0);
    h1.alpha = ParamTable(2, 2);
    h1.alpha.set(1, 1, 1.0);
    h1.alpha.set(1, 2, 1.0);
    h1.alpha.set(2, 1, 3.0);  // differs across components
    h1.alpha.set(2, 2, 3.0);
    CHECK_THROWS_AS(simulate_null_quantiles(h1, 20, 50, {0.95}, 1), std::invalid_argument);
}

TEST_CASE("test decision matches the tabulated critical value") {
    ScenarioSpec h0;
    h0.n = 3;
    h0.s = 2;
    h0.baseline = BaselineSpec::exponential(3, 1.0);
    h0.alpha = ParamTable::by_level(3, {1.8, 1.8});
    const auto q = simulate_null_quantiles(h0, 10, 600, {0.9, 0.95}, 2024);

    const Dataset d = testing::example_2of3();
    const auto res = lrt_test(d, h0.baseline, 0.05, q);
    CHECK(res.level == 0.05);
    CHECK(res.critical_value == q.value_at(0.95));
    CHECK(res.statistic == doctest::Approx(lrt_statistic(d, h0.baseline)));
    CHECK(res.reject == (res.statistic > res.critical_value));
}

TEST_CASE("strong heterogeneity is eventually rejected") {
    ScenarioSpec h1;
    h1.n = 3;
    h1.s = 2;
    h1.baseline = BaselineSpec::exponential(3, 1.0);
    h1.alpha = alpha_between_factor(3, 2, 1.0, 3.0);  // strongly unequal components
    const Dataset d = sample_dataset(h1, 200, 9);

    ScenarioSpec h0 = h1;
    h0.alpha = ParamTable::by_level(3, {1.0, 1.0});
    const auto q = simulate_null_quantiles(h0, 200, 400, {0.95}, 77);
    const auto res = lrt_test(d, h1.baseline, 0.05, q);
    CHECK(res.reject);
}

TEST_CASE("bootstrap test runs end to end on the worked example") {
    const Dataset d = testing::example_2of3();
    const auto b = BaselineSpec::exponential(3, 1.0);
    const auto res = lrt_bootstrap(d, b, 0.05, 300, {0.9}, 314);
    CHECK(res.statistic == doctest::Approx(lrt_statistic(d, b)));
    CHECK_NOTHROW(res.quantiles.value_at(0.95));  // 1 - level added automatically
    CHECK(res.reject == (res.statistic > res.critical_value));
}
