#include <doctest.h>

#include <random>
#include <vector>

#include "esos/isotonic.hpp"
#include "fixtures.hpp"

using namespace esos;

TEST_CASE("pooling of a single violation") {
    WeightedSeries s{{0.5, 0.25}, {1.0, 1.0}};
    const auto fit = isotonic_nondecreasing(s);
    CHECK(fit[0] == doctest::Approx(0.375));
    CHECK(fit[1] == doctest::Approx(0.375));
}

TEST_CASE("weighted pooling uses the weighted mean") {
    WeightedSeries s{{0.5, 0.25}, {1.0, 3.0}};
    const auto fit = isotonic_nondecreasing(s);
    CHECK(fit[0] == doctest::Approx(0.3125));
    CHECK(fit[1] == doctest::Approx(0.3125));
}

TEST_CASE("already monotone input is untouched") {
    WeightedSeries s{{0.1, 0.4, 0.4, 1.2}, {2.0, 1.0, 5.0, 0.5}};
    const auto fit = isotonic_nondecreasing(s);
    for (std::size_t i = 0; i < s.values.size(); ++i)
        CHECK(fit[i] == doctest::Approx(s.values[i]));
}

TEST_CASE("cascading pools") {
    WeightedSeries s{{3.0, 2.0, 1.0}, {1.0, 1.0, 1.0}};
    const auto fit = isotonic_nondecreasing(s);
    CHECK(fit[0] == doctest::Approx(2.0));
    CHECK(fit[1] == doctest::Approx(2.0));
    CHECK(fit[2] == doctest::Approx(2.0));
}

TEST_CASE("fit preserves the weighted mean and is non-decreasing") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::uniform_real_distribution<double> wt(0.1, 5.0);
    std::uniform_int_distribution<int> len(1, 20);
    for (int it = 0; it < 500; ++it) {
        WeightedSeries s;
        const int k = len(rng);
        for (int i = 0; i < k; ++i) {
            s.values.push_back(val(rng));
            s.weights.push_back(wt(rng));
        }
        const auto fit = isotonic_nondecreasing(s);
        REQUIRE(static_cast<int>(fit.size()) == k);
        double in_mean = 0.0, out_mean = 0.0, wsum = 0.0;
        for (int i = 0; i < k; ++i) {
            if (i > 0) CHECK(fit[i] >= fit[i - 1]);
            in_mean += s.values[i] * s.weights[i];
            out_mean += fit[i] * s.weights[i];
            wsum += s.weights[i];
        }
        CHECK(out_mean / wsum == doctest::Approx(in_mean / wsum).epsilon(1e-12));
    }
}

TEST_CASE("agrees with the direct max-min solution on random inputs") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> val(-1.0, 3.0);
    std::uniform_real_distribution<double> wt(0.2, 4.0);
    std::uniform_int_distribution<int> len(1, 12);
    for (int it = 0; it < 400; ++it) {
        WeightedSeries s;
        const int k = len(rng);
        for (int i = 0; i < k; ++i) {
            s.values.push_back(val(rng));
            s.weights.push_back(wt(rng));
        }
        const auto fit = isotonic_nondecreasing(s);
        const auto oracle = testing::isotonic_maxmin(s);
        for (int i = 0; i < k; ++i)
            CHECK(fit[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
    }
}

TEST_CASE("idempotent: projecting a fit returns the fit") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        WeightedSeries s;
        for (int i = 0; i < 8; ++i) {
            s.values.push_back(val(rng));
            s.weights.push_back(1.0 + i % 3);
        }
        WeightedSeries fitted{isotonic_nondecreasing(s), s.weights};
        const auto again = isotonic_nondecreasing(fitted);
        for (int i = 0; i < 8; ++i)
            CHECK(again[i] == doctest::Approx(fitted.values[i]).epsilon(1e-13));
    }
}
