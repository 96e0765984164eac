#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>

#include "senbd/marks.hpp"

using namespace senbd;

namespace {

// Partial sums of m^power * pmf(m) until the terms are negligible.
double series_moment(const MarkDistribution& d, int power) {
    double sum = 0.0;
    for (std::int64_t m = 1; m < 100000; ++m) {
        const double term = std::pow(static_cast<double>(m), power) * d.pmf(m);
        sum += term;
        if (m > 10 && term < 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

TEST_SUITE("marks") {

TEST_CASE("pmf values") {
    CHECK(MarkDistribution(0.0).pmf(1) == 1.0);
    CHECK(MarkDistribution(0.0).pmf(2) == 0.0);
    CHECK(MarkDistribution(1.0).pmf(1) == doctest::Approx(1.0 / (2.0 * std::log(2.0))).epsilon(1e-14));
    CHECK(MarkDistribution(1.0).pmf(1) == doctest::Approx(0.721348).epsilon(1e-6));
    CHECK_THROWS_AS(MarkDistribution(1.0).pmf(0), std::invalid_argument);
    CHECK_THROWS_AS(MarkDistribution(1.0).pmf(-3), std::invalid_argument);
    CHECK_THROWS_AS(MarkDistribution(-0.5), std::invalid_argument);
}

TEST_CASE("pmf sums to one") {
    const MarkDistribution d(1.0);
    double sum = 0.0;
    for (std::int64_t m = 1; m <= 200; ++m) sum += d.pmf(m);
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
}

TEST_CASE("pmf is the logarithmic-series law") {
    for (double omega : {0.01, 1.0, 10.0}) {
        const MarkDistribution d(omega);
        const double q = omega / (omega + 1.0);
        CHECK(d.q() == doctest::Approx(q));
        for (std::int64_t m = 1; m <= 20; ++m) {
            const double log_series = -std::pow(q, static_cast<double>(m)) / (static_cast<double>(m) * std::log(1.0 - q));
            CHECK(std::fabs(d.pmf(m) - log_series) <= 1e-12 * std::max(1.0, log_series));
        }
    }
}

TEST_CASE("moments") {
    CHECK(MarkDistribution(0.0).mean() == 1.0);
    CHECK(MarkDistribution(0.0).second_moment() == 1.0);
    CHECK(MarkDistribution(1.0).mean() == doctest::Approx(1.442695).epsilon(1e-6));
    CHECK(MarkDistribution(10.0).mean() == doctest::Approx(4.170323).epsilon(1e-6));
    CHECK(MarkDistribution(1.0).second_moment() == doctest::Approx(2.885390).epsilon(1e-6));
    CHECK(MarkDistribution(10.0).second_moment() == doctest::Approx(45.873556).epsilon(1e-6));
    for (double omega : {0.01, 1.0, 10.0}) {
        const MarkDistribution d(omega);
        CHECK(d.mean() == doctest::Approx(series_moment(d, 1)).epsilon(1e-11));
        CHECK(d.second_moment() == doctest::Approx(series_moment(d, 2)).epsilon(1e-11));
        CHECK(std::fabs(d.second_moment() / d.mean() - (omega + 1.0)) <= 1e-12 * (omega + 1.0));
    }
}

TEST_CASE("degenerate marks are always one") {
    const MarkDistribution d(0.0);
    Xoshiro256 rng(1);
    for (int i = 0; i < 1000; ++i) REQUIRE(d.sample(rng) == 1);
}

TEST_CASE("sample mean and pmf(1)") {
    Xoshiro256 rng(2024);
    const int n = 1000000;
    {
        const MarkDistribution d(1.0);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += static_cast<double>(d.sample(rng));
        CHECK(std::fabs(sum / n - 1.442695) <= 0.01 * 1.442695);
    }
    {
        const MarkDistribution d(10.0);
        int ones = 0;
        for (int i = 0; i < n; ++i) ones += d.sample(rng) == 1;
        CHECK(std::fabs(static_cast<double>(ones) / n - 0.379119) <= 0.02 * 0.379119);
    }
}

TEST_CASE("sampler chi-square goodness of fit") {
    // Upper 0.001 points for 1..4 degrees of freedom.
    const double critical[] = {10.828, 13.816, 16.266, 18.467};
    for (double omega : {0.01, 1.0, 10.0}) {
        const MarkDistribution d(omega);
        Xoshiro256 rng(static_cast<std::uint64_t>(omega * 1000) + 5);
        const int n = 100000;
        std::array<double, 5> observed{};
        for (int i = 0; i < n; ++i) {
            const auto m = d.sample(rng);
            REQUIRE(m >= 1);
            ++observed[static_cast<std::size_t>(std::min<std::int64_t>(m, 5) - 1)];
        }
        std::array<double, 5> expected{};
        double head = 0.0;
        for (int m = 1; m <= 4; ++m) {
            expected[m - 1] = n * d.pmf(m);
            head += d.pmf(m);
        }
        expected[4] = n * (1.0 - head);
        // Bins {1, 2, 3, 4, >=5}; trailing bins expecting fewer than 5 draws
        // are folded into their predecessor.
        std::size_t bins = 5;
        while (bins > 2 && expected[bins - 1] < 5.0) {
            expected[bins - 2] += expected[bins - 1];
            observed[bins - 2] += observed[bins - 1];
            --bins;
        }
        double chi2 = 0.0;
        for (std::size_t i = 0; i < bins; ++i) chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
        CAPTURE(omega);
        CAPTURE(bins);
        CHECK(chi2 < critical[bins - 2]);
    }
}

TEST_CASE("event rate factor") {
    CHECK(event_rate_factor(0.0) == 1.0);
    CHECK(event_rate_factor(1.0) == doctest::Approx(std::log(2.0)));
    CHECK(event_rate_factor(10.0) == doctest::Approx(0.239790).epsilon(1e-5));
    CHECK(event_rate_factor(1e-12) == doctest::Approx(1.0));
}

}
