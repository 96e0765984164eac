#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "printed_value.hpp"
#include "senbd/theory_table.hpp"

using namespace senbd;

TEST_SUITE("theory_table") {

TEST_CASE("figure kernels") {
    CHECK(figure_kernel(2, 0.99) == ExponentialMixture({{0.99, 1.0}}));
    CHECK(figure_kernel(3, 0.99) == ExponentialMixture({{0.5, 1.0}, {0.49, 3.0}}));
    CHECK(figure_kernel(4, 0.999).branching_ratio() == doctest::Approx(0.999));
    CHECK(figure_kernel(4, 0.999).size() == 3);
    CHECK(figure_kernel(5, 0.9) == powerlaw_mixture(11.0, 0.9, 100));
    CHECK_THROWS_AS(figure_kernel(6, 0.9), std::invalid_argument);
}

TEST_CASE("tables cover the grid") {
    for (int figure = 2; figure <= 5; ++figure) {
        const auto rows = figure_table(figure);
        REQUIRE(rows.size() == 27);
        for (const auto& r : rows) {
            CHECK(r.figure == figure);
            CHECK(r.exponent >= r.critical_exponent - 1e-12);
            CHECK(std::isfinite(r.cutoff));
        }
    }
}

TEST_CASE("power-law figure uses the continuous alpha at criticality") {
    const std::string expected[3][3] = {{"0.99802", "0.999", "0.99982"}, {"0.9604", "0.98", "0.9964"}, {"0.802", "0.9", "0.982"}};
    const auto rows = figure_table(5);
    for (const auto& r : rows) {
        const int i = r.nu0 == 0.01 ? 0 : r.nu0 == 0.2 ? 1 : 2;
        const int j = r.omega == 0.01 ? 0 : r.omega == 1.0 ? 1 : 2;
        CAPTURE(expected[i][j]);
        CHECK(matches_printed(r.critical_exponent, expected[i][j]));
    }
}

TEST_CASE("printed-value tolerance follows the digits shown") {
    CHECK(printed_tolerance("0.9802") == doctest::Approx(1e-4));
    CHECK(printed_tolerance("0.99802") == doctest::Approx(1e-4));
    CHECK(printed_tolerance("0.982") == doctest::Approx(5e-4));
    CHECK(printed_tolerance("-2.96") == doctest::Approx(5e-3));
    CHECK(printed_tolerance("0.0") == doctest::Approx(0.05));
    CHECK(matches_printed(0.981818, "0.982"));
    CHECK_FALSE(matches_printed(0.9812, "0.982"));
}

TEST_CASE("custom tables") {
    const double nu0s[] = {0.0};
    const double omegas[] = {0.01, 1.0, 10.0};
    for (const auto& r : custom_table(nu0s, omegas, ExponentialMixture({{0.9, 1.0}, {0.05, 7.0}}))) {
        CHECK(r.exponent == 1.0);
        CHECK(r.critical_exponent == 1.0);
        CHECK(r.figure == 0);
    }
    const double one[] = {0.2};
    const double w[] = {1.0};
    const auto rows = custom_table(one, w, ExponentialMixture({{0.999, 1.0}}));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].critical_exponent == doctest::Approx(0.8));
}

}
