#include "doctest.h"

#include <stdexcept>
#include <string>

#include "senbd/validation.hpp"

using namespace senbd;

TEST_SUITE("validation") {

TEST_CASE("default configuration passes every check") {
    auto config = default_validation_config();
    const auto report = run_validation(config);
    for (const auto& c : report.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.passed);
    }
    CHECK(report.passed());
    CHECK(report.checks.size() == 7);
    CHECK(report.time_rescaling_events > 100000);
}

TEST_CASE("a corrupted solver tolerance is caught") {
    auto config = default_validation_config();
    config.base.solver_tolerance = 0.5;
    const auto report = run_validation(config);
    CHECK_FALSE(report.passed());
    CHECK_FALSE(report.check("rescaled_ks_time_rescaling").passed);
    CHECK(report.check("rescaled_ks_thinning").passed);
}

TEST_CASE("pure Hawkes marks are all one") {
    auto config = default_validation_config(12);
    config.base.omega = 0.0;
    const auto report = run_validation(config);
    CHECK(report.check("mark_mean").passed);
    CHECK(report.check("mark_mean").detail.find("equal 1") != std::string::npos);
    CHECK(report.passed());
}

TEST_CASE("too few pairs is rejected") {
    auto config = default_validation_config(1);
    config.pairs = 1;
    CHECK_THROWS_AS(run_validation(config), std::invalid_argument);
}

}
