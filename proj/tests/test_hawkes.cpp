#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "senbd/analysis.hpp"
#include "senbd/hawkes.hpp"
#include "senbd/marks.hpp"
#include "senbd/special_functions.hpp"

using namespace senbd;

namespace {

// f(dt) = nu0 dt + sum z_k tau_k (1 - exp(-dt/tau_k)) - target, solved by plain bisection.
double bisection_oracle(const std::vector<double>& z, const std::vector<double>& tau, double nu0, double target) {
    const auto f = [&](double dt) {
        double v = nu0 * dt - target;
        for (std::size_t k = 0; k < z.size(); ++k) v += z[k] * tau[k] * (1.0 - std::exp(-dt / tau[k]));
        return v;
    };
    double lo = 0.0, hi = target / nu0;
    for (int i = 0; i < 300 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SimConfig base_config(double t_max = 1e4, std::uint64_t seed = 1) {
    return SimConfig(0.2, 1.0, ExponentialMixture({{0.9, 1.0}}), t_max, seed);
}

}  // namespace

TEST_SUITE("hawkes") {

TEST_CASE("config validation names the field") {
    const auto field_of = [](const SimConfig& c, bool stationary = false) -> std::string {
        try {
            c.validate(stationary);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return "";
    };
    auto c = base_config();
    CHECK(field_of(c).empty());
    CHECK(c.burn_in == doctest::Approx(100.0));
    c.nu0 = 0.0;
    CHECK(field_of(c) == "nu0");
    c = base_config();
    c.omega = -1.0;
    CHECK(field_of(c) == "omega");
    c = base_config();
    c.burn_in = c.t_max;
    CHECK(field_of(c) == "burn_in");
    c = base_config();
    c.obs_dt = 0.0;
    CHECK(field_of(c) == "obs_dt");
    c = base_config();
    c.t_max = -5.0;
    CHECK(field_of(c) == "t_max");
    SimConfig critical(0.2, 1.0, ExponentialMixture({{1.0, 1.0}}), 100.0, 1);
    CHECK(field_of(critical).empty());
    CHECK(field_of(critical, true) == "kernel");
}

TEST_CASE("lambda and event rate") {
    SimState s(2, 0);
    CHECK(lambda(s, 0.01) == 0.01);
    s.z = {1.0, 2.0};
    CHECK(lambda(s, 0.2) == doctest::Approx(3.2));

    SimState empty(2, 0);
    apply_event(empty, 1, ExponentialMixture({{0.5, 1.0}, {0.5, 2.0}}));
    CHECK(lambda(empty, 0.2) == doctest::Approx(0.2 + 0.5 + 0.25));

    SimState one(1, 0);
    one.z = {5.0 - 0.5};
    CHECK(event_rate(one, 0.5, 0.0) == doctest::Approx(5.0));
    one.z = {1.5};
    CHECK(event_rate(one, 0.5, 1.0) == doctest::Approx(2.0 * std::log(2.0)));
    one.z = {0.5};
    CHECK(event_rate(one, 0.5, 10.0) == doctest::Approx(0.239790).epsilon(1e-5));
}

TEST_CASE("decay") {
    const ExponentialMixture k1({{1.0, 1.0}});
    SimState s(1, 0);
    s.z = {1.0};
    decay(s, k1, 0.0);
    CHECK(s.z[0] == 1.0);
    CHECK(s.t == 0.0);
    decay(s, k1, 1.0);
    CHECK(s.z[0] == doctest::Approx(std::exp(-1.0)));
    CHECK(s.t == 1.0);

    const ExponentialMixture k2({{0.5, 1.0}, {0.5, 2.0}});
    SimState s2(2, 0);
    s2.z = {2.0, 4.0};
    decay(s2, k2, 2.0);
    CHECK(s2.z[0] == doctest::Approx(2.0 * std::exp(-2.0)));
    CHECK(s2.z[1] == doctest::Approx(4.0 * std::exp(-1.0)));
    CHECK_THROWS_AS(decay(s2, k2, -1.0), std::invalid_argument);
}

TEST_CASE("apply_event") {
    SimState s(1, 0);
    apply_event(s, 1, ExponentialMixture({{0.9, 1.0}}));
    CHECK(s.z[0] == doctest::Approx(0.9));

    const ExponentialMixture k({{0.5, 1.0}, {0.4, 2.0}});
    SimState s2(2, 0);
    apply_event(s2, 3, k);
    CHECK(s2.z[0] == doctest::Approx(1.5));
    CHECK(s2.z[1] == doctest::Approx(0.6));

    SimState a(2, 0), b(2, 0);
    apply_event(a, 1, k);
    apply_event(a, 1, k);
    apply_event(b, 2, k);
    CHECK(a.z[0] == doctest::Approx(b.z[0]));
    CHECK(a.z[1] == doctest::Approx(b.z[1]));
    CHECK_THROWS_AS(apply_event(a, 0, k), std::invalid_argument);
}

TEST_CASE("solve_next_event closed forms") {
    const ExponentialMixture k({{0.9, 1.0}});
    SimState s(1, 0);
    CHECK(solve_next_event(s, 1.0, 0.0, k, 2.0).dt == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(solve_next_event(s, 0.5, 1.0, k, 1.0).dt == doctest::Approx(1.0 / std::log(2.0) / 0.5).epsilon(1e-10));
    CHECK(solve_next_event(s, 0.5, 1.0, k, 1.0).dt == doctest::Approx(2.885390).epsilon(1e-6));
    CHECK_THROWS_AS(solve_next_event(s, 0.5, 1.0, k, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_next_event(s, 0.0, 1.0, k, 1.0), std::invalid_argument);
}

TEST_CASE("solve_next_event agrees with a bisection oracle") {
    {
        const ExponentialMixture k({{1.0, 1.0}});
        SimState s(1, 0);
        s.z = {1.0};
        const auto r = solve_next_event(s, 0.1, 0.0, k, 0.5);
        CHECK(r.dt == doctest::Approx(bisection_oracle({1.0}, {1.0}, 0.1, 0.5)).epsilon(1e-9));
        CHECK(r.residual <= 1e-10);
    }
    Xoshiro256 rng(77);
    const ExponentialMixture k3({{0.3, 0.5}, {0.2, 2.0}, {0.45, 30.0}});
    for (int i = 0; i < 500; ++i) {
        SimState s(3, 0);
        for (auto& z : s.z) z = std::exp(8.0 * rng.uniform() - 4.0);
        const double nu0 = std::exp(6.0 * rng.uniform() - 5.0);
        const double omega = rng.uniform() < 0.2 ? 0.0 : std::exp(4.0 * rng.uniform() - 2.0);
        const double gap = exponential(rng);
        const auto r = solve_next_event(s, nu0, omega, k3, gap);
        const double target = omega > 0.0 ? omega * gap / std::log1p(omega) : gap;
        CAPTURE(i);
        REQUIRE(r.residual <= 1e-10);
        CHECK(r.dt == doctest::Approx(bisection_oracle(s.z, {0.5, 2.0, 30.0}, nu0, target)).epsilon(1e-8));
        CHECK(integrated_rate(s, nu0, omega, k3, r.dt) == doctest::Approx(gap).epsilon(1e-9));
    }
}

TEST_CASE("corrupted tolerance is honoured") {
    const ExponentialMixture k({{0.9, 1.0}});
    SimState s(1, 0);
    s.z = {5.0};
    const auto loose = solve_next_event(s, 0.2, 1.0, k, 1.0, 0.5);
    const auto tight = solve_next_event(s, 0.2, 1.0, k, 1.0);
    CHECK(loose.iterations <= tight.iterations);
    CHECK(loose.residual <= 0.5);
}

TEST_CASE("first waiting time follows the rescaling equation") {
    // From an empty state the first event satisfies nu0 t1 = omega L / ln(omega + 1).
    auto c = base_config(100.0, 9);
    const auto rec = simulate(c);
    REQUIRE(!rec.events.empty());
    Xoshiro256 rng(9);
    const double gap = exponential(rng);
    CHECK(rec.rescaled_gaps[0] == gap);
    CHECK(rec.events[0].t == doctest::Approx(gap / std::log(2.0) / 0.2).epsilon(1e-10));
}

TEST_CASE("simulation is deterministic under a fixed seed") {
    const auto c = base_config(2000.0, 42);
    const auto a = simulate(c);
    const auto b = simulate(c);
    CHECK(a.events == b.events);
    CHECK(a.observations == b.observations);
    auto other = c;
    other.seed = 43;
    CHECK_FALSE(simulate(other).events == a.events);
    CHECK(simulate_thinning(c).events == simulate_thinning(c).events);
}

TEST_CASE("path invariants") {
    auto c = SimConfig(0.2, 10.0, ExponentialMixture({{0.5, 1.0}, {0.45, 5.0}}), 5000.0, 5);
    SimRecording rec;
    const auto summary = simulate(c, rec);
    REQUIRE(rec.events.size() > 1000);
    CHECK(summary.events == rec.events.size());
    CHECK(summary.max_residual <= 1e-10);
    for (std::size_t i = 1; i < rec.events.size(); ++i) REQUIRE(rec.events[i].t > rec.events[i - 1].t);
    for (const auto& e : rec.events) REQUIRE(e.m >= 1);
    CHECK(rec.events.back().t <= c.t_max);
    for (const auto& [t, lam] : rec.observations) REQUIRE(lam >= c.nu0);
    REQUIRE(!rec.observations.empty());
    CHECK(rec.observations.front().first == doctest::Approx(c.burn_in));
    CHECK(rec.observations.back().first <= c.t_max);
    for (std::size_t j = 0; j < rec.observations.size(); ++j)
        REQUIRE(rec.observations[j].first == doctest::Approx(c.burn_in + j * c.obs_dt));
}

TEST_CASE("rescaled intervals round-trip the consumed exponential draws") {
    for (double omega : {0.0, 1.0, 10.0}) {
        auto c = SimConfig(0.5, omega, ExponentialMixture({{0.3, 0.5}, {0.6, 4.0}}), 3000.0, 17);
        const auto rec = simulate(c);
        const auto gaps = rescaled_intervals(rec.events, c.nu0, c.omega, c.kernel);
        REQUIRE(gaps.size() == rec.events.size());
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            CAPTURE(i);
            REQUIRE(std::fabs(gaps[i] - rec.rescaled_gaps[i]) <= 1e-8 * std::max(1.0, rec.rescaled_gaps[i]));
        }
    }
}

TEST_CASE("background-only process is Poisson at the event rate") {
    for (double omega : {0.0, 1.0, 10.0}) {
        auto c = SimConfig(1.0, omega, ExponentialMixture({{1e-12, 1.0}}), 1e5, 23);
        const auto rec = simulate(c);
        const double rate = event_rate_factor(omega) * c.nu0;
        const double expected = rate * c.t_max;
        CAPTURE(omega);
        CHECK(std::fabs(static_cast<double>(rec.events.size()) - expected) <= 4.0 * std::sqrt(expected));
        std::vector<double> scaled;
        for (std::size_t i = 0; i < rec.events.size(); ++i)
            scaled.push_back(rate * (rec.events[i].t - (i ? rec.events[i - 1].t : 0.0)));
        CHECK(ks_test_exponential(scaled).p_value > 0.01);

        const auto thin = simulate_thinning(c);
        CHECK(std::fabs(static_cast<double>(thin.events.size()) - expected) <= 4.0 * std::sqrt(expected));
    }
}

TEST_CASE("event rate converges to the stationary value") {
    // (ln(omega+1)/omega) nu0 / (1 - n), pooled over a few seeds at T = 1e5.
    const double expected = std::log(2.0) * 0.2 / 0.1;
    double count = 0.0;
    const int seeds = 4;
    for (int s = 0; s < seeds; ++s) count += static_cast<double>(simulate(base_config(1e5, 100 + s)).events.size());
    CHECK(count / (seeds * 1e5) == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("thinning and time rescaling agree on mean event counts") {
    const auto kernel = ExponentialMixture({{0.5, 1.0}});
    std::vector<double> a, b;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const SimConfig ca(1.0, 0.0, kernel, 1e4, derive_seed(5, 0, s));
        const SimConfig cb(1.0, 0.0, kernel, 1e4, derive_seed(5, 1, s));
        a.push_back(static_cast<double>(simulate(ca).events.size()));
        b.push_back(static_cast<double>(simulate_thinning(cb).events.size()));
    }
    const auto stats = [](const std::vector<double>& v) {
        double m = 0.0, s2 = 0.0;
        for (double x : v) m += x;
        m /= v.size();
        for (double x : v) s2 += (x - m) * (x - m);
        return std::pair{m, s2 / (v.size() - 1)};
    };
    const auto [ma, va] = stats(a);
    const auto [mb, vb] = stats(b);
    CHECK(std::fabs(ma - mb) <= 3.0 * std::sqrt(va / a.size() + vb / b.size()));
    CHECK(ma == doctest::Approx(2e4).epsilon(0.02));
}

TEST_CASE("thinning output passes the rescaled-interval test") {
    const auto c = base_config(2e4, 31);
    const auto rec = simulate_thinning(c);
    CHECK(rescaled_intervals_ks(rec.events, c.nu0, c.omega, c.kernel).p_value > 0.01);
    const auto tr = simulate(c);
    CHECK(rescaled_intervals_ks(tr.events, c.nu0, c.omega, c.kernel).p_value > 0.01);
}

}
