#include "senbd/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "senbd/special_functions.hpp"

namespace senbd {

void SimConfig::validate(bool require_stationary) const {
    if (!(nu0 > 0.0) || !std::isfinite(nu0)) throw ConfigError("nu0", "background intensity must be finite and > 0");
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw ConfigError("omega", "must be finite and >= 0");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max", "must be finite and > 0");
    if (!(burn_in >= 0.0)) throw ConfigError("burn_in", "must be >= 0");
    if (!(burn_in < t_max)) throw ConfigError("burn_in", "must be smaller than t_max");
    if (!(obs_dt > 0.0) || !std::isfinite(obs_dt)) throw ConfigError("obs_dt", "must be finite and > 0");
    if (!(solver_tolerance > 0.0)) throw ConfigError("solver_tolerance", "must be > 0");
    if (require_stationary && !kernel.is_stationary())
        throw ConfigError("kernel", "branching ratio " + std::to_string(kernel.branching_ratio()) +
                                        " >= 1 is not stationary (pass --allow-critical to run it anyway)");
}

double lambda(const SimState& state, double nu0) noexcept {
    double sum = nu0;
    for (double zk : state.z) sum += zk;
    return sum;
}

double event_rate(const SimState& state, double nu0, double omega) noexcept {
    return event_rate_factor(omega) * lambda(state, nu0);
}

void decay(SimState& state, const ExponentialMixture& kernel, double dt) {
    if (!(dt >= 0.0)) throw std::invalid_argument("decay: dt must be >= 0");
    const auto inv_tau = kernel.inverse_taus();
    for (std::size_t k = 0; k < state.z.size(); ++k) state.z[k] *= std::exp(-dt * inv_tau[k]);
    state.t += dt;
}

void apply_event(SimState& state, std::int64_t mark, const ExponentialMixture& kernel) {
    if (mark < 1) throw std::invalid_argument("apply_event: mark must be >= 1");
    const auto jump = kernel.unit_jumps();
    const double m = static_cast<double>(mark);
    for (std::size_t k = 0; k < state.z.size(); ++k) state.z[k] += jump[k] * m;
}

namespace {

// nu0 x + sum_k z_k tau_k (1 - exp(-x/tau_k)), and its derivative.
struct Compensator {
    double value;
    double slope;
};

Compensator compensator(std::span<const double> z, std::span<const double> tau, std::span<const double> inv_tau,
                        double nu0, double x) noexcept {
    double value = nu0 * x;
    double slope = nu0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double em1 = std::expm1(-x * inv_tau[k]);
        value -= z[k] * tau[k] * em1;
        slope += z[k] * (1.0 + em1);
    }
    return {value, slope};
}

}  // namespace

double integrated_rate(const SimState& state, double nu0, double omega, const ExponentialMixture& kernel, double dt) {
    return event_rate_factor(omega) *
           compensator(state.z, kernel.taus(), kernel.inverse_taus(), nu0, dt).value;
}

double NextEventSolver::evaluate(const SimState& state, double nu0, double x, double& slope) {
    const auto tau = kernel_.taus();
    const auto inv_tau = kernel_.inverse_taus();
    double value = nu0 * x;
    slope = nu0;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        const double em1 = std::expm1(-x * inv_tau[k]);
        factors_[k] = 1.0 + em1;
        value -= state.z[k] * tau[k] * em1;
        slope += state.z[k] * factors_[k];
    }
    return value;
}

SolveResult NextEventSolver::solve(const SimState& state, double nu0, double omega, double rescaled_gap,
                                   double tolerance) {
    if (!(rescaled_gap > 0.0)) throw std::invalid_argument("solve_next_event: rescaled gap must be > 0");
    if (!(nu0 > 0.0)) throw std::invalid_argument("solve_next_event: nu0 must be > 0");

    // f(x) = compensator(x) - target is increasing and concave with f(0) < 0,
    // so Newton from x = 0 climbs monotonically towards the root. target/nu0
    // is an upper bound since every z-term is non-negative; the bracket only
    // matters if rounding pushes an iterate outside it.
    const double target = rescaled_gap / event_rate_factor(omega);
    const double scale = target + nu0;
    double lo = 0.0;
    double hi = target / nu0;
    double value = -target;
    double slope = lambda(state, nu0);
    double x = 0.0;

    constexpr int kMaxIterations = 200;
    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        double next = x - value / slope;
        if (!(next > lo && next <= hi)) next = 0.5 * (lo + hi);
        x = next;
        value = evaluate(state, nu0, x, slope) - target;
        const double residual = std::fabs(value) / scale;
        if (residual <= tolerance) return {x, residual, iter};
        if (value < 0.0) {
            lo = x;
        } else if (x < hi) {
            hi = x;
        } else {
            // f(target/nu0) > 0 analytically; only rounding reaches here.
            hi *= 2.0;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            throw NumericalError("solve_next_event: bracket collapsed before reaching the residual tolerance");
    }
    throw NumericalError("solve_next_event: iteration cap exceeded");
}

SolveResult solve_next_event(const SimState& state, double nu0, double omega, const ExponentialMixture& kernel,
                             double rescaled_gap, double tolerance) {
    NextEventSolver solver(kernel);
    return solver.solve(state, nu0, omega, rescaled_gap, tolerance);
}

namespace {

// Emits lambda on the observation grid for grid times in [state.t, until),
// never past t_max. `next_index` is the first grid index not yet emitted.
void observe_until(const SimConfig& config, const SimState& state, double until, std::uint64_t& next_index,
                   SimSink& sink, SimSummary& summary) {
    const auto inv_tau = config.kernel.inverse_taus();
    for (;;) {
        const double tj = config.burn_in + static_cast<double>(next_index) * config.obs_dt;
        if (tj >= until || tj > config.t_max) return;
        double lam = config.nu0;
        const double elapsed = std::max(0.0, tj - state.t);
        for (std::size_t k = 0; k < state.z.size(); ++k) lam += state.z[k] * std::exp(-elapsed * inv_tau[k]);
        sink.on_observation(tj, lam);
        ++summary.observations;
        summary.lambda_sum += lam;
        ++next_index;
    }
}

double strictly_after(double t, double dt) {
    const double next = t + dt;
    return next > t ? next : std::nextafter(t, std::numeric_limits<double>::infinity());
}

}  // namespace

SimSummary simulate(const SimConfig& config, SimSink& sink) {
    config.validate();
    const MarkDistribution marks(config.omega);
    SimState state(config.kernel.size(), config.seed);
    NextEventSolver solver(config.kernel);
    SimSummary summary;
    std::uint64_t next_obs = 0;

    for (;;) {
        const double gap = exponential(state.rng);
        const SolveResult step = solver.solve(state, config.nu0, config.omega, gap, config.solver_tolerance);
        summary.max_residual = std::max(summary.max_residual, step.residual);
        summary.max_iterations = std::max(summary.max_iterations, step.iterations);

        const double t_next = strictly_after(state.t, step.dt);
        observe_until(config, state, t_next, next_obs, sink, summary);
        if (t_next > config.t_max) break;

        const auto factors = solver.decay_factors();
        for (std::size_t k = 0; k < state.z.size(); ++k) state.z[k] *= factors[k];
        state.t = t_next;
        const std::int64_t m = marks.sample(state.rng);
        apply_event(state, m, config.kernel);
        sink.on_event({t_next, m}, gap);
        ++summary.events;
    }
    return summary;
}

SimRecording simulate(const SimConfig& config) {
    SimRecording recording;
    simulate(config, recording);
    return recording;
}

SimSummary simulate_thinning(const SimConfig& config, SimSink& sink) {
    config.validate();
    const MarkDistribution marks(config.omega);
    SimState state(config.kernel.size(), config.seed);
    SimSummary summary;
    std::uint64_t next_obs = 0;

    for (;;) {
        const double bound = event_rate(state, config.nu0, config.omega);
        const double wait = exponential(state.rng) / bound;
        const double t_next = strictly_after(state.t, wait);
        observe_until(config, state, t_next, next_obs, sink, summary);
        if (t_next > config.t_max) break;

        decay(state, config.kernel, t_next - state.t);
        state.t = t_next;
        const double rate = event_rate(state, config.nu0, config.omega);
        if (state.rng.uniform() * bound >= rate) continue;

        const std::int64_t m = marks.sample(state.rng);
        apply_event(state, m, config.kernel);
        sink.on_event({t_next, m}, std::numeric_limits<double>::quiet_NaN());
        ++summary.events;
    }
    return summary;
}

SimRecording simulate_thinning(const SimConfig& config) {
    SimRecording recording;
    simulate_thinning(config, recording);
    return recording;
}

}  // namespace senbd
