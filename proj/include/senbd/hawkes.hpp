#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "senbd/kernel.hpp"
#include "senbd/marks.hpp"
#include "senbd/rng.hpp"

namespace senbd {

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

inline constexpr double kDefaultSolverTolerance = 1e-10;

inline constexpr double kDefaultBurnInFraction = 0.01;
inline constexpr double kDefaultObservationSpacing = 0.1;

struct SimConfig {
    /// Burn-in defaults to 1% of t_max, observation spacing to 0.1.
    SimConfig(double nu0, double omega, ExponentialMixture kernel, double t_max, std::uint64_t seed)
        : nu0(nu0), omega(omega), kernel(std::move(kernel)), t_max(t_max),
          burn_in(kDefaultBurnInFraction * t_max), seed(seed) {}

    double nu0;    ///< background intensity
    double omega;  ///< mark parameter
    ExponentialMixture kernel;
    double t_max;
    double burn_in;  ///< observations start here
    double obs_dt = kDefaultObservationSpacing;
    std::uint64_t seed;
    /// Relative residual accepted by the next-event solver. Only tests and
    /// `validate --solver-tolerance` change this.
    double solver_tolerance = kDefaultSolverTolerance;

    /// Throws ConfigError. With require_stationary, n >= 1 is rejected.
    void validate(bool require_stationary = false) const;
};

struct EventRecord {
    double t;
    std::int64_t m;

    bool operator==(const EventRecord&) const = default;
};

/// Markovian embedding of the process: excess-intensity components z_k
/// (lambda = nu0 + sum z_k), the clock, and the random stream.
struct SimState {
    SimState(std::size_t components, std::uint64_t seed) : z(components, 0.0), rng(seed) {}

    double t = 0.0;
    std::vector<double> z;
    Xoshiro256 rng;
};

double lambda(const SimState& state, double nu0) noexcept;
/// Event intensity ln(omega+1)/omega * lambda.
double event_rate(const SimState& state, double nu0, double omega) noexcept;
/// z_k <- z_k exp(-dt / tau_k); t <- t + dt.
void decay(SimState& state, const ExponentialMixture& kernel, double dt);
/// z_k <- z_k + n_k m / tau_k.
void apply_event(SimState& state, std::int64_t mark, const ExponentialMixture& kernel);

struct SolveResult {
    double dt;
    double residual;  ///< |f(dt)| / (target + nu0)
    int iterations;
};

/// Finds dt > 0 with nu0 dt + sum_k z_k tau_k (1 - exp(-dt/tau_k)) = omega L / ln(omega+1),
/// i.e. the waiting time whose integrated intensity equals the unit-rate gap L.
/// Safeguarded Newton inside a maintained bracket. Throws NumericalError if
/// the iteration cap is hit.
SolveResult solve_next_event(const SimState& state, double nu0, double omega, const ExponentialMixture& kernel,
                             double rescaled_gap, double tolerance = kDefaultSolverTolerance);

/// Reusable solver that keeps the per-component decay factors of its last
/// solution, so the sampler can decay the state without recomputing them.
class NextEventSolver {
public:
    explicit NextEventSolver(const ExponentialMixture& kernel) : kernel_(kernel), factors_(kernel.size()) {}

    SolveResult solve(const SimState& state, double nu0, double omega, double rescaled_gap,
                      double tolerance = kDefaultSolverTolerance);
    /// exp(-dt / tau_k) at the dt returned by the last solve().
    std::span<const double> decay_factors() const noexcept { return factors_; }

private:
    double evaluate(const SimState& state, double nu0, double x, double& slope);

    const ExponentialMixture& kernel_;
    std::vector<double> factors_;
};

/// Integrated event intensity over [state.t, state.t + dt] with no events inside.
double integrated_rate(const SimState& state, double nu0, double omega, const ExponentialMixture& kernel, double dt);

/// Receives simulation output as it is produced.
class SimSink {
public:
    virtual ~SimSink() = default;
    /// rescaled_gap is the Exp(1) draw consumed by the event (NaN for thinning).
    virtual void on_event(const EventRecord& event, double rescaled_gap) = 0;
    virtual void on_observation(double t, double lambda) = 0;
};

/// Keeps everything in memory.
struct SimRecording : SimSink {
    std::vector<EventRecord> events;
    std::vector<double> rescaled_gaps;
    std::vector<std::pair<double, double>> observations;

    void on_event(const EventRecord& event, double rescaled_gap) override {
        events.push_back(event);
        rescaled_gaps.push_back(rescaled_gap);
    }
    void on_observation(double t, double lambda) override { observations.emplace_back(t, lambda); }
};

struct SimSummary {
    std::uint64_t events = 0;
    std::uint64_t observations = 0;
    double lambda_sum = 0.0;  ///< over observations
    double max_residual = 0.0;
    int max_iterations = 0;

    double mean_lambda() const noexcept { return observations ? lambda_sum / static_cast<double>(observations) : 0.0; }
};

/// Time-rescaling sampler: draw L ~ Exp(1), solve for the waiting time,
/// decay, draw the mark, jump; repeat until t > t_max. lambda is observed on
/// the grid burn_in + j obs_dt (j >= 0, <= t_max).
SimSummary simulate(const SimConfig& config, SimSink& sink);
SimRecording simulate(const SimConfig& config);

/// Ogata thinning with the current event rate as the dominating rate (the
/// intensity only decays between events). Same law as simulate().
SimSummary simulate_thinning(const SimConfig& config, SimSink& sink);
SimRecording simulate_thinning(const SimConfig& config);

}  // namespace senbd
