#pragma once

#include <cstdint>
#include <vector>

#include "senbd/kernel.hpp"
#include "senbd/rng.hpp"

namespace senbd {

/// Discrete-time self-exciting NBD process:
///   X_{t+1} ~ NBD(lambda_t / omega, 1 / (omega + 1)),
///   z^k_{t+1} = e^{-1/tau_k} z^k_t + n_k (1 - e^{-1/tau_k}) X_{t+1},
///   lambda_t = nu0 + sum_k z^k_t.
struct DtConfig {
    double nu0;
    double omega;
    ExponentialMixture kernel;
    std::uint64_t steps;
    std::uint64_t seed;

    void validate(bool require_stationary = false) const;
};

struct DtState {
    explicit DtState(std::size_t components) : zhat(components, 0.0) {}

    std::vector<double> zhat;
    std::uint64_t t = 0;

    double lambda_hat(double nu0) const noexcept;
};

/// n_k (1 - e^{-1/tau_k}): jump coefficient of component k per unit count.
double discrete_kernel_jump(double n_k, double tau_k);

/// NBD(alpha, p) via gamma-Poisson mixture: G ~ Gamma(alpha, (1-p)/p), X ~ Poisson(G).
std::uint64_t sample_nbd(double alpha, double p, Xoshiro256& rng);

/// Precomputed per-component factors for stepping.
class DtStepper {
public:
    explicit DtStepper(const DtConfig& config);

    /// Advances one period; returns the event count X drawn for it.
    std::uint64_t step(DtState& state, Xoshiro256& rng) const;
    /// Advances one period with a given count (no randomness).
    void step_with_count(DtState& state, std::uint64_t count) const;

private:
    double nu0_;
    double omega_;
    std::vector<double> decay_;
    std::vector<double> jump_;
};

struct DtSummary {
    std::uint64_t steps = 0;
    double lambda_sum = 0.0;  ///< sum of lambda_hat after each step
    std::uint64_t count_sum = 0;

    double mean_lambda() const noexcept { return steps ? lambda_sum / static_cast<double>(steps) : 0.0; }
};

/// Runs config.steps periods from zhat = 0; `row(t, X, lambda_hat)` is called after each step.
template <typename RowFn>
DtSummary run_dt_process(const DtConfig& config, RowFn&& row) {
    config.validate();
    const DtStepper stepper(config);
    DtState state(config.kernel.size());
    Xoshiro256 rng(config.seed);
    DtSummary summary;
    for (std::uint64_t i = 0; i < config.steps; ++i) {
        const std::uint64_t x = stepper.step(state, rng);
        const double lam = state.lambda_hat(config.nu0);
        row(state.t, x, lam);
        summary.lambda_sum += lam;
        summary.count_sum += x;
        ++summary.steps;
    }
    return summary;
}

inline DtSummary run_dt_process(const DtConfig& config) {
    return run_dt_process(config, [](std::uint64_t, std::uint64_t, double) {});
}

}  // namespace senbd
