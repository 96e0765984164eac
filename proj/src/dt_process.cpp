#include "senbd/dt_process.hpp"

#include <cmath>
#include <random>

#include "senbd/hawkes.hpp"

namespace senbd {

void DtConfig::validate(bool require_stationary) const {
    if (!(nu0 > 0.0) || !std::isfinite(nu0)) throw ConfigError("nu0", "background intensity must be finite and > 0");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("omega", "must be finite and > 0 in discrete time");
    if (steps == 0) throw ConfigError("steps", "must be >= 1");
    if (require_stationary && !kernel.is_stationary())
        throw ConfigError("kernel", "branching ratio " + std::to_string(kernel.branching_ratio()) +
                                        " >= 1 is not stationary (pass --allow-critical to run it anyway)");
}

double DtState::lambda_hat(double nu0) const noexcept {
    double sum = nu0;
    for (double z : zhat) sum += z;
    return sum;
}

double discrete_kernel_jump(double n_k, double tau_k) {
    if (!(tau_k > 0.0)) throw std::invalid_argument("discrete_kernel_jump: tau must be > 0");
    return -n_k * std::expm1(-1.0 / tau_k);
}

std::uint64_t sample_nbd(double alpha, double p, Xoshiro256& rng) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("sample_nbd: alpha must be > 0");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("sample_nbd: p must lie in (0, 1]");
    if (p == 1.0) return 0;
    std::gamma_distribution<double> gamma(alpha, (1.0 - p) / p);
    const double mean = gamma(rng);
    if (mean <= 0.0) return 0;
    std::poisson_distribution<std::uint64_t> poisson(mean);
    return poisson(rng);
}

DtStepper::DtStepper(const DtConfig& config) : nu0_(config.nu0), omega_(config.omega) {
    for (const auto& term : config.kernel.terms()) {
        decay_.push_back(std::exp(-1.0 / term.tau));
        jump_.push_back(discrete_kernel_jump(term.n, term.tau));
    }
}

std::uint64_t DtStepper::step(DtState& state, Xoshiro256& rng) const {
    const double lam = state.lambda_hat(nu0_);
    const std::uint64_t count = sample_nbd(lam / omega_, 1.0 / (omega_ + 1.0), rng);
    step_with_count(state, count);
    return count;
}

void DtStepper::step_with_count(DtState& state, std::uint64_t count) const {
    const double x = static_cast<double>(count);
    for (std::size_t k = 0; k < state.zhat.size(); ++k) state.zhat[k] = decay_[k] * state.zhat[k] + jump_[k] * x;
    ++state.t;
}

}  // namespace senbd
