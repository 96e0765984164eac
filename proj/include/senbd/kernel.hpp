#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace senbd {

/// One exponential component n * (1/tau) * exp(-t/tau) of a memory kernel.
struct KernelTerm {
    double n;    ///< contribution to the branching ratio
    double tau;  ///< memory length

    bool operator==(const KernelTerm&) const = default;
};

/// Parameters of a power-law kernel discretized by powerlaw_mixture().
struct PowerLawParams {
    double gamma;
    double n;
    std::size_t count;

    bool operator==(const PowerLawParams&) const = default;
};

/// Memory kernel as a weighted sum of normalized exponentials,
///   n h(t) = sum_k n_k / tau_k * exp(-t / tau_k).
///
/// Stationarity (branching_ratio() < 1) is not enforced here; near-critical
/// and critical kernels are legitimate inputs. Use is_stationary() where a
/// caller needs to reject them.
class ExponentialMixture {
public:
    explicit ExponentialMixture(std::vector<KernelTerm> terms);

    std::size_t size() const noexcept { return terms_.size(); }
    std::span<const KernelTerm> terms() const noexcept { return terms_; }

    // Structure-of-arrays views used by the sampler's inner loops.
    std::span<const double> weights() const noexcept { return n_; }
    std::span<const double> taus() const noexcept { return tau_; }
    std::span<const double> inverse_taus() const noexcept { return inv_tau_; }
    /// n_k / tau_k: the jump in component k caused by a unit mark.
    std::span<const double> unit_jumps() const noexcept { return jump_; }

    double branching_ratio() const noexcept { return branching_ratio_; }
    /// sum_k n_k tau_k
    double alpha() const noexcept { return alpha_; }
    double max_tau() const noexcept;
    bool is_stationary() const noexcept { return branching_ratio_ < 1.0; }

    /// n h(t) for t >= 0.
    double evaluate(double t) const;

    /// Set when the terms were produced by powerlaw_mixture().
    const std::optional<PowerLawParams>& powerlaw_origin() const noexcept { return origin_; }
    void set_powerlaw_origin(PowerLawParams params) { origin_ = params; }

    bool operator==(const ExponentialMixture& other) const { return terms_ == other.terms_; }

private:
    std::vector<KernelTerm> terms_;
    std::vector<double> n_, tau_, inv_tau_, jump_;
    double branching_ratio_ = 0.0;
    double alpha_ = 0.0;
    std::optional<PowerLawParams> origin_;
};

/// K-term discretization of the power-law kernel gamma (1 + t)^-(gamma + 1):
/// tau_i is the (i - 1/2)/K quantile of InvGamma(gamma, 1), n_i = n_total / K.
ExponentialMixture powerlaw_mixture(double gamma, double n_total, std::size_t count);

/// Alpha of the kernel moved to branching ratio one, the convention behind
/// the critical-point predictions. Explicit kernels raise their last weight,
/// (0.5, 0.499) -> (0.5, 0.5); power-law kernels use the continuous
/// superposition's alpha = 1 / (gamma - 1).
double critical_alpha(const ExponentialMixture& kernel) noexcept;

}  // namespace senbd
