#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "senbd/hawkes.hpp"
#include "senbd/histogram.hpp"
#include "senbd/kernel.hpp"
#include "senbd/marks.hpp"

namespace senbd {

// ---------------------------------------------------------------------------
// Closed-form predictions for the steady-state intensity PDF
//   P(lambda) ~ lambda^-(1 - 2 nu0 alpha / (omega + 1)) exp(-lambda / cutoff)
// ---------------------------------------------------------------------------

/// 1 - 2 nu0 alpha / (omega + 1), with alpha = sum n_k tau_k.
double theoretical_exponent(double nu0, double omega, double alpha) noexcept;
double theoretical_exponent(double nu0, double omega, const ExponentialMixture& kernel) noexcept;

/// Power-law kernel limit: alpha = 1 / (gamma - 1). Rejects gamma <= 1.
double theoretical_exponent_powerlaw(double nu0, double omega, double gamma);

/// (omega + 1) / (2 tau epsilon); throws std::domain_error for epsilon <= 0.
double cutoff_scale(double tau, double epsilon, double omega);

/// Cutoff of a mixture using its mean memory length alpha / n as tau.
/// Infinite at or above criticality.
double kernel_cutoff_scale(const ExponentialMixture& kernel, double omega) noexcept;

/// 1 - a with a = 2 tau nu0 E[m] / E[m^2] (general-marks form).
double exponent_from_mark_moments(double nu0, double tau, const MarkDistribution& marks) noexcept;

struct TheoryPrediction {
    double exponent;           ///< at the kernel's actual branching ratio
    double critical_exponent;  ///< with the kernel moved to n = 1 (see critical_alpha)
    double cutoff;             ///< infinity when n >= 1
};

TheoryPrediction predict(double nu0, double omega, const ExponentialMixture& kernel) noexcept;

// ---------------------------------------------------------------------------
// Fitting
// ---------------------------------------------------------------------------

struct FitResult {
    double slope;
    double std_error;
    double intercept;
    std::size_t bins;
};

/// Ordinary least squares of y on x; needs at least three points.
FitResult least_squares(std::span<const double> x, std::span<const double> y);

/// Log-log slope of the density over non-empty bins whose center lies in
/// [lambda_lo, lambda_hi]. Needs at least five such bins.
FitResult fit_power_exponent(const LogHistogram& hist, double lambda_lo, double lambda_hi);

/// Semilog slope of density * lambda^power_exponent over [lambda_lo, lambda_hi]:
/// the rate of the exponential factor once the power-law prefactor
/// lambda^-power_exponent is divided out.
FitResult fit_exponential_tail(const LogHistogram& hist, double lambda_lo, double lambda_hi,
                               double power_exponent);

inline constexpr double kWindowLowFactor = 10.0;    // x nu0
inline constexpr double kWindowHighFactor = 0.3;    // x cutoff
inline constexpr double kWindowHighQuantile = 0.999;

/// [10 nu0, 0.3 cutoff] below criticality, [10 nu0, q99.9] at or above it.
std::pair<double, double> default_fit_window(const LogHistogram& hist, double nu0, double omega,
                                             const ExponentialMixture& kernel);

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov checks
// ---------------------------------------------------------------------------

struct KsResult {
    double statistic;
    double p_value;
    double effective_n;
};

/// Asymptotic Kolmogorov survival function Q_KS(x) = 2 sum (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_survival(double x) noexcept;

/// One-sample test of `samples` against Exp(1).
KsResult ks_test_exponential(std::vector<double> samples);

/// Two-sample test.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

/// Integrated event intensity between consecutive events (from t = 0),
/// recomputed in closed form from the event list. Under the model these are
/// i.i.d. Exp(1).
std::vector<double> rescaled_intervals(std::span<const EventRecord> events, double nu0, double omega,
                                       const ExponentialMixture& kernel);

/// KS statistic of rescaled_intervals() against Exp(1); needs >= 100 events.
KsResult rescaled_intervals_ks(std::span<const EventRecord> events, double nu0, double omega,
                               const ExponentialMixture& kernel);

}  // namespace senbd
