#include "senbd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace senbd {

double theoretical_exponent(double nu0, double omega, double alpha) noexcept {
    return 1.0 - 2.0 * nu0 * alpha / (omega + 1.0);
}

double theoretical_exponent(double nu0, double omega, const ExponentialMixture& kernel) noexcept {
    return theoretical_exponent(nu0, omega, kernel.alpha());
}

double theoretical_exponent_powerlaw(double nu0, double omega, double gamma) {
    if (!(gamma > 1.0)) throw std::invalid_argument("power-law exponent requires gamma > 1");
    return 1.0 - 2.0 * nu0 / ((omega + 1.0) * (gamma - 1.0));
}

double cutoff_scale(double tau, double epsilon, double omega) {
    if (!(epsilon > 0.0)) throw std::domain_error("cutoff_scale: no finite cutoff at or above criticality");
    return (omega + 1.0) / (2.0 * tau * epsilon);
}

double kernel_cutoff_scale(const ExponentialMixture& kernel, double omega) noexcept {
    const double n = kernel.branching_ratio();
    if (n >= 1.0) return std::numeric_limits<double>::infinity();
    return (omega + 1.0) / (2.0 * (kernel.alpha() / n) * (1.0 - n));
}

double exponent_from_mark_moments(double nu0, double tau, const MarkDistribution& marks) noexcept {
    const double a = 2.0 * tau * nu0 / (marks.second_moment() / marks.mean());
    return 1.0 - a;
}

TheoryPrediction predict(double nu0, double omega, const ExponentialMixture& kernel) noexcept {
    return {theoretical_exponent(nu0, omega, kernel), theoretical_exponent(nu0, omega, critical_alpha(kernel)),
            kernel_cutoff_scale(kernel, omega)};
}

FitResult least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("least_squares: size mismatch");
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("least_squares: need at least three points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("least_squares: x values are all equal");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - intercept - slope * x[i];
        ssr += r * r;
    }
    const double se = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    return {slope, se, intercept, n};
}

namespace {

template <typename Transform>
FitResult fit_window(const LogHistogram& hist, double lo, double hi, Transform&& transform) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("fit: window must satisfy 0 < lo < hi");
    std::vector<double> xs, ys;
    for (const auto& p : hist.density()) {
        if (p.center < lo || p.center > hi || !(p.count > 0.0)) continue;
        const auto [x, y] = transform(p);
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 5)
        throw std::invalid_argument("fit: only " + std::to_string(xs.size()) + " non-empty bins in window, need 5");
    return least_squares(xs, ys);
}

}  // namespace

FitResult fit_power_exponent(const LogHistogram& hist, double lambda_lo, double lambda_hi) {
    return fit_window(hist, lambda_lo, lambda_hi, [](const LogHistogram::Point& p) {
        return std::pair{std::log(p.center), std::log(p.density)};
    });
}

FitResult fit_exponential_tail(const LogHistogram& hist, double lambda_lo, double lambda_hi,
                               double power_exponent) {
    return fit_window(hist, lambda_lo, lambda_hi, [power_exponent](const LogHistogram::Point& p) {
        return std::pair{p.center, std::log(p.density) + power_exponent * std::log(p.center)};
    });
}

std::pair<double, double> default_fit_window(const LogHistogram& hist, double nu0, double omega,
                                             const ExponentialMixture& kernel) {
    const double lo = kWindowLowFactor * nu0;
    const double cutoff = kernel_cutoff_scale(kernel, omega);
    const double hi = std::isfinite(cutoff) ? kWindowHighFactor * cutoff : hist.quantile(kWindowHighQuantile);
    return {lo, hi};
}

double kolmogorov_survival(double x) noexcept {
    if (x <= 0.0) return 1.0;
    if (x < 1.18) {
        // Jacobi-transformed series converges fast for small x.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        double cdf = 0.0;
        for (int j = 1; j <= 20; ++j) {
            const double k = 2.0 * j - 1.0;
            cdf += std::exp(-k * k * pi2 / (8.0 * x * x));
        }
        return 1.0 - std::sqrt(2.0 * std::numbers::pi) / x * cdf;
    }
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * x * x);
        sum += (j % 2 ? term : -term);
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_p_value(double d, double n_eff) {
    const double root = std::sqrt(n_eff);
    return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

KsResult ks_test_exponential(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("ks: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = samples[i] > 0.0 ? -std::expm1(-samples[i]) : 0.0;
        d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
    }
    return {d, ks_p_value(d, n), n};
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double n_eff = na * nb / (na + nb);
    return {d, ks_p_value(d, n_eff), n_eff};
}

std::vector<double> rescaled_intervals(std::span<const EventRecord> events, double nu0, double omega,
                                       const ExponentialMixture& kernel) {
    SimState state(kernel.size(), 0);
    std::vector<double> out;
    out.reserve(events.size());
    for (const auto& e : events) {
        const double dt = e.t - state.t;
        if (!(dt >= 0.0)) throw std::invalid_argument("rescaled_intervals: event times must be non-decreasing");
        out.push_back(integrated_rate(state, nu0, omega, kernel, dt));
        decay(state, kernel, dt);
        state.t = e.t;
        apply_event(state, e.m, kernel);
    }
    return out;
}

KsResult rescaled_intervals_ks(std::span<const EventRecord> events, double nu0, double omega,
                               const ExponentialMixture& kernel) {
    if (events.size() < 100) throw std::invalid_argument("rescaled_intervals_ks: need at least 100 events");
    return ks_test_exponential(rescaled_intervals(events, nu0, omega, kernel));
}

}  // namespace senbd
