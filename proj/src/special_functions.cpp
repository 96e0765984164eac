#include "senbd/special_functions.hpp"

#include <cmath>
#include <limits>

namespace senbd {

namespace {

constexpr int kMaxIterations = 1000;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

void check_args(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("incomplete gamma: shape must be > 0");
    if (!(x >= 0.0)) throw std::invalid_argument("incomplete gamma: x must be >= 0");
}

// log of x^a e^{-x} / Gamma(a)
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// P(a, x) by its power series; converges quickly for x < a + 1.
double p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) return sum * std::exp(log_prefactor(a, x));
    }
    throw NumericalError("incomplete gamma series did not converge");
}

// Q(a, x) by modified Lentz continued fraction; used for x >= a + 1.
double q_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return std::exp(log_prefactor(a, x)) * h;
    }
    throw NumericalError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double gamma_p(double a, double x) {
    check_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? p_series(a, x) : 1.0 - q_continued_fraction(a, x);
}

double gamma_q(double a, double x) {
    check_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - p_series(a, x) : q_continued_fraction(a, x);
}

double inv_gamma_cdf(double shape, double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("inv_gamma_cdf: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    return gamma_q(shape, 1.0 / tau);
}

double inv_gamma_quantile(double shape, double p) {
    if (!(shape > 0.0) || !std::isfinite(shape)) throw std::invalid_argument("inv_gamma_quantile: shape must be > 0");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inv_gamma_quantile: p must lie in (0, 1)");

    // Solve for x = 1/tau. Q(shape, x) decreases in x; work with whichever tail
    // keeps the target away from 1 so relative accuracy is preserved.
    const bool use_upper = p <= 0.5;
    const double target = use_upper ? p : 1.0 - p;
    // g(x) = tail(x) - target, where tail is Q (decreasing) or P (increasing).
    auto g = [&](double x) { return use_upper ? gamma_q(shape, x) - target : gamma_p(shape, x) - target; };
    const double sign = use_upper ? -1.0 : 1.0;  // sign of g'(x)

    // Bracket [lo, hi] with g(lo) and g(hi) of opposite sign.
    double lo = 0.0;
    double hi = std::max(1.0, shape);
    for (int i = 0; sign * g(hi) < 0.0; ++i) {
        lo = hi;
        hi *= 2.0;
        if (i > 2000) throw NumericalError("inv_gamma_quantile: failed to bracket");
    }

    double x = 0.5 * (lo + hi);
    for (int i = 0; i < kMaxIterations; ++i) {
        const double gx = g(x);
        if (std::fabs(gx) <= 1e-12 * target) return 1.0 / x;
        if (sign * gx < 0.0) lo = x; else hi = x;

        const double density = std::exp(log_prefactor(shape, x) - std::log(x));
        double next = density > 0.0 ? x - gx / (sign * density) : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 4.0 * kEps * x) return 1.0 / next;
        x = next;
    }
    throw NumericalError("inv_gamma_quantile did not converge");
}

}  // namespace senbd
