#pragma once

#include <stdexcept>

namespace senbd {

/// Raised when an iterative special-function or root-finding routine fails to converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// CDF of InvGamma(shape, scale = 1) at tau: Q(shape, 1 / tau).
double inv_gamma_cdf(double shape, double tau);

/// Inverse of inv_gamma_cdf in tau. Bracketed bisection refined by Newton
/// steps; the CDF at the result matches p to relative 1e-10.
double inv_gamma_quantile(double shape, double p);

}  // namespace senbd
