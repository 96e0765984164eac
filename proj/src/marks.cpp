#include "senbd/marks.hpp"

#include <cmath>
#include <stdexcept>

namespace senbd {

MarkDistribution::MarkDistribution(double omega) : omega_(omega) {
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw std::invalid_argument("marks: omega must be finite and >= 0");
    if (omega > 0.0) {
        q_ = omega / (omega + 1.0);
        log1p_omega_ = std::log1p(omega);
    }
}

double MarkDistribution::pmf(std::int64_t m) const {
    if (m <= 0) throw std::invalid_argument("marks: pmf requires m >= 1");
    if (degenerate()) return m == 1 ? 1.0 : 0.0;
    const double md = static_cast<double>(m);
    return std::exp(md * std::log(q_)) / (md * log1p_omega_);
}

double MarkDistribution::mean() const noexcept { return degenerate() ? 1.0 : omega_ / log1p_omega_; }

double MarkDistribution::second_moment() const noexcept {
    return degenerate() ? 1.0 : omega_ * (omega_ + 1.0) / log1p_omega_;
}

std::int64_t MarkDistribution::sample(Xoshiro256& rng) const noexcept {
    if (degenerate()) return 1;
    double u = rng.uniform();
    std::int64_t m = 1;
    double p = q_ / log1p_omega_;
    // pmf(m+1) = pmf(m) * q * m / (m+1); stop once p underflows.
    while (u > p && p > 0.0) {
        u -= p;
        ++m;
        p *= q_ * static_cast<double>(m - 1) / static_cast<double>(m);
    }
    return m;
}

double event_rate_factor(double omega) noexcept { return omega > 0.0 ? std::log1p(omega) / omega : 1.0; }

}  // namespace senbd
