#pragma once

#include <cstdint>

#include "senbd/rng.hpp"

namespace senbd {

/// Event-size distribution rho(m) = (omega/(omega+1))^m / (m ln(omega+1)),
/// m = 1, 2, ..., i.e. the logarithmic-series law with q = omega/(omega+1).
/// omega = 0 is the degenerate pure-Hawkes case with every mark equal to 1.
class MarkDistribution {
public:
    explicit MarkDistribution(double omega);

    double omega() const noexcept { return omega_; }
    double q() const noexcept { return q_; }
    bool degenerate() const noexcept { return omega_ == 0.0; }

    double pmf(std::int64_t m) const;
    double mean() const noexcept;
    double second_moment() const noexcept;

    /// Kemp's sequential inversion; one uniform per draw.
    std::int64_t sample(Xoshiro256& rng) const noexcept;

private:
    double omega_;
    double q_ = 0.0;
    double log1p_omega_ = 0.0;  // ln(omega + 1) = -ln(1 - q)
};

/// ln(omega+1)/omega, the factor turning lambda into the event rate (1 at omega = 0).
double event_rate_factor(double omega) noexcept;

}  // namespace senbd
