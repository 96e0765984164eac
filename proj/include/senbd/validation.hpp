#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "senbd/hawkes.hpp"

namespace senbd {

/// Paired time-rescaling / thinning runs plus the statistical self-checks
/// built on them.
struct ValidationConfig {
    SimConfig base;  ///< base.seed is the campaign base seed
    std::size_t pairs = 10;
    int threads = 0;
};

inline constexpr double kObservationKsAlpha = 0.001;
inline constexpr double kRescaledKsAlpha = 0.01;

struct CheckResult {
    std::string name;
    bool passed;
    double value;      ///< statistic or p-value being judged
    double threshold;  ///< pass boundary for `value`
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::uint64_t time_rescaling_events = 0;
    std::uint64_t thinning_events = 0;

    bool passed() const noexcept;
    const CheckResult& check(const std::string& name) const;
};

/// Desk-scale default: nu0 = 0.2, omega = 1, single kernel n = 0.9, tau = 1,
/// T = 1e4, observations every 50 time units (well beyond the correlation
/// time tau / (1 - n)) so they are close to independent.
ValidationConfig default_validation_config(std::uint64_t seed = 20240601);

ValidationReport run_validation(const ValidationConfig& config);

}  // namespace senbd
