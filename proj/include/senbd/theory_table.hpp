#pragma once

#include <span>
#include <vector>

#include "senbd/kernel.hpp"

namespace senbd {

/// One cell of a prediction grid.
struct TheoryRow {
    int figure;  ///< 0 for custom grids
    double nu0;
    double omega;
    double n;
    double alpha;
    double exponent;           ///< at the actual n
    double critical_exponent;  ///< kernel moved to n = 1
    double cutoff;             ///< infinite for n >= 1
};

/// Background intensities, mark parameters and branching ratios of the
/// published experiment grids.
inline constexpr double kGridNu0[] = {0.01, 0.2, 1.0};
inline constexpr double kGridOmega[] = {0.01, 1.0, 10.0};
inline constexpr double kGridBranching[] = {0.9, 0.99, 0.999};

/// Kernel family of experiment `figure` at branching ratio n:
///   2: (n, 1)
///   3: (0.5, 1), (n - 0.5, 3)
///   4: (0.3, 1), (0.2, 2), (n - 0.5, 3)
///   5: power law gamma = 11 discretized with K = 100
ExponentialMixture figure_kernel(int figure, double n);

/// nu0 x omega x n grid for one figure (2..5), nu0-major.
std::vector<TheoryRow> figure_table(int figure);

/// nu0 x omega grid for a single kernel.
std::vector<TheoryRow> custom_table(std::span<const double> nu0s, std::span<const double> omegas,
                                    const ExponentialMixture& kernel);

}  // namespace senbd
