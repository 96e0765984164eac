#include "senbd/theory_table.hpp"

#include <stdexcept>
#include <string>

#include "senbd/analysis.hpp"

namespace senbd {

ExponentialMixture figure_kernel(int figure, double n) {
    switch (figure) {
        case 2: return ExponentialMixture({{n, 1.0}});
        case 3: return ExponentialMixture({{0.5, 1.0}, {n - 0.5, 3.0}});
        case 4: return ExponentialMixture({{0.3, 1.0}, {0.2, 2.0}, {n - 0.5, 3.0}});
        case 5: return powerlaw_mixture(11.0, n, 100);
        default: throw std::invalid_argument("unknown figure " + std::to_string(figure) + " (expected 2..5)");
    }
}

namespace {

TheoryRow make_row(int figure, double nu0, double omega, const ExponentialMixture& kernel) {
    const TheoryPrediction p = predict(nu0, omega, kernel);
    return {figure, nu0, omega, kernel.branching_ratio(), kernel.alpha(), p.exponent, p.critical_exponent, p.cutoff};
}

}  // namespace

std::vector<TheoryRow> figure_table(int figure) {
    std::vector<ExponentialMixture> kernels;
    for (double n : kGridBranching) kernels.push_back(figure_kernel(figure, n));
    std::vector<TheoryRow> rows;
    for (double nu0 : kGridNu0)
        for (double omega : kGridOmega)
            for (const auto& kernel : kernels) rows.push_back(make_row(figure, nu0, omega, kernel));
    return rows;
}

std::vector<TheoryRow> custom_table(std::span<const double> nu0s, std::span<const double> omegas,
                                    const ExponentialMixture& kernel) {
    std::vector<TheoryRow> rows;
    for (double nu0 : nu0s)
        for (double omega : omegas) rows.push_back(make_row(0, nu0, omega, kernel));
    return rows;
}

}  // namespace senbd
