#include "senbd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "senbd/special_functions.hpp"

namespace senbd {

ExponentialMixture::ExponentialMixture(std::vector<KernelTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("kernel: at least one term is required");
    n_.reserve(terms_.size());
    tau_.reserve(terms_.size());
    inv_tau_.reserve(terms_.size());
    jump_.reserve(terms_.size());
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto [n, tau] = terms_[k];
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::invalid_argument("kernel: term " + std::to_string(k) + " has n <= 0 or non-finite n");
        if (!(tau > 0.0) || !std::isfinite(tau))
            throw std::invalid_argument("kernel: term " + std::to_string(k) + " has tau <= 0 or non-finite tau");
        n_.push_back(n);
        tau_.push_back(tau);
        inv_tau_.push_back(1.0 / tau);
        jump_.push_back(n / tau);
        branching_ratio_ += n;
        alpha_ += n * tau;
    }
}

double ExponentialMixture::max_tau() const noexcept { return *std::max_element(tau_.begin(), tau_.end()); }

double ExponentialMixture::evaluate(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("kernel: evaluate requires t >= 0");
    double sum = 0.0;
    for (std::size_t k = 0; k < terms_.size(); ++k) sum += jump_[k] * std::exp(-t * inv_tau_[k]);
    return sum;
}

ExponentialMixture powerlaw_mixture(double gamma, double n_total, std::size_t count) {
    if (!(gamma > 1.0)) throw std::invalid_argument("powerlaw kernel: gamma must be > 1 (finite mean memory)");
    if (count == 0) throw std::invalid_argument("powerlaw kernel: K must be >= 1");
    if (!(n_total > 0.0)) throw std::invalid_argument("powerlaw kernel: n must be > 0");
    std::vector<KernelTerm> terms;
    terms.reserve(count);
    const double share = n_total / static_cast<double>(count);
    for (std::size_t i = 1; i <= count; ++i) {
        const double p = (static_cast<double>(i) - 0.5) / static_cast<double>(count);
        terms.push_back({share, inv_gamma_quantile(gamma, p)});
    }
    ExponentialMixture mixture(std::move(terms));
    mixture.set_powerlaw_origin({gamma, n_total, count});
    return mixture;
}

double critical_alpha(const ExponentialMixture& kernel) noexcept {
    if (const auto& origin = kernel.powerlaw_origin()) return 1.0 / (origin->gamma - 1.0);
    return kernel.alpha() + (1.0 - kernel.branching_ratio()) * kernel.taus().back();
}

}  // namespace senbd
