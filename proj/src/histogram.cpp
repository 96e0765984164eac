#include "senbd/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace senbd {

LogHistogram::LogHistogram(double lambda_min, double lambda_max, int bins_per_decade)
    : bins_per_decade_(bins_per_decade) {
    if (!(lambda_min > 0.0) || !std::isfinite(lambda_min)) throw std::invalid_argument("histogram: lambda_min must be > 0");
    if (!(lambda_max > lambda_min) || !std::isfinite(lambda_max))
        throw std::invalid_argument("histogram: lambda_max must exceed lambda_min");
    if (bins_per_decade <= 0) throw std::invalid_argument("histogram: bins_per_decade must be > 0");

    const double exact = std::log10(lambda_max / lambda_min) * bins_per_decade;
    const auto bins = static_cast<std::size_t>(std::max(1.0, std::ceil(exact - 1e-9)));
    edges_.reserve(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        edges_.push_back(lambda_min * std::pow(10.0, static_cast<double>(i) / bins_per_decade));
    counts_.assign(bins, 0.0);
}

LogHistogram LogHistogram::for_background(double nu0, int bins_per_decade) {
    return LogHistogram(nu0 / 10.0, nu0 * 1e6, bins_per_decade);
}

void LogHistogram::record(double lambda, double weight) {
    if (!(lambda > 0.0)) throw std::invalid_argument("histogram: lambda must be > 0");
    if (!(weight >= 0.0)) throw std::invalid_argument("histogram: weight must be >= 0");
    if (lambda < edges_.front()) {
        below_ += weight;
        return;
    }
    if (lambda >= edges_.back()) {
        above_ += weight;
        return;
    }
    auto i = static_cast<std::ptrdiff_t>(std::floor(std::log10(lambda / edges_.front()) * bins_per_decade_));
    const auto last = static_cast<std::ptrdiff_t>(counts_.size()) - 1;
    i = std::clamp<std::ptrdiff_t>(i, 0, last);
    // log10 rounding can land one bin off at an edge.
    while (i > 0 && lambda < edges_[i]) --i;
    while (i < last && lambda >= edges_[i + 1]) ++i;
    counts_[i] += weight;
}

void LogHistogram::merge(const LogHistogram& other) {
    if (other.edges_ != edges_ || other.bins_per_decade_ != bins_per_decade_)
        throw std::invalid_argument("histogram: cannot merge histograms with different binning");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    below_ += other.below_;
    above_ += other.above_;
}

double LogHistogram::center(std::size_t i) const { return std::sqrt(edges_.at(i) * edges_.at(i + 1)); }

double LogHistogram::total_weight() const noexcept {
    double sum = below_ + above_;
    for (double c : counts_) sum += c;
    return sum;
}

std::vector<LogHistogram::Point> LogHistogram::density() const {
    const double total = total_weight();
    if (!(total > 0.0)) throw std::invalid_argument("histogram: density of an empty histogram");
    std::vector<Point> out;
    out.reserve(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        const double width = edges_[i + 1] - edges_[i];
        out.push_back({center(i), counts_[i] / (total * width), counts_[i]});
    }
    return out;
}

double LogHistogram::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("histogram: quantile p must lie in [0, 1]");
    const double total = total_weight();
    if (!(total > 0.0)) throw std::invalid_argument("histogram: quantile of an empty histogram");
    const double target = p * total;
    double cumulative = below_;
    if (target <= cumulative) return edges_.front();
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] > 0.0 && cumulative + counts_[i] >= target) {
            const double frac = (target - cumulative) / counts_[i];
            return edges_[i] * std::pow(edges_[i + 1] / edges_[i], frac);
        }
        cumulative += counts_[i];
    }
    return edges_.back();
}

}  // namespace senbd
