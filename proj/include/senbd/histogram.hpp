#pragma once

#include <cstddef>
#include <vector>

namespace senbd {

/// Weighted histogram with geometric bins on [lambda_min, lambda_max).
/// Weight outside the range is tallied separately and still counts towards
/// the total, so the in-range density integrates to at most one.
class LogHistogram {
public:
    LogHistogram(double lambda_min, double lambda_max, int bins_per_decade);

    /// [nu0 / 10, 1e6 nu0) at 20 bins per decade.
    static LogHistogram for_background(double nu0, int bins_per_decade = 20);

    void record(double lambda, double weight = 1.0);
    /// Adds another histogram's weights; binning must be identical.
    void merge(const LogHistogram& other);

    std::size_t bin_count() const noexcept { return counts_.size(); }
    int bins_per_decade() const noexcept { return bins_per_decade_; }
    double lambda_min() const noexcept { return edges_.front(); }
    double lambda_max() const noexcept { return edges_.back(); }
    double lower_edge(std::size_t i) const { return edges_.at(i); }
    double upper_edge(std::size_t i) const { return edges_.at(i + 1); }
    /// Geometric bin center.
    double center(std::size_t i) const;
    double weight(std::size_t i) const { return counts_.at(i); }

    double below() const noexcept { return below_; }
    double above() const noexcept { return above_; }
    double total_weight() const noexcept;

    struct Point {
        double center;
        double density;
        double count;
    };
    /// weight / (total_weight * linear bin width) for every bin.
    std::vector<Point> density() const;

    /// Approximate quantile of the recorded weight (log-linear within a bin).
    double quantile(double p) const;

    bool operator==(const LogHistogram&) const = default;

private:
    int bins_per_decade_;
    std::vector<double> edges_;
    std::vector<double> counts_;
    double below_ = 0.0;
    double above_ = 0.0;
};

}  // namespace senbd
