#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "senbd/hawkes.hpp"
#include "senbd/histogram.hpp"

namespace senbd {

// Independent replicas of one configuration. Each replica is strictly
// sequential; replicas run concurrently under OpenMP. The serial functions
// are the reference the parallel ones are tested against: for the same
// seeds both produce identical results.

enum class Sampler { time_rescaling, thinning };

struct HistogramSpec {
    double lambda_min;
    double lambda_max;
    int bins_per_decade = 20;

    static HistogramSpec for_background(double nu0, int bins_per_decade = 20) {
        return {nu0 / 10.0, nu0 * 1e6, bins_per_decade};
    }
    LogHistogram make() const { return LogHistogram(lambda_min, lambda_max, bins_per_decade); }
};

struct EnsembleOptions {
    Sampler sampler = Sampler::time_rescaling;
    HistogramSpec histogram;
    bool keep_events = false;
    bool keep_observations = false;
};

struct ReplicaResult {
    std::uint64_t seed;
    SimSummary summary;
    LogHistogram histogram;
    std::vector<EventRecord> events;
    std::vector<double> observations;

    bool operator==(const ReplicaResult& other) const;
};

/// Runs `config` once per seed (the config's own seed is ignored).
std::vector<ReplicaResult> run_ensemble_serial(const SimConfig& config, std::span<const std::uint64_t> seeds,
                                               const EnsembleOptions& options);
/// threads <= 0 uses the OpenMP default.
std::vector<ReplicaResult> run_ensemble_parallel(const SimConfig& config, std::span<const std::uint64_t> seeds,
                                                 const EnsembleOptions& options, int threads = 0);

/// Sum of the replicas' histograms, in replica order.
LogHistogram merge_histograms(std::span<const ReplicaResult> replicas);

/// Pooled observation mean over all replicas.
double pooled_mean_lambda(std::span<const ReplicaResult> replicas) noexcept;

/// Seeds derive_seed(base_seed, cell, 0..count-1).
std::vector<std::uint64_t> replica_seeds(std::uint64_t base_seed, std::uint64_t cell, std::size_t count);

/// Unit-weight histogram of `values`.
LogHistogram fill_histogram_serial(std::span<const double> values, const HistogramSpec& spec);
/// Same result via per-thread partial histograms merged in thread order.
LogHistogram fill_histogram_parallel(std::span<const double> values, const HistogramSpec& spec, int threads = 0);

}  // namespace senbd
