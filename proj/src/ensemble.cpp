#include "senbd/ensemble.hpp"

#include <exception>

#include <omp.h>

#include "senbd/rng.hpp"

namespace senbd {

bool ReplicaResult::operator==(const ReplicaResult& other) const {
    return seed == other.seed && summary.events == other.summary.events &&
           summary.observations == other.summary.observations && summary.lambda_sum == other.summary.lambda_sum &&
           summary.max_residual == other.summary.max_residual && histogram == other.histogram &&
           events == other.events && observations == other.observations;
}

namespace {

class ReplicaSink : public SimSink {
public:
    ReplicaSink(ReplicaResult& out, const EnsembleOptions& options) : out_(out), options_(options) {}

    void on_event(const EventRecord& event, double) override {
        if (options_.keep_events) out_.events.push_back(event);
    }
    void on_observation(double, double lambda) override {
        out_.histogram.record(lambda);
        if (options_.keep_observations) out_.observations.push_back(lambda);
    }

private:
    ReplicaResult& out_;
    const EnsembleOptions& options_;
};

ReplicaResult run_replica(const SimConfig& base, std::uint64_t seed, const EnsembleOptions& options) {
    SimConfig config = base;
    config.seed = seed;
    ReplicaResult result{seed, {}, options.histogram.make(), {}, {}};
    ReplicaSink sink(result, options);
    result.summary = options.sampler == Sampler::thinning ? simulate_thinning(config, sink) : simulate(config, sink);
    return result;
}

}  // namespace

std::vector<ReplicaResult> run_ensemble_serial(const SimConfig& config, std::span<const std::uint64_t> seeds,
                                               const EnsembleOptions& options) {
    std::vector<ReplicaResult> results;
    results.reserve(seeds.size());
    for (std::uint64_t seed : seeds) results.push_back(run_replica(config, seed, options));
    return results;
}

std::vector<ReplicaResult> run_ensemble_parallel(const SimConfig& config, std::span<const std::uint64_t> seeds,
                                                 const EnsembleOptions& options, int threads) {
    config.validate();
    const auto count = static_cast<std::ptrdiff_t>(seeds.size());
    std::vector<ReplicaResult> results(seeds.size(), ReplicaResult{0, {}, options.histogram.make(), {}, {}});
    std::vector<std::exception_ptr> errors(seeds.size());
    const int team = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            results[i] = run_replica(config, seeds[i], options);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

LogHistogram merge_histograms(std::span<const ReplicaResult> replicas) {
    if (replicas.empty()) throw std::invalid_argument("merge_histograms: no replicas");
    LogHistogram merged = replicas.front().histogram;
    for (std::size_t i = 1; i < replicas.size(); ++i) merged.merge(replicas[i].histogram);
    return merged;
}

double pooled_mean_lambda(std::span<const ReplicaResult> replicas) noexcept {
    double sum = 0.0;
    double count = 0.0;
    for (const auto& r : replicas) {
        sum += r.summary.lambda_sum;
        count += static_cast<double>(r.summary.observations);
    }
    return count > 0.0 ? sum / count : 0.0;
}

std::vector<std::uint64_t> replica_seeds(std::uint64_t base_seed, std::uint64_t cell, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i) seeds[i] = derive_seed(base_seed, cell, i);
    return seeds;
}

LogHistogram fill_histogram_serial(std::span<const double> values, const HistogramSpec& spec) {
    LogHistogram hist = spec.make();
    for (double v : values) hist.record(v);
    return hist;
}

LogHistogram fill_histogram_parallel(std::span<const double> values, const HistogramSpec& spec, int threads) {
    const int team = threads > 0 ? threads : omp_get_max_threads();
    std::vector<LogHistogram> partial(static_cast<std::size_t>(team), spec.make());
    const auto count = static_cast<std::ptrdiff_t>(values.size());
    std::exception_ptr error;

#pragma omp parallel num_threads(team)
    {
        auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                local.record(values[i]);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    // Unit weights are integers in double, so the merged counts do not
    // depend on how the loop was split.
    LogHistogram merged = partial.front();
    for (std::size_t t = 1; t < partial.size(); ++t) merged.merge(partial[t]);
    return merged;
}

}  // namespace senbd
