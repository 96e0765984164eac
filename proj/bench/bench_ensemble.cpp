#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "senbd/ensemble.hpp"

using namespace senbd;

namespace {

template <typename F>
double best_of(int repeats, F&& body) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        body();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

}  // namespace

// Usage: senbd_bench [replicas] [t_max] [threads]
int main(int argc, char** argv) {
    const std::size_t count = argc > 1 ? std::stoul(argv[1]) : 16;
    const double t_max = argc > 2 ? std::stod(argv[2]) : 2e4;
    const int threads = argc > 3 ? std::stoi(argv[3]) : omp_get_max_threads();

    const SimConfig config(0.2, 1.0, ExponentialMixture({{0.5, 1.0}, {0.49, 3.0}}), t_max, 1);
    const auto seeds = replica_seeds(7, 0, count);
    EnsembleOptions options;
    options.histogram = HistogramSpec::for_background(config.nu0);
    options.keep_observations = true;

    std::vector<ReplicaResult> serial, parallel;
    const double t_serial = best_of(3, [&] { serial = run_ensemble_serial(config, seeds, options); });
    const double t_parallel = best_of(3, [&] { parallel = run_ensemble_parallel(config, seeds, options, threads); });
    std::uint64_t events = 0;
    for (const auto& r : serial) events += r.summary.events;
    std::printf("ensemble  %zu replicas, %.3g events: serial %.3fs, parallel(%d) %.3fs, speedup %.2fx, identical %s\n",
                count, static_cast<double>(events), t_serial, threads, t_parallel, t_serial / t_parallel,
                serial == parallel ? "yes" : "NO");

    std::vector<double> values;
    for (const auto& r : serial) values.insert(values.end(), r.observations.begin(), r.observations.end());
    LogHistogram h_serial = fill_histogram_serial(values, options.histogram);
    LogHistogram h_parallel = h_serial;
    const double f_serial = best_of(5, [&] { h_serial = fill_histogram_serial(values, options.histogram); });
    const double f_parallel = best_of(5, [&] { h_parallel = fill_histogram_parallel(values, options.histogram, threads); });
    std::printf("histogram %.3g values: serial %.4fs, parallel(%d) %.4fs, speedup %.2fx, identical %s\n",
                static_cast<double>(values.size()), f_serial, threads, f_parallel, f_serial / f_parallel,
                h_serial == h_parallel ? "yes" : "NO");
    return serial == parallel && h_serial == h_parallel ? EXIT_SUCCESS : EXIT_FAILURE;
}
