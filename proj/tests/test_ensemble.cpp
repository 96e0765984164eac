#include "doctest.h"

#include "senbd/ensemble.hpp"

using namespace senbd;

TEST_SUITE("ensemble") {

TEST_CASE("replica seeds") {
    const auto seeds = replica_seeds(9, 2, 5);
    REQUIRE(seeds.size() == 5);
    for (std::size_t i = 0; i < seeds.size(); ++i) CHECK(seeds[i] == derive_seed(9, 2, i));
}

TEST_CASE("parallel replicas match the serial reference") {
    const SimConfig config(0.2, 1.0, ExponentialMixture({{0.6, 1.0}, {0.3, 5.0}}), 3000.0, 0);
    const auto seeds = replica_seeds(4, 0, 9);
    for (Sampler sampler : {Sampler::time_rescaling, Sampler::thinning}) {
        EnsembleOptions options;
        options.sampler = sampler;
        options.histogram = HistogramSpec::for_background(config.nu0);
        options.keep_events = true;
        options.keep_observations = true;
        const auto serial = run_ensemble_serial(config, seeds, options);
        REQUIRE(serial.size() == seeds.size());
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            CHECK(serial[i].seed == seeds[i]);
            CHECK(serial[i].events.size() == serial[i].summary.events);
            CHECK(serial[i].observations.size() == serial[i].summary.observations);
            CHECK(serial[i].histogram.total_weight() == doctest::Approx(serial[i].summary.observations));
        }
        for (int threads : {1, 3, 8}) CHECK(run_ensemble_parallel(config, seeds, options, threads) == serial);

        // Replica i equals a standalone run with seed i.
        auto single = config;
        single.seed = seeds[3];
        const auto rec = sampler == Sampler::thinning ? simulate_thinning(single) : simulate(single);
        CHECK(rec.events == serial[3].events);
    }
}

TEST_CASE("pooled statistics") {
    const SimConfig config(0.2, 1.0, ExponentialMixture({{0.5, 1.0}}), 2000.0, 0);
    EnsembleOptions options;
    options.histogram = HistogramSpec::for_background(config.nu0);
    const auto runs = run_ensemble_parallel(config, replica_seeds(1, 0, 4), options);
    double sum = 0.0, count = 0.0;
    auto merged = runs[0].histogram;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        sum += runs[i].summary.lambda_sum;
        count += static_cast<double>(runs[i].summary.observations);
        if (i) merged.merge(runs[i].histogram);
    }
    CHECK(pooled_mean_lambda(runs) == doctest::Approx(sum / count));
    CHECK(merge_histograms(runs) == merged);
    CHECK(runs[0].events.empty());
}

TEST_CASE("replica errors propagate") {
    SimConfig config(0.2, 1.0, ExponentialMixture({{0.5, 1.0}}), 100.0, 0);
    config.obs_dt = -1.0;
    EnsembleOptions options;
    options.histogram = HistogramSpec::for_background(config.nu0);
    const auto seeds = replica_seeds(1, 0, 4);
    CHECK_THROWS_AS(run_ensemble_parallel(config, seeds, options, 2), ConfigError);
    CHECK_THROWS_AS(run_ensemble_serial(config, seeds, options), ConfigError);
}

}
