#include "senbd/validation.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "senbd/analysis.hpp"
#include "senbd/ensemble.hpp"
#include "senbd/marks.hpp"

namespace senbd {

bool ValidationReport::passed() const noexcept {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

const CheckResult& ValidationReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("no check named " + name);
}

ValidationConfig default_validation_config(std::uint64_t seed) {
    SimConfig base(0.2, 1.0, ExponentialMixture({{0.9, 1.0}}), 1e4, seed);
    base.obs_dt = 50.0;
    return {base, 10, 0};
}

namespace {

std::string format(const char* fmt, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

struct Pooled {
    std::vector<double> log_lambda;
    std::vector<double> intervals;
    std::vector<double> counts;
    double mark_sum = 0.0;
    double marks = 0.0;
    bool all_unit_marks = true;
};

Pooled pool(const std::vector<ReplicaResult>& runs, const SimConfig& config) {
    Pooled p;
    for (const auto& r : runs) {
        for (double lam : r.observations) p.log_lambda.push_back(std::log(lam));
        const auto gaps = rescaled_intervals(r.events, config.nu0, config.omega, config.kernel);
        p.intervals.insert(p.intervals.end(), gaps.begin(), gaps.end());
        p.counts.push_back(static_cast<double>(r.events.size()));
        for (const auto& e : r.events) {
            p.mark_sum += static_cast<double>(e.m);
            p.marks += 1.0;
            if (e.m != 1) p.all_unit_marks = false;
        }
    }
    return p;
}

std::pair<double, double> mean_and_variance(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= xs.size() > 1 ? static_cast<double>(xs.size() - 1) : 1.0;
    return {mean, var};
}

}  // namespace

ValidationReport run_validation(const ValidationConfig& config) {
    config.base.validate();
    if (config.pairs < 2) throw std::invalid_argument("validation needs at least two pairs");

    EnsembleOptions options;
    options.histogram = HistogramSpec::for_background(config.base.nu0);
    options.keep_events = true;
    options.keep_observations = true;

    options.sampler = Sampler::time_rescaling;
    const auto rescaled = run_ensemble_parallel(config.base, replica_seeds(config.base.seed, 0, config.pairs), options,
                                                config.threads);
    options.sampler = Sampler::thinning;
    const auto thinned = run_ensemble_parallel(config.base, replica_seeds(config.base.seed, 1, config.pairs), options,
                                               config.threads);

    const Pooled a = pool(rescaled, config.base);
    const Pooled b = pool(thinned, config.base);
    ValidationReport report;
    report.time_rescaling_events = static_cast<std::uint64_t>(a.marks);
    report.thinning_events = static_cast<std::uint64_t>(b.marks);

    if (a.log_lambda.empty() || b.log_lambda.empty())
        throw std::invalid_argument("validation: no observations; reduce obs_dt or increase t_max");
    const KsResult obs = ks_test_two_sample(a.log_lambda, b.log_lambda);
    report.checks.push_back({"observation_ks", obs.p_value >= kObservationKsAlpha, obs.p_value, kObservationKsAlpha,
                             format("two-sample KS on log lambda: D = %.5f, n_eff = %.0f", obs.statistic, obs.effective_n)});

    for (const auto& [name, pooled] : {std::pair{"rescaled_ks_thinning", &b}, std::pair{"rescaled_ks_time_rescaling", &a}}) {
        if (pooled->intervals.size() < 100) {
            report.checks.push_back({name, false, 0.0, kRescaledKsAlpha, "fewer than 100 events"});
            continue;
        }
        const KsResult ks = ks_test_exponential(pooled->intervals);
        report.checks.push_back({name, ks.p_value >= kRescaledKsAlpha, ks.p_value, kRescaledKsAlpha,
                                 format("rescaled intervals vs Exp(1): D = %.5f, n = %.0f", ks.statistic, ks.effective_n)});
    }

    const auto [mean_a, var_a] = mean_and_variance(a.counts);
    const auto [mean_b, var_b] = mean_and_variance(b.counts);
    const double se = std::sqrt(var_a / static_cast<double>(a.counts.size()) + var_b / static_cast<double>(b.counts.size()));
    const double z = se > 0.0 ? std::fabs(mean_a - mean_b) / se : 0.0;
    report.checks.push_back({"event_count", z <= 3.0, z, 3.0,
                             format("mean events per run: time rescaling %.1f, thinning %.1f", mean_a, mean_b)});

    const MarkDistribution marks(config.base.omega);
    const double ratio_error = std::fabs(marks.second_moment() / marks.mean() - (config.base.omega + 1.0));
    report.checks.push_back({"mark_identity", ratio_error <= 1e-12 * (config.base.omega + 1.0), ratio_error,
                             1e-12 * (config.base.omega + 1.0), "E[m^2]/E[m] = omega + 1"});

    const double total = a.marks + b.marks;
    if (marks.degenerate()) {
        const bool unit = a.all_unit_marks && b.all_unit_marks;
        report.checks.push_back({"mark_mean", unit, unit ? 1.0 : 0.0, 1.0, "omega = 0: every mark must equal 1"});
    } else {
        const double empirical = (a.mark_sum + b.mark_sum) / total;
        const double sd = std::sqrt(marks.second_moment() - marks.mean() * marks.mean());
        const double zm = std::fabs(empirical - marks.mean()) / (sd / std::sqrt(total));
        report.checks.push_back({"mark_mean", zm <= 5.0, zm, 5.0,
                                 format("empirical mark mean %.5f vs %.5f", empirical, marks.mean())});
    }

    const double alpha = config.base.kernel.alpha();
    const double moment_gap = std::fabs(exponent_from_mark_moments(config.base.nu0, alpha, marks) -
                                        theoretical_exponent(config.base.nu0, config.base.omega, alpha));
    report.checks.push_back({"moment_exponent", moment_gap <= 1e-12, moment_gap, 1e-12,
                             "mark-moment exponent equals 1 - 2 nu0 alpha / (omega + 1)"});
    return report;
}

}  // namespace senbd
