#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "commands.hpp"
#include "common.hpp"
#include "senbd/analysis.hpp"
#include "senbd/ensemble.hpp"

namespace senbd::cli {

namespace {

struct AnalyzeOptions {
    std::vector<std::string> manifests;
    std::vector<std::string> observations;
    std::optional<double> nu0;
    std::optional<double> omega;
    std::optional<std::string> kernel;
    std::string window;
    int bins_per_decade = 20;
    int jobs = 1;
    std::string out;
};

std::pair<double, double> parse_window(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ConfigError("window", "expected lo,hi");
    try {
        std::size_t used = 0;
        const double lo = std::stod(text.substr(0, comma), &used);
        const double hi = std::stod(text.substr(comma + 1));
        if (!(lo > 0.0 && hi > lo)) throw ConfigError("window", "need 0 < lo < hi");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ConfigError("window", "expected two numbers lo,hi, got '" + text + "'");
    }
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

int run_analyze(const AnalyzeOptions& opt) {
    std::vector<std::filesystem::path> files(opt.observations.begin(), opt.observations.end());
    std::optional<SimConfig> manifest_config;
    for (const auto& m : opt.manifests) {
        const Json manifest = read_json_file(m);
        if (!manifest.contains("config")) throw std::runtime_error(m + ": not a simulation manifest");
        if (!manifest_config) manifest_config = sim_config_from_json(manifest.at("config"));
        if (opt.observations.empty()) {
            const auto name = manifest.at("files").at("observations").get<std::string>();
            files.push_back(std::filesystem::path(m).parent_path() / name);
        }
    }
    if (files.empty()) throw ConfigError("observations", "no observation file given (--observations or --manifest)");

    double nu0 = 0.0, omega = 0.0;
    std::optional<ExponentialMixture> kernel;
    if (manifest_config) {
        nu0 = manifest_config->nu0;
        omega = manifest_config->omega;
        kernel = manifest_config->kernel;
    }
    if (opt.nu0) nu0 = *opt.nu0;
    if (opt.omega) omega = *opt.omega;
    if (opt.kernel) kernel = parse_kernel_flag(*opt.kernel);
    if (!(nu0 > 0.0)) throw ConfigError("nu0", "missing (--nu0 or --manifest)");
    if (!opt.omega && !manifest_config) throw ConfigError("omega", "missing (--omega or --manifest)");
    if (!kernel) throw ConfigError("kernel", "missing (--kernel or --manifest)");

    std::vector<double> lambdas;
    for (const auto& f : files) {
        auto part = read_observation_csv(f);
        lambdas.insert(lambdas.end(), part.begin(), part.end());
    }
    const HistogramSpec spec = HistogramSpec::for_background(nu0, opt.bins_per_decade);
    const LogHistogram hist = fill_histogram_parallel(lambdas, spec, opt.jobs);

    const std::filesystem::path out = opt.out.empty() ? default_output_dir() : std::filesystem::path(opt.out);
    ensure_directory(out);
    {
        const auto path = out / "histogram.csv";
        std::FILE* csv = std::fopen(path.c_str(), "w");
        if (!csv) throw std::runtime_error("cannot open " + path.string());
        std::fputs("bin_center,density,count\n", csv);
        for (const auto& p : hist.density())
            std::fprintf(csv, "%s,%s,%s\n", format_double(p.center).c_str(), format_double(p.density).c_str(),
                         format_double(p.count).c_str());
        if (std::fclose(csv) != 0) throw std::runtime_error("failed writing " + path.string());
    }

    const auto [lo, hi] = opt.window.empty() ? default_fit_window(hist, nu0, omega, *kernel) : parse_window(opt.window);
    const TheoryPrediction theory = predict(nu0, omega, *kernel);
    const FitResult fit = fit_power_exponent(hist, lo, hi);
    Json report = {{"slope", fit.slope},
                   {"stderr", fit.std_error},
                   {"bins", fit.bins},
                   {"window_lo", lo},
                   {"window_hi", hi},
                   {"window_source", opt.window.empty() ? "default" : "user"},
                   {"theory_exponent", theory.exponent},
                   {"theory_exponent_critical", theory.critical_exponent},
                   {"theory_cutoff", nullable(theory.cutoff)},
                   {"observations", lambdas.size()},
                   {"files", files.size()}};
    write_json_file(out / "fit.json", report);
    std::printf("slope %.4f +/- %.4f over [%g, %g]; theory %.4f (critical %.4f)\n", fit.slope, fit.std_error, lo, hi,
                -theory.exponent, -theory.critical_exponent);
    return 0;
}

}  // namespace

void register_analyze(CLI::App& app, int& result) {
    auto opt = std::make_shared<AnalyzeOptions>();
    auto* cmd = app.add_subcommand("analyze", "Histogram observed intensities and fit the power-law slope");
    cmd->add_option("--manifest", opt->manifests, "run manifest(s); observations are found next to them");
    cmd->add_option("--observations", opt->observations, "observation CSV file(s) (t,lambda)");
    cmd->add_option("--nu0", opt->nu0, "background intensity (overrides the manifest)");
    cmd->add_option("--omega", opt->omega, "mark parameter (overrides the manifest)");
    cmd->add_option("--kernel", opt->kernel, "kernel spec (overrides the manifest)");
    cmd->add_option("--window", opt->window, "fit window lo,hi (default: 10 nu0 .. 0.3 cutoff or q99.9)");
    cmd->add_option("--bins-per-decade", opt->bins_per_decade)->capture_default_str();
    cmd->add_option("--jobs", opt->jobs, "threads for histogram filling")->capture_default_str();
    cmd->add_option("--out", opt->out, "output directory (default $SENBD_OUTPUT_DIR or .)");
    cmd->callback([opt, &result] { result = guarded("analyze", [&] { return run_analyze(*opt); }); });
}

}  // namespace senbd::cli
