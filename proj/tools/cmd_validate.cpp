#include <cstdio>
#include <memory>

#include "commands.hpp"
#include "common.hpp"
#include "senbd/validation.hpp"

namespace senbd::cli {

namespace {

struct ValidateOptions {
    ModelFlags model;
    std::optional<double> t_max;
    std::optional<double> obs_dt;
    std::size_t pairs = 10;
    int jobs = 1;
    std::optional<double> solver_tolerance;
    std::string out;
};

int run_validate(const ValidateOptions& opt) {
    ValidationConfig config = default_validation_config();
    Json j = sim_config_to_json(config.base);
    const Json file = opt.model.file_json();
    j.update(file);
    opt.model.apply_overrides(j);
    if (opt.t_max) {
        j["t_max"] = *opt.t_max;
        if (!file.contains("burn_in")) j["burn_in"] = 0.01 * *opt.t_max;
    }
    if (opt.obs_dt) j["obs_dt"] = *opt.obs_dt;
    if (opt.solver_tolerance) j["solver_tolerance"] = *opt.solver_tolerance;
    config.base = sim_config_from_json(j);
    config.base.validate(!opt.model.allow_critical);
    config.pairs = opt.pairs;
    config.threads = opt.jobs;

    const ValidationReport report = run_validation(config);
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        std::printf("[%s] %-28s value %-12.6g threshold %-10.3g %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.value, c.threshold, c.detail.c_str());
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"detail", c.detail}});
    }
    std::printf("%s (%llu time-rescaling events, %llu thinning events)\n", report.passed() ? "all checks passed" : "CHECKS FAILED",
                static_cast<unsigned long long>(report.time_rescaling_events),
                static_cast<unsigned long long>(report.thinning_events));
    if (!opt.out.empty()) {
        const std::filesystem::path out(opt.out);
        ensure_directory(out);
        write_json_file(out / "validation.json", {{"config", sim_config_to_json(config.base)},
                                                  {"pairs", config.pairs},
                                                  {"passed", report.passed()},
                                                  {"checks", checks}});
    }
    return report.passed() ? 0 : 1;
}

}  // namespace

void register_validate(CLI::App& app, int& result) {
    auto opt = std::make_shared<ValidateOptions>();
    auto* cmd = app.add_subcommand("validate", "Cross-check the time-rescaling sampler against thinning");
    opt->model.add_to(*cmd);
    cmd->add_option("--tmax", opt->t_max, "horizon of each run (default 1e4)");
    cmd->add_option("--obs-dt", opt->obs_dt, "observation spacing (default 50)");
    cmd->add_option("--pairs", opt->pairs, "number of paired runs")->capture_default_str();
    cmd->add_option("--jobs", opt->jobs, "concurrent runs")->capture_default_str();
    cmd->add_option("--solver-tolerance", opt->solver_tolerance, "override the solver residual tolerance (testing)")
        ->group("");
    cmd->add_option("--out", opt->out, "directory for validation.json");
    cmd->callback([opt, &result] { result = guarded("validate", [&] { return run_validate(*opt); }); });
}

}  // namespace senbd::cli
