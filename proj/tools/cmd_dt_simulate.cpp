#include <cstdio>
#include <memory>

#include "commands.hpp"
#include "common.hpp"
#include "senbd/dt_process.hpp"

namespace senbd::cli {

namespace {

struct DtOptions {
    ModelFlags model;
    std::optional<std::uint64_t> steps;
    std::uint64_t stride = 1;
    std::string out;
};

int run_dt_simulate(const DtOptions& opt) {
    Json j = opt.model.merged();
    if (opt.steps) j["steps"] = *opt.steps;
    if (opt.stride == 0) throw ConfigError("stride", "must be >= 1");
    const DtConfig config = dt_config_from_json(j);
    config.validate(!opt.model.allow_critical);

    const std::filesystem::path out = opt.out.empty() ? default_output_dir() : std::filesystem::path(opt.out);
    ensure_directory(out);
    const auto csv_path = out / "dt_steps.csv";
    std::FILE* csv = std::fopen(csv_path.c_str(), "w");
    if (!csv) throw std::runtime_error("cannot open " + csv_path.string());
    std::fputs("t,X,lambda_hat\n", csv);

    Stopwatch clock;
    const std::uint64_t stride = opt.stride;
    const DtSummary summary = run_dt_process(config, [&](std::uint64_t t, std::uint64_t x, double lam) {
        if (t % stride == 0)
            std::fprintf(csv, "%llu,%llu,%s\n", static_cast<unsigned long long>(t), static_cast<unsigned long long>(x),
                         format_double(lam).c_str());
    });
    const bool failed = std::ferror(csv);
    if (std::fclose(csv) != 0 || failed) throw std::runtime_error("failed writing " + csv_path.string());

    const double n = config.kernel.branching_ratio();
    Json manifest = {{"kind", "dt_process"},
                     {"config", dt_config_to_json(config)},
                     {"stride", stride},
                     {"mean_lambda_hat", summary.mean_lambda()},
                     {"mean_count", static_cast<double>(summary.count_sum) / static_cast<double>(summary.steps)},
                     {"stationary_mean", n < 1.0 ? Json(config.nu0 / (1.0 - n)) : Json(nullptr)},
                     {"wall_time_s", clock.seconds()},
                     {"files", {{"steps", "dt_steps.csv"}}}};
    write_json_file(out / "manifest.json", manifest);
    std::printf("%llu steps, mean lambda_hat %.6g -> %s\n", static_cast<unsigned long long>(summary.steps),
                summary.mean_lambda(), out.string().c_str());
    return 0;
}

}  // namespace

void register_dt_simulate(CLI::App& app, int& result) {
    auto opt = std::make_shared<DtOptions>();
    auto* cmd = app.add_subcommand("dt-simulate", "Run the discrete-time self-exciting NBD process");
    opt->model.add_to(*cmd);
    cmd->add_option("--steps", opt->steps, "number of periods");
    cmd->add_option("--stride", opt->stride, "write every stride-th row")->capture_default_str();
    cmd->add_option("--out", opt->out, "output directory (default $SENBD_OUTPUT_DIR or .)");
    cmd->callback([opt, &result] { result = guarded("dt-simulate", [&] { return run_dt_simulate(*opt); }); });
}

}  // namespace senbd::cli
