#include <cstdio>
#include <exception>
#include <memory>
#include <vector>

#include "commands.hpp"
#include "common.hpp"
#include "senbd/hawkes.hpp"
#include "senbd/rng.hpp"

namespace senbd::cli {

namespace {

struct SimulateOptions {
    ModelFlags model;
    std::optional<double> t_max;
    std::optional<double> burn_in;
    std::optional<double> obs_dt;
    std::optional<std::size_t> runs;
    int jobs = 1;
    std::string out;
};

struct Job {
    std::size_t cell;
    std::size_t run;
    SimConfig config;
    std::filesystem::path dir;
};

// Expands the optional "campaign" object into one JSON config per cell,
// nu0-major, then omega, then kernel.
std::vector<Json> expand_cells(const Json& base) {
    Json common = base;
    common.erase("campaign");
    common.erase("runs");
    if (!base.contains("campaign")) return {common};

    const Json& campaign = base.at("campaign");
    auto axis = [&](const char* key) {
        if (campaign.contains(key)) {
            if (!campaign.at(key).is_array() || campaign.at(key).empty())
                throw ConfigError(std::string("campaign.") + key, "must be a non-empty list");
            return campaign.at(key);
        }
        if (!common.contains(key)) throw ConfigError(key, "missing");
        return Json::array({common.at(key)});
    };
    std::vector<Json> cells;
    for (const auto& nu0 : axis("nu0"))
        for (const auto& omega : axis("omega"))
            for (const auto& kernel : axis("kernel")) {
                Json cell = common;
                cell["nu0"] = nu0;
                cell["omega"] = omega;
                cell["kernel"] = kernel;
                if (campaign.contains("kernel")) cell.erase("kernel_source");
                cells.push_back(std::move(cell));
            }
    return cells;
}

Json run_manifest(const SimConfig& config, const SimSummary& summary, double wall, std::uint64_t base_seed,
                  const Job& job, bool derived) {
    return {{"kind", "hawkes"},
            {"sampler", "time_rescaling"},
            {"config", sim_config_to_json(config)},
            {"base_seed", base_seed},
            {"cell", job.cell},
            {"run", job.run},
            {"seed_derivation", derived ? kSeedDerivation : "direct: seed = base_seed"},
            {"event_count", summary.events},
            {"observation_count", summary.observations},
            {"mean_lambda", summary.mean_lambda()},
            {"max_solver_residual", summary.max_residual},
            {"wall_time_s", wall},
            {"files", {{"events", "events.csv"}, {"observations", "observations.csv"}}}};
}

int run_simulate(const SimulateOptions& opt) {
    Json base = opt.model.merged();
    if (opt.t_max) base["t_max"] = *opt.t_max;
    if (opt.burn_in) base["burn_in"] = *opt.burn_in;
    if (opt.obs_dt) base["obs_dt"] = *opt.obs_dt;
    if (!base.contains("t_max")) throw ConfigError("t_max", "missing (--tmax)");
    const std::size_t runs = opt.runs ? *opt.runs : base.value("runs", std::size_t{1});
    if (runs == 0) throw ConfigError("runs", "must be >= 1");
    if (opt.jobs < 1) throw ConfigError("jobs", "must be >= 1");

    const auto cells = expand_cells(base);
    const std::uint64_t base_seed = sim_config_from_json(cells.front()).seed;
    const bool single = cells.size() == 1 && runs == 1;
    const std::filesystem::path out = opt.out.empty() ? default_output_dir() : std::filesystem::path(opt.out);

    std::vector<Job> jobs;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        SimConfig config = sim_config_from_json(cells[c]);
        config.validate(!opt.model.allow_critical);
        for (std::size_t r = 0; r < runs; ++r) {
            SimConfig run_config = config;
            std::filesystem::path dir = out;
            if (!single) {
                run_config.seed = derive_seed(base_seed, c, r);
                char name[64];
                std::snprintf(name, sizeof name, "cell_%03zu/run_%03zu", c, r);
                dir /= name;
            }
            jobs.push_back({c, r, std::move(run_config), std::move(dir)});
        }
    }

    std::vector<SimSummary> summaries(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(opt.jobs)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            const Job& job = jobs[i];
            ensure_directory(job.dir);
            Stopwatch clock;
            CsvSimWriter writer(job.dir / "events.csv", job.dir / "observations.csv");
            summaries[i] = simulate(job.config, writer);
            writer.close();
            write_json_file(job.dir / "manifest.json",
                            run_manifest(job.config, summaries[i], clock.seconds(), base_seed, job, !single));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    if (!single) {
        Json index = {{"base_seed", base_seed}, {"runs_per_cell", runs}, {"seed_derivation", kSeedDerivation}};
        Json list = Json::array();
        for (std::size_t i = 0; i < jobs.size(); ++i)
            list.push_back({{"cell", jobs[i].cell},
                            {"run", jobs[i].run},
                            {"seed", jobs[i].config.seed},
                            {"manifest", std::filesystem::relative(jobs[i].dir / "manifest.json", out).string()},
                            {"event_count", summaries[i].events}});
        index["runs"] = std::move(list);
        write_json_file(out / "campaign.json", index);
    }
    for (std::size_t i = 0; i < jobs.size(); ++i)
        std::printf("cell %zu run %zu seed %llu: %llu events, mean lambda %.6g -> %s\n", jobs[i].cell, jobs[i].run,
                    static_cast<unsigned long long>(jobs[i].config.seed),
                    static_cast<unsigned long long>(summaries[i].events), summaries[i].mean_lambda(),
                    jobs[i].dir.string().c_str());
    return 0;
}

}  // namespace

void register_simulate(CLI::App& app, int& result) {
    auto opt = std::make_shared<SimulateOptions>();
    auto* cmd = app.add_subcommand("simulate", "Sample the marked Hawkes process by time rescaling");
    opt->model.add_to(*cmd);
    cmd->add_option("--tmax", opt->t_max, "simulation horizon");
    cmd->add_option("--burn-in", opt->burn_in, "start of the observation grid (default 1% of tmax)");
    cmd->add_option("--obs-dt", opt->obs_dt, "observation grid spacing (default 0.1)");
    cmd->add_option("--runs", opt->runs, "independent runs per campaign cell");
    cmd->add_option("--jobs", opt->jobs, "concurrent runs")->capture_default_str();
    cmd->add_option("--out", opt->out, "output directory (default $SENBD_OUTPUT_DIR or .)");
    cmd->callback([opt, &result] { result = guarded("simulate", [&] { return run_simulate(*opt); }); });
}

}  // namespace senbd::cli
