#include "common.hpp"

#include <cstdlib>

#include "commands.hpp"

namespace senbd::cli {

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("SENBD_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

void ModelFlags::add_to(CLI::App& cmd) {
    cmd.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    cmd.add_option("--nu0", nu0, "background intensity");
    cmd.add_option("--omega", omega, "mark parameter");
    cmd.add_option("--kernel", kernel, "n:tau[,n:tau...] or powerlaw:gamma=G,n=N,K=K");
    cmd.add_option("--seed", seed, "random seed (required here or in the config file)");
    cmd.add_flag("--allow-critical", allow_critical, "accept branching ratio >= 1");
}

Json ModelFlags::file_json() const {
    Json j = config_path.empty() ? Json::object() : read_json_file(config_path);
    if (!j.is_object()) throw ConfigError("config", "top level must be a JSON object");
    return j;
}

void ModelFlags::apply_overrides(Json& j) const {
    if (nu0) j["nu0"] = *nu0;
    if (omega) j["omega"] = *omega;
    if (kernel) {
        j["kernel"] = *kernel;
        j.erase("kernel_source");
    }
    if (seed) j["seed"] = *seed;
}

Json ModelFlags::merged() const {
    Json j = file_json();
    apply_overrides(j);
    if (!j.contains("seed")) throw ConfigError("seed", "--seed is required (no implicit seeding)");
    return j;
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace senbd::cli
