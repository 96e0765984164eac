#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "senbd/config_io.hpp"

namespace senbd::cli {

/// Flags shared by the simulation subcommands; unset flags fall back to the
/// config file, flags win over the file.
struct ModelFlags {
    std::string config_path;
    std::optional<double> nu0;
    std::optional<double> omega;
    std::optional<std::string> kernel;
    std::optional<std::uint64_t> seed;
    bool allow_critical = false;

    void add_to(CLI::App& cmd);
    /// Config file contents (empty object without --config).
    Json file_json() const;
    /// Writes the flags that were given over `j`.
    void apply_overrides(Json& j) const;
    /// File plus flags; the seed must be present in one of them.
    Json merged() const;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void ensure_directory(const std::filesystem::path& dir);

/// Runs `body`, turning exceptions into a diagnostic and exit code 1.
template <typename Body>
int guarded(const char* command, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "%s: invalid configuration: %s\n", command, e.what());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s: %s\n", command, e.what());
    }
    return 1;
}

inline constexpr const char* kSeedDerivation =
    "derive_seed(base, cell, run): s = splitmix64(base); s = splitmix64(s ^ cell); seed = splitmix64(s ^ run), "
    "where splitmix64(x) advances state x by 0x9E3779B97F4A7C15 and returns its mix";

}  // namespace senbd::cli
