#pragma once

#include <filesystem>
#include <string>

#include "CLI11.hpp"

namespace senbd::cli {

/// SENBD_OUTPUT_DIR, or the working directory.
std::filesystem::path default_output_dir();

// Each registers its subcommand; the callback stored in `result` reports the
// exit code of the subcommand that ran.
void register_simulate(CLI::App& app, int& result);
void register_dt_simulate(CLI::App& app, int& result);
void register_analyze(CLI::App& app, int& result);
void register_theory(CLI::App& app, int& result);
void register_validate(CLI::App& app, int& result);

}  // namespace senbd::cli
