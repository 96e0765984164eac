#include <cstdio>
#include <exception>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Simulation and analysis of the self-exciting negative binomial (marked Hawkes) process"};
    app.require_subcommand(1);
    int result = 0;
    senbd::cli::register_simulate(app, result);
    senbd::cli::register_dt_simulate(app, result);
    senbd::cli::register_analyze(app, result);
    senbd::cli::register_theory(app, result);
    senbd::cli::register_validate(app, result);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return result;
}
