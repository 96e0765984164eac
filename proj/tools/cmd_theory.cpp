#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "commands.hpp"
#include "common.hpp"
#include "senbd/theory_table.hpp"

namespace senbd::cli {

namespace {

struct TheoryOptions {
    std::string figure = "all";
    std::vector<double> nu0;
    std::vector<double> omega;
    std::string kernel;
    std::string out;
};

std::string number(double v) {
    if (std::isinf(v)) return "inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

int run_theory(const TheoryOptions& opt) {
    std::vector<TheoryRow> rows;
    if (!opt.kernel.empty() || !opt.nu0.empty() || !opt.omega.empty()) {
        if (opt.kernel.empty()) throw ConfigError("kernel", "custom grids need --kernel");
        const std::vector<double> nu0 = opt.nu0.empty() ? std::vector<double>(std::begin(kGridNu0), std::end(kGridNu0)) : opt.nu0;
        const std::vector<double> omega =
            opt.omega.empty() ? std::vector<double>(std::begin(kGridOmega), std::end(kGridOmega)) : opt.omega;
        for (double v : nu0)
            if (!(v >= 0.0)) throw ConfigError("nu0", "must be >= 0");
        for (double v : omega)
            if (!(v >= 0.0)) throw ConfigError("omega", "must be >= 0");
        rows = custom_table(nu0, omega, parse_kernel_flag(opt.kernel));
    } else if (opt.figure == "all") {
        for (int f = 2; f <= 5; ++f) {
            auto part = figure_table(f);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    } else {
        int figure = 0;
        try {
            figure = std::stoi(opt.figure);
        } catch (const std::logic_error&) {
            throw ConfigError("figure", "expected 2, 3, 4, 5 or all");
        }
        try {
            rows = figure_table(figure);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("figure", e.what());
        }
    }

    std::FILE* sink = stdout;
    if (!opt.out.empty()) {
        sink = std::fopen(opt.out.c_str(), "w");
        if (!sink) throw std::runtime_error("cannot open " + opt.out);
    }
    std::fputs("figure,nu0,omega,n,alpha,exponent,critical_exponent,cutoff\n", sink);
    for (const auto& r : rows)
        std::fprintf(sink, "%d,%s,%s,%s,%s,%s,%s,%s\n", r.figure, number(r.nu0).c_str(), number(r.omega).c_str(),
                     number(r.n).c_str(), number(r.alpha).c_str(), number(r.exponent).c_str(),
                     number(r.critical_exponent).c_str(), number(r.cutoff).c_str());
    if (sink != stdout && std::fclose(sink) != 0) throw std::runtime_error("failed writing " + opt.out);
    return 0;
}

}  // namespace

void register_theory(CLI::App& app, int& result) {
    auto opt = std::make_shared<TheoryOptions>();
    auto* cmd = app.add_subcommand("theory", "Tabulate predicted power-law exponents and cutoffs");
    cmd->add_option("--figure", opt->figure, "experiment grid: 2, 3, 4, 5 or all")->capture_default_str();
    cmd->add_option("--nu0", opt->nu0, "custom grid background intensities")->delimiter(',');
    cmd->add_option("--omega", opt->omega, "custom grid mark parameters")->delimiter(',');
    cmd->add_option("--kernel", opt->kernel, "custom grid kernel");
    cmd->add_option("--out", opt->out, "write CSV here instead of stdout");
    cmd->callback([opt, &result] { result = guarded("theory", [&] { return run_theory(*opt); }); });
}

}  // namespace senbd::cli
