#include "senbd/config_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace senbd {

std::string format_double(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buffer, end);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, const std::string& field) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(field, "expected a number, got '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

ExponentialMixture make_kernel(std::vector<KernelTerm> terms) {
    try {
        return ExponentialMixture(std::move(terms));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("kernel", e.what());
    }
}

ExponentialMixture make_powerlaw(double gamma, double n, double count) {
    if (!(count >= 1.0) || count != std::floor(count)) throw ConfigError("kernel", "powerlaw K must be a positive integer");
    try {
        return powerlaw_mixture(gamma, n, static_cast<std::size_t>(count));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("kernel", e.what());
    }
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(key, "missing");
    return j.at(key);
}

double require_number(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number()) throw ConfigError(key, "must be a number");
    return v.get<double>();
}

std::uint64_t require_seed(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number_integer()) throw ConfigError(key, "must be an integer");
    return v.is_number_unsigned() ? v.get<std::uint64_t>() : static_cast<std::uint64_t>(v.get<std::int64_t>());
}

}  // namespace

ExponentialMixture parse_kernel_flag(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ConfigError("kernel", "empty kernel specification");
    constexpr std::string_view prefix = "powerlaw:";
    if (text.starts_with(prefix)) {
        double gamma = NAN, n = NAN, count = NAN;
        for (auto part : split(text.substr(prefix.size()), ',')) {
            const auto eq = part.find('=');
            if (eq == std::string_view::npos) throw ConfigError("kernel", "expected key=value in '" + std::string(part) + "'");
            const auto key = trim(part.substr(0, eq));
            const double value = parse_number(part.substr(eq + 1), "kernel");
            if (key == "gamma") gamma = value;
            else if (key == "n") n = value;
            else if (key == "K") count = value;
            else throw ConfigError("kernel", "unknown powerlaw key '" + std::string(key) + "'");
        }
        if (std::isnan(gamma) || std::isnan(n) || std::isnan(count))
            throw ConfigError("kernel", "powerlaw needs gamma, n and K");
        return make_powerlaw(gamma, n, count);
    }
    std::vector<KernelTerm> terms;
    for (auto part : split(text, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) throw ConfigError("kernel", "expected n:tau in '" + std::string(part) + "'");
        terms.push_back({parse_number(part.substr(0, colon), "kernel"), parse_number(part.substr(colon + 1), "kernel")});
    }
    return make_kernel(std::move(terms));
}

ExponentialMixture kernel_from_json(const Json& terms, const Json* source) {
    if (terms.is_object()) {
        if (terms.value("type", "") != "powerlaw") throw ConfigError("kernel", "object kernels must have type \"powerlaw\"");
        return make_powerlaw(require_number(terms, "gamma"), require_number(terms, "n"), require_number(terms, "K"));
    }
    if (terms.is_string()) return parse_kernel_flag(terms.get<std::string>());
    if (!terms.is_array()) throw ConfigError("kernel", "must be a list of {n, tau}, a powerlaw object, or a flag string");
    std::vector<KernelTerm> parsed;
    for (const auto& t : terms) parsed.push_back({require_number(t, "n"), require_number(t, "tau")});
    ExponentialMixture kernel = make_kernel(std::move(parsed));
    if (source && source->is_object()) {
        const double count = require_number(*source, "K");
        kernel.set_powerlaw_origin(
            {require_number(*source, "gamma"), require_number(*source, "n"), static_cast<std::size_t>(count)});
    }
    return kernel;
}

Json kernel_to_json(const ExponentialMixture& kernel) {
    Json list = Json::array();
    for (const auto& t : kernel.terms()) list.push_back({{"n", t.n}, {"tau", t.tau}});
    return list;
}

Json kernel_source_to_json(const ExponentialMixture& kernel) {
    const auto& origin = kernel.powerlaw_origin();
    if (!origin) return nullptr;
    return {{"type", "powerlaw"}, {"gamma", origin->gamma}, {"n", origin->n}, {"K", origin->count}};
}

Json sim_config_to_json(const SimConfig& config) {
    Json j = {{"nu0", config.nu0},
              {"omega", config.omega},
              {"kernel", kernel_to_json(config.kernel)},
              {"t_max", config.t_max},
              {"burn_in", config.burn_in},
              {"obs_dt", config.obs_dt},
              {"seed", config.seed}};
    if (config.kernel.powerlaw_origin()) j["kernel_source"] = kernel_source_to_json(config.kernel);
    if (config.solver_tolerance != kDefaultSolverTolerance) j["solver_tolerance"] = config.solver_tolerance;
    return j;
}

SimConfig sim_config_from_json(const Json& j) {
    const Json* source = j.contains("kernel_source") ? &j.at("kernel_source") : nullptr;
    SimConfig config(require_number(j, "nu0"), require_number(j, "omega"), kernel_from_json(require(j, "kernel"), source),
                     require_number(j, "t_max"), require_seed(j, "seed"));
    if (j.contains("burn_in")) config.burn_in = require_number(j, "burn_in");
    if (j.contains("obs_dt")) config.obs_dt = require_number(j, "obs_dt");
    if (j.contains("solver_tolerance")) config.solver_tolerance = require_number(j, "solver_tolerance");
    config.validate();
    return config;
}

Json dt_config_to_json(const DtConfig& config) {
    return {{"nu0", config.nu0},
            {"omega", config.omega},
            {"kernel", kernel_to_json(config.kernel)},
            {"steps", config.steps},
            {"seed", config.seed}};
}

DtConfig dt_config_from_json(const Json& j) {
    const double steps = require_number(j, "steps");
    if (!(steps >= 1.0) || steps != std::floor(steps)) throw ConfigError("steps", "must be a positive integer");
    DtConfig config{require_number(j, "nu0"), require_number(j, "omega"), kernel_from_json(require(j, "kernel")),
                    static_cast<std::uint64_t>(steps), require_seed(j, "seed")};
    config.validate();
    return config;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

CsvSimWriter::CsvSimWriter(const std::filesystem::path& events_path, const std::filesystem::path& observations_path) {
    events_ = std::fopen(events_path.c_str(), "w");
    observations_ = std::fopen(observations_path.c_str(), "w");
    if (!events_ || !observations_) {
        if (events_) std::fclose(events_);
        if (observations_) std::fclose(observations_);
        throw std::runtime_error("cannot open output files in " + events_path.parent_path().string());
    }
    std::fputs("t,m\n", events_);
    std::fputs("t,lambda\n", observations_);
}

CsvSimWriter::~CsvSimWriter() {
    if (events_) std::fclose(events_);
    if (observations_) std::fclose(observations_);
}

void CsvSimWriter::on_event(const EventRecord& event, double) {
    std::fprintf(events_, "%s,%lld\n", format_double(event.t).c_str(), static_cast<long long>(event.m));
}

void CsvSimWriter::on_observation(double t, double lambda) {
    std::fprintf(observations_, "%s,%s\n", format_double(t).c_str(), format_double(lambda).c_str());
}

void CsvSimWriter::close() {
    const bool failed = std::ferror(events_) || std::ferror(observations_);
    const int a = std::fclose(events_);
    const int b = std::fclose(observations_);
    events_ = observations_ = nullptr;
    if (failed || a != 0 || b != 0) throw std::runtime_error("failed writing simulation CSV output");
}

namespace {

template <typename RowFn>
void read_csv(const std::filesystem::path& path, std::string_view header, RowFn&& row) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != header)
        throw std::runtime_error(path.string() + ": expected header '" + std::string(header) + "'");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(trim(line), ',');
        if (fields.size() != 2) throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected 2 fields");
        try {
            row(fields[0], fields[1]);
        } catch (const ConfigError&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed number");
        }
    }
}

}  // namespace

std::vector<double> read_observation_csv(const std::filesystem::path& path) {
    std::vector<double> lambdas;
    read_csv(path, "t,lambda", [&](std::string_view, std::string_view lam) {
        const double value = parse_number(lam, "lambda");
        if (!(value > 0.0)) throw ConfigError("lambda", "must be > 0");
        lambdas.push_back(value);
    });
    if (lambdas.empty()) throw std::runtime_error(path.string() + ": no observations");
    return lambdas;
}

std::vector<EventRecord> read_event_csv(const std::filesystem::path& path) {
    std::vector<EventRecord> events;
    read_csv(path, "t,m", [&](std::string_view t, std::string_view m) {
        const double mark = parse_number(m, "m");
        events.push_back({parse_number(t, "t"), static_cast<std::int64_t>(mark)});
    });
    return events;
}

}  // namespace senbd
