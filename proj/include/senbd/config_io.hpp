#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "senbd/dt_process.hpp"
#include "senbd/hawkes.hpp"

namespace senbd {

using Json = nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Kernel flag grammar: comma-separated `n:tau` pairs ("0.5:1,0.499:3"), or
/// `powerlaw:gamma=G,n=N,K=K`. Throws ConfigError("kernel", ...).
ExponentialMixture parse_kernel_flag(std::string_view text);

/// Accepts a list of {"n", "tau"} objects or {"type": "powerlaw", "gamma", "n", "K"}.
/// A list accompanied by `source` (the powerlaw object) keeps its terms
/// verbatim and remembers the origin.
ExponentialMixture kernel_from_json(const Json& terms, const Json* source = nullptr);
/// Expanded {"n", "tau"} list.
Json kernel_to_json(const ExponentialMixture& kernel);
/// Powerlaw source object, or null for explicit kernels.
Json kernel_source_to_json(const ExponentialMixture& kernel);

Json sim_config_to_json(const SimConfig& config);
/// Validated on load; stationarity is left to the caller.
SimConfig sim_config_from_json(const Json& j);

Json dt_config_to_json(const DtConfig& config);
DtConfig dt_config_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Streams events as `t,m` and observations as `t,lambda`.
class CsvSimWriter : public SimSink {
public:
    CsvSimWriter(const std::filesystem::path& events_path, const std::filesystem::path& observations_path);
    ~CsvSimWriter() override;
    CsvSimWriter(const CsvSimWriter&) = delete;
    CsvSimWriter& operator=(const CsvSimWriter&) = delete;

    void on_event(const EventRecord& event, double rescaled_gap) override;
    void on_observation(double t, double lambda) override;
    /// Flushes and closes; throws if any write failed.
    void close();

private:
    std::FILE* events_ = nullptr;
    std::FILE* observations_ = nullptr;
};

/// lambda column of a `t,lambda` file. Throws std::runtime_error on a
/// missing, malformed or empty file.
std::vector<double> read_observation_csv(const std::filesystem::path& path);

/// Rows of a `t,m` file.
std::vector<EventRecord> read_event_csv(const std::filesystem::path& path);

}  // namespace senbd
