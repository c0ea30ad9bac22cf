// experiments.hpp: run configuration, artifact writing and the figure subcommands
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "autopump/ed_analysis.hpp"
#include "autopump/model.hpp"

namespace autopump::experiments {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// Every key the config understands, with its default. Keys absent here are rejected.
const json& default_config();

struct Range {
    double min = 0.0, max = 0.0, step = 0.0;
};

struct RunConfig {
    ModelParams model;
    TransportOptions transport_options;
    Range transport_omega;
    std::vector<double> phase_S;
    Range phase_omega;
    double corr_dt = 0.0, corr_t_max = 0.0;
    double mf_dt = 0.0, mf_periods = 0.0, mf_upper_fraction = 1.0;
    int mf_stride = 1;
    std::optional<std::vector<double>> mf_initial_spin;
    int chern_n_k = 64, chern_n_phi = 64, zak_n_k = 64;
    std::vector<double> disorder_epsilon0;
    int disorder_R = 50;
    std::uint64_t base_seed = 0;
    int workers = 1;
    std::string output_dir;

    json document;  // merged, canonical form
};

// Merge onto the defaults and validate; ConfigError names the offending key path.
RunConfig parse_config(const json& user);
// Accepts a config document or a manifest written by a previous run.
json read_config_file(const std::filesystem::path& path);
// "a.b=value"; value is parsed as JSON and taken as a string when that fails.
void apply_override(json& doc, const std::string& assignment);

// Inclusive grid min, min+step, ... up to max (with 1e-9 slack).
std::vector<double> grid(const Range& r);

// Shortest round-trip decimal.
std::string format_number(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const;
};

// Write to a sibling temporary and rename into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct TaskStatus {
    std::string name;
    std::string status;  // "ok" or a diagnostic
};

struct CommandResult {
    std::vector<std::string> artifacts;
    std::vector<TaskStatus> tasks;
    std::vector<std::uint64_t> seeds;
    bool numerical_failure = false;  // fatal for the command: exit code 3
    std::string failure_message;
};

CommandResult cmd_spectrum(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_transport(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_phase(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_correlations(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_meanfield(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_chern(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_disorder(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_phgap(const RunConfig& cfg, const std::filesystem::path& out);

json make_manifest(const std::string& command, const RunConfig& cfg, const CommandResult& result,
                   double duration_s);

}  // namespace autopump::experiments
