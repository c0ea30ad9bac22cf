// autopump: batch driver for the figure experiments
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autopump/errors.hpp"
#include "autopump/experiments.hpp"

namespace fs = std::filesystem;
namespace ex = autopump::experiments;

namespace {

using Command = std::function<ex::CommandResult(const ex::RunConfig&, const fs::path&)>;

const std::map<std::string, std::pair<Command, std::string>>& commands() {
    static const std::map<std::string, std::pair<Command, std::string>> table{
        {"spectrum", {ex::cmd_spectrum, "full spectrum of the coupled Hamiltonian -> spectrum.csv"}},
        {"transport", {ex::cmd_transport, "transport per period over an omega scan -> transport.csv"}},
        {"phase", {ex::cmd_phase, "transport over S x omega -> phase.csv"}},
        {"correlations", {ex::cmd_correlations, "two-time spin correlations -> correlations.csv"}},
        {"meanfield", {ex::cmd_meanfield, "mean-field trajectory -> mf_trajectory.csv, mf_summary.json"}},
        {"chern", {ex::cmd_chern, "Chern number of the effective model -> chern.json"}},
        {"disorder", {ex::cmd_disorder, "disorder-averaged transport -> disorder.csv"}},
        {"phgap", {ex::cmd_phgap, "particle-hole gaps -> phgap.csv"}},
    };
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"autopump: autonomous Thouless pump experiments"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(ex::kVersion));

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int workers = 0;
    std::vector<std::string> overrides;

    for (const auto& [name, entry] : commands()) {
        auto* sub = app.add_subcommand(name, entry.second);
        sub->add_option("--config", config_path, "JSON config file or a previous manifest.json");
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("--seed", seed, "base seed (overrides disorder.base_seed)");
        sub->add_option("--workers", workers, "worker threads (overrides runtime.workers)")->check(CLI::PositiveNumber);
        sub->add_option("--set", overrides, "override a config field, e.g. --set model.omega=0.5");
    }
    app.add_subcommand("defaults", "print the default config with every recognised key");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 2;
    }

    const auto* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (name == "defaults") {
        std::cout << ex::default_config().dump(2) << "\n";
        return 0;
    }

    ex::RunConfig cfg;
    try {
        ex::json user = config_path.empty() ? ex::json::object() : ex::read_config_file(config_path);
        for (const auto& o : overrides) ex::apply_override(user, o);
        if (!out_dir.empty()) user["output_dir"] = out_dir;
        if (chosen->count("--seed")) user["disorder"]["base_seed"] = seed;
        if (chosen->count("--workers")) user["runtime"]["workers"] = workers;
        cfg = ex::parse_config(user);
    } catch (const autopump::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const fs::path out = cfg.output_dir;
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    std::cerr << "autopump " << name << " -> " << out.string() << "\n";
    try {
        fs::create_directories(out);
        const auto result = commands().at(name).first(cfg, out);
        ex::write_atomic(out / "manifest.json", ex::make_manifest(name, cfg, result, elapsed()).dump(2) + "\n");
        for (const auto& a : result.artifacts) std::cerr << "  wrote " << (out / a).string() << "\n";
        if (result.numerical_failure) {
            std::cerr << "numerical failure: " << result.failure_message << "\n";
            return 3;
        }
        return 0;
    } catch (const autopump::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const autopump::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        ex::CommandResult failed{{}, {{name, std::string("error: ") + e.what()}}, {}, true, e.what()};
        try {
            ex::write_atomic(out / "manifest.json", ex::make_manifest(name, cfg, failed, elapsed()).dump(2) + "\n");
        } catch (...) {
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
