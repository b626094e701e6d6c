// frtrust command-line front end.
//
//   frtrust fis-eval P1 P2 P3 [--config engine.json]
//   frtrust run --config scenario.json --out DIR [--seed S] [--replicas N] [--threads T]
//   frtrust experiment NAME [options]      NAME: table2 table3 rms detect chord surface
//
// Exit codes: 0 success, 1 usage error, 2 config or domain error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frtrust/error.hpp"
#include "frtrust/fuzzy/config_io.hpp"
#include "frtrust/fuzzy/engine.hpp"
#include "frtrust/io/csv.hpp"
#include "frtrust/sim/config_io.hpp"
#include "frtrust/sim/experiments.hpp"
#include "frtrust/sim/report_io.hpp"

namespace fs = std::filesystem;
using namespace frtrust;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;

const std::vector<std::string> kExperiments{"table2", "table3", "rms", "detect", "chord", "surface"};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string joined(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
    return s;
}

std::size_t default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Engine from --config. The file may be an engine document or a scenario
// document with an "engine" member.
fuzzy::Engine engine_from_file(const std::string& path) {
    if (path.empty()) return fuzzy::Engine{};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("engine config '" + path + "': " + e.what());
    }
    if (j.is_object() && j.contains("engine")) return fuzzy::engine_from_json(j.at("engine"));
    return fuzzy::engine_from_json(j);
}

sim::ScenarioConfig scenario_from_file(const std::string& path) {
    return path.empty() ? sim::ScenarioConfig{} : sim::load_scenario(path);
}

// CSV either to stdout or to DIR/<name>.csv followed by a manifest.
void emit(const io::CsvTable& table, const std::string& out_dir, const std::string& name, const std::string& command,
          const nlohmann::json& config, std::uint64_t seed) {
    if (out_dir.empty()) {
        std::cout << table.str();
        return;
    }
    fs::create_directories(out_dir);
    const fs::path path = fs::path(out_dir) / (name + ".csv");
    io::write_atomic(path, table.str());
    sim::write_manifest(out_dir, command, config, seed, {path});
    std::cerr << "wrote " << path.string() << "\n";
}

std::pair<std::size_t, double> parse_fixed(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--fixed expects pN=value, e.g. p3=0.5");
    const std::string slot = s.substr(0, eq);
    std::size_t idx = 3;
    if (slot == "p1") idx = 0;
    if (slot == "p2") idx = 1;
    if (slot == "p3") idx = 2;
    if (idx == 3) throw UsageError("--fixed slot must be p1, p2 or p3");
    const double v = io::parse_double(s.substr(eq + 1));
    frtrust::detail::require_unit(v, "fixed input");
    return {idx, v};
}

struct ExperimentOptions {
    std::string name;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::size_t replicas = 10;
    std::size_t threads = 0;
    std::vector<std::size_t> sizes{16, 64, 256};
    unsigned bits = chord::kDefaultBits;
    std::string fixed = "p3=0.5";
    double step = 0.05;
    std::size_t points = 101;
    std::vector<double> alphas{0.25, 0.5, 0.75};
    std::vector<double> fractions{0.0, 0.1, 0.2, 0.3, 0.4};
    double fraction = 0.3;
};

int run_experiment(const ExperimentOptions& o, const std::string& command) {
    if (std::find(kExperiments.begin(), kExperiments.end(), o.name) == kExperiments.end()) {
        throw UsageError("unknown experiment '" + o.name + "'; valid names: " + joined(kExperiments));
    }
    const std::size_t threads = o.threads ? o.threads : default_threads();

    if (o.name == "table2" || o.name == "table3" || o.name == "surface") {
        const auto engine = engine_from_file(o.config);
        const auto cfg = fuzzy::to_json(engine);
        if (o.name == "table2") {
            emit(sim::to_csv(sim::exp_table2(engine)), o.out, o.name, command, cfg, 0);
        } else if (o.name == "table3") {
            if (o.points < 2) throw UsageError("--points must be at least 2");
            emit(sim::to_csv(sim::exp_table3(engine, sim::kTable3Y, sim::unit_grid(o.points))), o.out, o.name, command,
                 cfg, 0);
        } else {
            const auto [slot, value] = parse_fixed(o.fixed);
            emit(sim::to_csv(sim::exp_surface(engine, slot, value, o.step)), o.out, o.name, command, cfg, 0);
        }
        return 0;
    }

    if (o.name == "chord") {
        const std::uint64_t seed = o.seed.value_or(1);
        if (o.sizes.empty()) throw UsageError("--n needs at least one ring size");
        emit(sim::to_csv(sim::exp_chord(o.sizes, o.bits, seed)), o.out, o.name, command,
             {{"sizes", o.sizes}, {"bits", o.bits}}, seed);
        return 0;
    }

    auto base = scenario_from_file(o.config);
    if (o.seed) base.seed = *o.seed;
    if (o.replicas == 0) throw UsageError("--replicas must be at least 1");
    if (o.name == "rms") {
        emit(sim::to_csv(sim::exp_rms_sweep(o.alphas, o.fractions, base, o.replicas, threads)), o.out, o.name, command,
             {{"scenario", sim::to_json(base)}, {"alphas", o.alphas}, {"fractions", o.fractions},
              {"replicas", o.replicas}},
             base.seed);
    } else {
        if (o.config.empty()) base.malicious_fraction = o.fraction;
        base.keep_snapshots = false;
        emit(sim::to_csv(sim::exp_detection(base, o.replicas, threads)), o.out, o.name, command,
             {{"scenario", sim::to_json(base)}, {"replicas", o.replicas}}, base.seed);
    }
    return 0;
}

struct RunOptions {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::size_t replicas = 1;
    std::size_t threads = 0;
};

int run_scenario_command(const RunOptions& o, const std::string& command) {
    auto cfg = sim::load_scenario(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.replicas == 0) throw UsageError("--replicas must be at least 1");
    const auto reports = sim::run_replicas(cfg, o.replicas, o.threads ? o.threads : default_threads());

    fs::create_directories(o.out);
    const fs::path dir(o.out);
    std::vector<fs::path> artifacts{dir / "metrics.csv", dir / "trust.csv"};
    io::write_atomic(artifacts[0], sim::metrics_table(reports).str());
    io::write_atomic(artifacts[1], sim::trust_table(reports).str());
    if (cfg.keep_snapshots) {
        artifacts.push_back(dir / "snapshots.csv");
        io::write_atomic(artifacts.back(), sim::snapshot_table(reports).str());
    }
    sim::write_manifest(dir, command, {{"scenario", sim::to_json(cfg)}, {"replicas", o.replicas}}, cfg.seed,
                        artifacts);

    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::printf("replica=%zu seed=%llu rms=%s flagged=%zu messages=%llu\n", i,
                    static_cast<unsigned long long>(r.seed), r.rms ? io::format_double(r.rms->value).c_str() : "-",
                    static_cast<std::size_t>(r.flagged), static_cast<unsigned long long>(r.messages));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy reputation trust model: inference, scenarios and experiments", "frtrust"};
    app.set_version_flag("--version", FRTRUST_VERSION);
    app.require_subcommand(1);

    std::vector<double> inputs;
    std::string engine_config;
    auto* fis = app.add_subcommand("fis-eval", "Evaluate the fuzzy system on three scores");
    fis->add_option("scores", inputs, "P1 P2 P3 in [0,1]")->required()->expected(3);
    fis->add_option("--config", engine_config, "engine JSON (or scenario JSON with an engine member)");

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write CSV artifacts");
    run_cmd->add_option("--config", run.config, "scenario JSON")->required();
    run_cmd->add_option("--out", run.out, "output directory")->required();
    run_cmd->add_option("--seed", run.seed, "override the config seed");
    run_cmd->add_option("--replicas", run.replicas, "independent replicas; replica r uses seed + r");
    run_cmd->add_option("--threads", run.threads, "worker threads (default: hardware)");

    ExperimentOptions ex;
    auto* exp = app.add_subcommand("experiment", "Run a named experiment: " + joined(kExperiments));
    exp->add_option("name", ex.name, "experiment name")->required();
    exp->add_option("--config", ex.config, "engine or scenario JSON");
    exp->add_option("--out", ex.out, "output directory (default: CSV on stdout)");
    exp->add_option("--seed", ex.seed, "base seed");
    exp->add_option("--replicas", ex.replicas, "replicas per cell (rms, detect)");
    exp->add_option("--threads", ex.threads, "worker threads (default: hardware)");
    exp->add_option("--n", ex.sizes, "ring sizes (chord)")->delimiter(',');
    exp->add_option("--bits", ex.bits, "identifier bits (chord)");
    exp->add_option("--fixed", ex.fixed, "held input for surface, e.g. p3=0.5");
    exp->add_option("--step", ex.step, "grid step for surface");
    exp->add_option("--points", ex.points, "grid points for table3");
    exp->add_option("--alphas", ex.alphas, "greedy factors (rms)")->delimiter(',');
    exp->add_option("--fractions", ex.fractions, "malicious fractions (rms)")->delimiter(',');
    exp->add_option("--fraction", ex.fraction, "malicious fraction when no config is given (detect)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const std::string command = command_line(argc, argv);
    try {
        if (*fis) {
            const auto engine = engine_from_file(engine_config);
            const auto t = engine.evaluate(inputs[0], inputs[1], inputs[2]);
            std::cout << "crisp=" << io::format_double(t.crisp) << " label=" << fuzzy::to_char(t.label) << "\n";
            return 0;
        }
        if (*run_cmd) return run_scenario_command(run, command);
        return run_experiment(ex, command);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const frtrust::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
