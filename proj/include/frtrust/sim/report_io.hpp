#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "frtrust/io/csv.hpp"
#include "frtrust/sim/config_io.hpp"
#include "frtrust/sim/scenario.hpp"

#ifndef FRTRUST_VERSION
#define FRTRUST_VERSION "0.0.0"
#endif

namespace frtrust::sim {

namespace detail {

inline std::string opt_num(const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); }

inline const char* verdict_name(trust::Verdict v) { return v == trust::Verdict::Malicious ? "malicious" : "trusted"; }

} // namespace detail

// One row per replica.
inline io::CsvTable metrics_table(const std::vector<MetricsReport>& reports) {
    io::CsvTable t({"replica", "seed", "nodes", "rms", "rms_used", "rms_excluded", "unrated", "flagged", "precision",
                    "recall", "baseline_precision", "baseline_recall", "queries", "messages"});
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        t.add_row({std::to_string(i), std::to_string(r.seed), std::to_string(r.nodes.size()),
                   r.rms ? io::format_double(r.rms->value) : "", r.rms ? std::to_string(r.rms->used) : "",
                   r.rms ? std::to_string(r.rms->excluded) : "", std::to_string(r.unrated), std::to_string(r.flagged),
                   detail::opt_num(r.detection.precision), detail::opt_num(r.detection.recall),
                   detail::opt_num(r.baseline_detection.precision), detail::opt_num(r.baseline_detection.recall),
                   std::to_string(r.queries), std::to_string(r.messages)});
    }
    return t;
}

// Final trust record per node.
inline io::CsvTable trust_table(const std::vector<MetricsReport>& reports) {
    io::CsvTable t({"replica", "node", "malicious", "ground_truth", "known", "crisp", "label", "verdict", "baseline"});
    for (std::size_t i = 0; i < reports.size(); ++i) {
        for (const auto& n : reports[i].nodes) {
            t.add_row({std::to_string(i), std::to_string(n.node), n.malicious ? "1" : "0", detail::opt_num(n.ground_truth),
                       n.known ? "1" : "0", io::format_double(n.crisp), std::string(1, fuzzy::to_char(n.label)),
                       detail::verdict_name(n.verdict), detail::opt_num(n.baseline)});
        }
    }
    return t;
}

// Per-round crisp trust of every node.
inline io::CsvTable snapshot_table(const std::vector<MetricsReport>& reports) {
    io::CsvTable t({"replica", "round", "node", "crisp", "known"});
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        for (std::size_t round = 0; round < r.snapshots.size(); ++round) {
            for (std::size_t n = 0; n < r.snapshots[round].size(); ++n) {
                t.add_row({std::to_string(i), std::to_string(round), std::to_string(n),
                           io::format_double(r.snapshots[round][n]), r.snapshot_known[round][n] ? "1" : "0"});
            }
        }
    }
    return t;
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Written last, after every artifact it lists.
inline void write_manifest(const std::filesystem::path& dir, const std::string& command, nlohmann::json config,
                           std::uint64_t seed, const std::vector<std::filesystem::path>& artifacts) {
    nlohmann::json paths = nlohmann::json::array();
    for (const auto& p : artifacts) paths.push_back(p.filename().string());
    const nlohmann::json m{{"tool", "frtrust"},
                           {"version", FRTRUST_VERSION},
                           {"command", command},
                           {"seed", seed},
                           {"timestamp", utc_timestamp()},
                           {"config", std::move(config)},
                           {"artifacts", paths}};
    io::write_atomic(dir / "manifest.json", m.dump(2) + "\n");
}

} // namespace frtrust::sim
