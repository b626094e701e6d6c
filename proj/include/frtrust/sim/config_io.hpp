#pragma once

#include <string>

#include <json.hpp>

#include "frtrust/error.hpp"
#include "frtrust/fuzzy/config_io.hpp"
#include "frtrust/sim/scenario.hpp"

namespace frtrust::sim {

// Scenario document; every key is optional and defaults to ScenarioConfig{}.
//   n_nodes, malicious_fraction, greedy_alpha, rounds, power_node_count, seed,
//   theta, window, honest {mean, spread}, malicious {mean, spread},
//   query_model "coordinator" | "dht", chord_bits, engine {...},
//   feedback [{rater, ratee, value, round}]

namespace detail {

template <typename T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

inline void read_profile(const nlohmann::json& j, const char* key, BehaviorProfile& p) {
    if (!j.contains(key)) return;
    const auto& o = j.at(key);
    if (!o.is_object()) throw ConfigError(std::string(key) + " must be an object");
    read_opt(o, "mean", p.mean);
    read_opt(o, "spread", p.spread);
    if (o.contains("honesty")) {
        const auto h = o.at("honesty").get<std::string>();
        if (h == "honest") {
            p.honesty = RatingHonesty::Honest;
        } else if (h == "liar") {
            p.honesty = RatingHonesty::Liar;
        } else {
            throw ConfigError("honesty must be \"honest\" or \"liar\"");
        }
    }
}

inline void require_non_negative_integer(const nlohmann::json& j, const char* key) {
    if (j.contains(key) && !(j.at(key).is_number_unsigned() || (j.at(key).is_number_integer() && j.at(key).get<long long>() >= 0))) {
        throw ConfigError(std::string(key) + " must be a non-negative integer");
    }
}

} // namespace detail

inline ScenarioConfig scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("scenario config must be a JSON object");
    ScenarioConfig c;
    try {
        for (const char* key : {"n_nodes", "rounds", "power_node_count", "seed", "chord_bits", "window"}) {
            detail::require_non_negative_integer(j, key);
        }
        detail::read_opt(j, "n_nodes", c.n_nodes);
        detail::read_opt(j, "malicious_fraction", c.malicious_fraction);
        detail::read_opt(j, "greedy_alpha", c.greedy_alpha);
        detail::read_opt(j, "rounds", c.rounds);
        detail::read_opt(j, "power_node_count", c.power_node_count);
        detail::read_opt(j, "seed", c.seed);
        detail::read_opt(j, "theta", c.theta);
        if (j.contains("window") && !j.at("window").is_null()) c.window = j.at("window").get<trust::Round>();
        detail::read_profile(j, "honest", c.honest);
        detail::read_profile(j, "malicious", c.malicious);
        if (j.contains("query_model")) {
            const auto m = j.at("query_model").get<std::string>();
            if (m == "coordinator") {
                c.query_model = chord::QueryModel::Coordinator;
            } else if (m == "dht") {
                c.query_model = chord::QueryModel::Dht;
            } else {
                throw ConfigError("query_model must be \"coordinator\" or \"dht\"");
            }
        }
        detail::read_opt(j, "chord_bits", c.chord_bits);
        if (j.contains("engine")) c.engine = fuzzy::engine_from_json(j.at("engine"));
        if (j.contains("feedback")) {
            for (const auto& f : j.at("feedback")) {
                c.scripted.push_back({f.at("rater").get<NodeId>(), f.at("ratee").get<NodeId>(),
                                      f.at("value").get<double>(), f.value("round", trust::Round{0})});
            }
            if (c.scripted.empty()) throw ConfigError("feedback list is empty");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scenario config: ") + e.what());
    }
    c.validate();
    return c;
}

inline nlohmann::json to_json(const ScenarioConfig& c) {
    auto profile = [](const BehaviorProfile& p) {
        return nlohmann::json{{"mean", p.mean},
                              {"spread", p.spread},
                              {"honesty", p.honesty == RatingHonesty::Liar ? "liar" : "honest"}};
    };
    nlohmann::json j{{"n_nodes", c.n_nodes},
                     {"malicious_fraction", c.malicious_fraction},
                     {"greedy_alpha", c.greedy_alpha},
                     {"rounds", c.rounds},
                     {"power_node_count", c.power_nodes()},
                     {"seed", c.seed},
                     {"theta", c.theta},
                     {"window", c.window ? nlohmann::json(*c.window) : nlohmann::json(nullptr)},
                     {"honest", profile(c.honest)},
                     {"malicious", profile(c.malicious)},
                     {"query_model", c.query_model == chord::QueryModel::Dht ? "dht" : "coordinator"},
                     {"chord_bits", c.chord_bits},
                     {"engine", fuzzy::to_json(c.engine)}};
    if (!c.scripted.empty()) {
        auto& fb = j["feedback"] = nlohmann::json::array();
        for (const auto& s : c.scripted) {
            fb.push_back({{"rater", s.rater}, {"ratee", s.ratee}, {"value", s.value}, {"round", s.round}});
        }
    }
    return j;
}

inline ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scenario config '" + path + "': " + e.what());
    }
    return scenario_from_json(j);
}

} // namespace frtrust::sim
