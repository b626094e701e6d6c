#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frtrust/error.hpp"
#include "frtrust/fuzzy/engine.hpp"

namespace frtrust::fuzzy {

// Engine document:
//   {"partition": {"low": [a,b,c,d], "medium": [...], "high": [...]} | "standard" | "triangular",
//    "rules": [["L","M","H","M"], ...],
//    "resolution": 1000}
// Every key is optional. Rules not listed are filled by median completion;
// an absent "rules" key means the ten expert rules plus completion.

inline MembershipFunction membership_from_json(const nlohmann::json& j, const char* name) {
    if (!j.is_array() || j.size() != 4) {
        throw ConfigError(std::string("partition.") + name + " must be an array of four numbers");
    }
    try {
        return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("partition.") + name + ": " + e.what());
    }
}

inline FuzzyPartition partition_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "standard") return FuzzyPartition::standard();
        if (name == "triangular") return FuzzyPartition::triangular();
        throw ConfigError("unknown partition preset '" + name + "'");
    }
    if (!j.is_object()) throw ConfigError("partition must be an object or a preset name");
    for (const char* key : {"low", "medium", "high"}) {
        if (!j.contains(key)) throw ConfigError(std::string("partition is missing '") + key + "'");
    }
    return {membership_from_json(j.at("low"), "low"), membership_from_json(j.at("medium"), "medium"),
            membership_from_json(j.at("high"), "high")};
}

inline std::vector<FuzzyRule> rules_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ConfigError("rules must be an array");
    std::vector<FuzzyRule> out;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 4) {
            throw ConfigError("each rule must be an array of four label strings");
        }
        if (!std::all_of(row.begin(), row.end(), [](const auto& v) { return v.is_string(); })) {
            throw ConfigError("rule labels must be strings");
        }
        FuzzyRule r{};
        for (std::size_t k = 0; k < 3; ++k) r.antecedent[k] = parse_label(row[k].get<std::string>());
        r.consequent = parse_label(row[3].get<std::string>());
        out.push_back(r);
    }
    return out;
}

inline Engine engine_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("engine config must be a JSON object");
    auto partition = j.contains("partition") ? partition_from_json(j.at("partition")) : FuzzyPartition::standard();
    auto rules = j.contains("rules") ? RuleBase::completed(rules_from_json(j.at("rules"))) : RuleBase::standard();
    std::size_t resolution = kDefaultResolution;
    if (j.contains("resolution")) {
        const auto& r = j.at("resolution");
        if (!r.is_number_integer() || r.get<long long>() < static_cast<long long>(kMinResolution)) {
            throw ConfigError("resolution must be an integer >= 100");
        }
        resolution = r.get<std::size_t>();
    }
    return Engine(std::move(partition), std::move(rules), resolution);
}

inline nlohmann::json to_json(const Engine& e) {
    auto mf = [](const MembershipFunction& m) {
        const auto b = m.breakpoints();
        return nlohmann::json::array({b[0], b[1], b[2], b[3]});
    };
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : e.rules().rules()) {
        rules.push_back({std::string(1, to_char(r.antecedent[0])), std::string(1, to_char(r.antecedent[1])),
                         std::string(1, to_char(r.antecedent[2])), std::string(1, to_char(r.consequent))});
    }
    return {{"partition",
             {{"low", mf(e.partition().low())}, {"medium", mf(e.partition().medium())}, {"high", mf(e.partition().high())}}},
            {"rules", rules},
            {"resolution", e.resolution()}};
}

inline Engine load_engine(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open engine config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("engine config '" + path + "': " + e.what());
    }
    return engine_from_json(j);
}

} // namespace frtrust::fuzzy
