#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frtrust/error.hpp"
#include "frtrust/types.hpp"

namespace frtrust::semantic {

using frtrust::NodeId;
using Concept = std::string;
using ConceptSet = std::set<Concept>;

// Concept forest; each concept has at most one parent.
class Taxonomy {
public:
    Taxonomy() = default;

    // Parents may be declared before or after their children; validate() runs once at the end.
    static Taxonomy from_edges(const std::vector<std::pair<Concept, std::optional<Concept>>>& edges) {
        Taxonomy t;
        for (const auto& [c, p] : edges) {
            if (!t.parent_.emplace(c, p).second) throw ConfigError("duplicate concept '" + c + "'");
        }
        t.validate();
        return t;
    }

    bool contains(const Concept& c) const { return parent_.contains(c); }
    std::size_t size() const noexcept { return parent_.size(); }

    std::optional<Concept> parent(const Concept& c) const {
        auto it = parent_.find(c);
        if (it == parent_.end()) throw ConfigError("unknown concept '" + c + "'");
        return it->second;
    }

    std::vector<Concept> concepts() const {
        std::vector<Concept> out;
        out.reserve(parent_.size());
        for (const auto& [c, _] : parent_) out.push_back(c);
        return out;
    }

private:
    void validate() const {
        for (const auto& [c, p] : parent_) {
            if (p && !parent_.contains(*p)) throw ConfigError("concept '" + c + "' has unknown parent '" + *p + "'");
        }
        // A walk longer than the concept count must revisit a concept.
        for (const auto& [c, _] : parent_) {
            std::optional<Concept> cur = c;
            for (std::size_t steps = 0; cur; ++steps) {
                if (steps > parent_.size()) throw ConfigError("taxonomy has a cycle through '" + c + "'");
                cur = parent_.at(*cur);
            }
        }
    }

    std::map<Concept, std::optional<Concept>> parent_;
};

// Adds every ancestor of every member.
inline ConceptSet closure(const ConceptSet& set, const Taxonomy& taxonomy) {
    ConceptSet out;
    for (const auto& c : set) {
        if (!taxonomy.contains(c)) throw ConfigError("unknown concept '" + c + "'");
        std::optional<Concept> cur = c;
        while (cur && out.insert(*cur).second) cur = taxonomy.parent(*cur);
    }
    return out;
}

struct SimilarityParams {
    double alpha = 0.5;
    double beta = 0.5;

    void validate() const {
        if (!(alpha >= 0.0) || !(beta >= 0.0)) throw DomainError("similarity weights must be non-negative");
    }

    SimilarityParams swapped() const noexcept { return {beta, alpha}; }
};

// Tversky ratio |A∩B| / (|A∩B| + alpha|A−B| + beta|B−A|); two empty sets are identical.
inline double similarity(const ConceptSet& a, const ConceptSet& b, const SimilarityParams& p = {}) {
    p.validate();
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    const double inter = static_cast<double>(common);
    const double only_a = static_cast<double>(a.size() - common);
    const double only_b = static_cast<double>(b.size() - common);
    const double denom = inter + p.alpha * only_a + p.beta * only_b;
    if (denom == 0.0) return a.empty() && b.empty() ? 1.0 : 0.0;
    return inter / denom;
}

struct VirtualOrganization {
    std::size_t id = 0;
    std::vector<NodeId> members; // join order; members.front() is the representative
    NodeId coordinator = 0;
    double threshold = 0.5;

    bool contains(NodeId n) const { return std::find(members.begin(), members.end(), n) != members.end(); }
};

// Minimum member id.
inline NodeId elect_coordinator(const VirtualOrganization& vo) {
    if (vo.members.empty()) throw ConfigError("cannot elect a coordinator for an empty VO");
    return *std::min_element(vo.members.begin(), vo.members.end());
}

struct NodeProfile {
    NodeId id;
    ConceptSet concepts;
};

// Single greedy pass in node-id order: join the first VO whose representative
// is at least tau-similar, otherwise found a new one.
inline std::vector<VirtualOrganization> cluster(std::vector<NodeProfile> nodes, double tau,
                                                const SimilarityParams& p = {}) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("clustering threshold must lie in [0,1]");
    p.validate();
    std::stable_sort(nodes.begin(), nodes.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i].id == nodes[i - 1].id) throw ConfigError("duplicate node id " + std::to_string(nodes[i].id));
    }

    std::vector<VirtualOrganization> vos;
    std::vector<const ConceptSet*> reps;
    for (const auto& n : nodes) {
        std::size_t k = 0;
        while (k < vos.size() && similarity(*reps[k], n.concepts, p) < tau) ++k;
        if (k == vos.size()) {
            vos.push_back({vos.size(), {}, n.id, tau});
            reps.push_back(&n.concepts);
        }
        vos[k].members.push_back(n.id);
    }
    for (auto& vo : vos) vo.coordinator = elect_coordinator(vo);
    return vos;
}

// Document: {"concepts": [{"id": "...", "parent": "..." | null}], "nodes": [{"id": n, "concepts": ["..."]}]}
struct OverlayDocument {
    Taxonomy taxonomy;
    std::vector<NodeProfile> nodes;
};

inline OverlayDocument overlay_from_json(const nlohmann::json& j, bool apply_closure = true) {
    try {
        std::vector<std::pair<Concept, std::optional<Concept>>> edges;
        for (const auto& c : j.at("concepts")) {
            std::optional<Concept> parent;
            if (c.contains("parent") && !c.at("parent").is_null()) parent = c.at("parent").get<std::string>();
            edges.emplace_back(c.at("id").get<std::string>(), std::move(parent));
        }
        OverlayDocument doc{Taxonomy::from_edges(edges), {}};
        for (const auto& n : j.at("nodes")) {
            ConceptSet set;
            for (const auto& c : n.at("concepts")) {
                auto name = c.get<std::string>();
                if (!doc.taxonomy.contains(name)) throw ConfigError("node uses unknown concept '" + name + "'");
                set.insert(std::move(name));
            }
            doc.nodes.push_back({n.at("id").get<NodeId>(), apply_closure ? closure(set, doc.taxonomy) : set});
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("overlay document: ") + e.what());
    }
}

inline OverlayDocument load_overlay(const std::string& path, bool apply_closure = true) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open overlay document '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("overlay document '" + path + "': " + e.what());
    }
    return overlay_from_json(j, apply_closure);
}

} // namespace frtrust::semantic
