#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "frtrust/error.hpp"
#include "frtrust/fuzzy/engine.hpp"
#include "frtrust/trust/ledger.hpp"
#include "frtrust/types.hpp"

namespace frtrust::trust {

inline constexpr double kNeutralTrust = 0.5;
inline constexpr double kDefaultTheta = 0.35;

// (min, median, max) of the scores; the median of an even count is the mean
// of the two central order statistics.
inline std::array<double, 3> reduce_scores(std::span<const double> scores) {
    if (scores.empty()) throw DomainError("cannot reduce an empty score list");
    std::vector<double> v(scores.begin(), scores.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    const double median = (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    return {v.front(), median, v.back()};
}

struct TrustRecord {
    NodeId node = 0;
    double crisp = kNeutralTrust;
    fuzzy::Label label = fuzzy::Label::Medium;
    Round round = 0;

    friend bool operator==(const TrustRecord&, const TrustRecord&) = default;
};

inline TrustRecord compute_trust(const FeedbackLedger& ledger, NodeId node, const fuzzy::Engine& engine,
                                 std::optional<Round> window = std::nullopt) {
    const auto scores = ledger.scores_for(node, window);
    if (scores.empty()) throw UnknownNodeError("no feedback for node " + std::to_string(node));
    const auto t = engine.evaluate(reduce_scores(scores));
    return {node, t.crisp, t.label, ledger.latest_round().value_or(0)};
}

struct ThresholdPolicy {
    double theta = kDefaultTheta;

    explicit ThresholdPolicy(double t = kDefaultTheta) : theta(t) { detail::require_unit(t, "threshold"); }
};

enum class Verdict { Trusted, Malicious };

inline Verdict classify(const TrustRecord& record, const ThresholdPolicy& policy) noexcept {
    return record.crisp < policy.theta ? Verdict::Malicious : Verdict::Trusted;
}

inline Verdict classify(double crisp, const ThresholdPolicy& policy) noexcept {
    return crisp < policy.theta ? Verdict::Malicious : Verdict::Trusted;
}

struct WeightedScore {
    double score;           // s_i, the rater's local score for the ratee
    double rater_reputation; // R_i
};

// Weighted-sum global reputation, left unnormalized; it can exceed 1.
inline double weighted_global_reputation(std::span<const WeightedScore> local) {
    if (local.empty()) throw DomainError("weighted reputation needs at least one score");
    double sum = 0.0;
    for (const auto& w : local) {
        detail::require_unit(w.score, "local score");
        detail::require_unit(w.rater_reputation, "rater reputation");
        sum += w.score * w.rater_reputation;
    }
    return sum;
}

// Same sum divided by the total rater reputation; 0 when every weight is 0.
inline double normalized_global_reputation(std::span<const WeightedScore> local) {
    const double sum = weighted_global_reputation(local);
    double weight = 0.0;
    for (const auto& w : local) weight += w.rater_reputation;
    return weight > 0.0 ? sum / weight : 0.0;
}

inline double transitive_trust(double x, double y) {
    detail::require_unit(x, "trust x");
    detail::require_unit(y, "trust y");
    return x * y;
}

inline double path_trust(std::span<const double> edges) {
    double z = 1.0;
    for (double e : edges) z = transitive_trust(z, e);
    return z;
}

inline constexpr std::size_t kDefaultMaxPathLength = 3;

// Directed web of trust: edge (a, b) = how much a trusts b.
class TrustGraph {
public:
    void set_edge(NodeId from, NodeId to, double trust) {
        detail::require_unit(trust, "edge trust");
        if (from == to) throw DomainError("self-trust edges are not allowed");
        adj_[from][to] = trust;
    }

    std::optional<double> edge(NodeId from, NodeId to) const {
        auto it = adj_.find(from);
        if (it == adj_.end()) return std::nullopt;
        auto jt = it->second.find(to);
        if (jt == it->second.end()) return std::nullopt;
        return jt->second;
    }

    // Best product over simple paths of at most max_len edges; nullopt when
    // no such path exists.
    std::optional<double> inferred_trust(NodeId from, NodeId to, std::size_t max_len = kDefaultMaxPathLength) const {
        std::optional<double> best;
        std::vector<NodeId> path{from};
        search(from, to, 1.0, max_len, path, best);
        return best;
    }

private:
    void search(NodeId cur, NodeId target, double acc, std::size_t budget, std::vector<NodeId>& path,
                std::optional<double>& best) const {
        if (budget == 0) return;
        auto it = adj_.find(cur);
        if (it == adj_.end()) return;
        for (const auto& [next, w] : it->second) {
            if (std::find(path.begin(), path.end(), next) != path.end()) continue;
            const double z = transitive_trust(acc, w);
            if (next == target) {
                if (!best || z > *best) best = z;
                continue;
            }
            path.push_back(next);
            search(next, target, z, budget - 1, path, best);
            path.pop_back();
        }
    }

    std::map<NodeId, std::map<NodeId, double>> adj_;
};

} // namespace frtrust::trust
