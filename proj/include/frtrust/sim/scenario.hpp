#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "frtrust/chord/ring.hpp"
#include "frtrust/error.hpp"
#include "frtrust/fuzzy/engine.hpp"
#include "frtrust/sim/metrics.hpp"
#include "frtrust/sim/random.hpp"
#include "frtrust/trust/agent.hpp"
#include "frtrust/trust/ledger.hpp"
#include "frtrust/types.hpp"

namespace frtrust::sim {

enum class RatingHonesty { Honest, Liar };

// Service quality is drawn from Normal(mean, spread) truncated to [0,1].
struct BehaviorProfile {
    double mean = 0.85;
    double spread = 0.1;
    RatingHonesty honesty = RatingHonesty::Honest;

    void validate() const {
        frtrust::detail::require_unit(mean, "profile mean");
        if (!(spread >= 0.0)) throw ConfigError("profile spread must be non-negative");
    }
};

struct ScenarioConfig {
    std::uint32_t n_nodes = 100;
    double malicious_fraction = 0.0;
    double greedy_alpha = 0.5;
    std::uint32_t rounds = 20;
    std::uint32_t power_node_count = 0; // 0 picks max(1, N/20)
    std::uint64_t seed = 1;
    double theta = trust::kDefaultTheta;
    std::optional<trust::Round> window;
    BehaviorProfile honest{0.85, 0.1, RatingHonesty::Honest};
    BehaviorProfile malicious{0.15, 0.1, RatingHonesty::Honest};
    chord::QueryModel query_model = chord::QueryModel::Coordinator;
    unsigned chord_bits = chord::kDefaultBits;
    fuzzy::Engine engine{};
    bool keep_snapshots = true;

    // Replayed instead of random rounds when non-empty.
    std::vector<trust::FeedbackScore> scripted;

    std::uint32_t power_nodes() const noexcept {
        return power_node_count ? power_node_count : std::max<std::uint32_t>(1, n_nodes / 20);
    }

    std::uint32_t malicious_count() const noexcept {
        return static_cast<std::uint32_t>(std::llround(malicious_fraction * n_nodes));
    }

    void validate() const {
        auto unit = [](double v, const char* what) {
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0,1]");
        };
        unit(malicious_fraction, "malicious_fraction");
        unit(greedy_alpha, "greedy_alpha");
        unit(theta, "theta");
        if (window && *window == 0) throw ConfigError("window must be at least one round");
        honest.validate();
        malicious.validate();
        if (!scripted.empty()) return;
        if (rounds < 1) throw ConfigError("rounds must be at least 1");
        if (n_nodes < 2) throw ConfigError("a scenario needs at least two nodes");
        if (power_node_count > n_nodes) throw ConfigError("power_node_count cannot exceed n_nodes");
        if (chord_bits == 0 || chord_bits > 62 || (std::uint64_t{1} << chord_bits) < n_nodes) {
            throw ConfigError("chord_bits too small for the population");
        }
    }
};

struct Transaction {
    trust::Round round;
    NodeId consumer;
    NodeId provider;
    bool greedy;
    double score;
};

struct NodeOutcome {
    NodeId node = 0;
    bool malicious = false;
    std::optional<double> ground_truth;
    bool known = false;
    double crisp = trust::kNeutralTrust;
    fuzzy::Label label = fuzzy::Label::Medium;
    trust::Verdict verdict = trust::Verdict::Trusted;
    std::optional<double> baseline; // unnormalized weighted sum; absent for unrated nodes
};

struct MetricsReport {
    std::uint64_t seed = 0;
    std::optional<RmsResult> rms;
    std::size_t unrated = 0;
    DetectionResult detection;
    DetectionResult baseline_detection;
    std::size_t flagged = 0;
    std::uint64_t queries = 0;
    std::uint64_t messages = 0;
    std::vector<NodeOutcome> nodes;
    // snapshots[r][i]: node i's crisp trust after round r (neutral when unrated).
    std::vector<std::vector<double>> snapshots;
    std::vector<std::vector<bool>> snapshot_known;
    std::vector<std::vector<NodeId>> power_sets; // top-k at the start of each round
    std::vector<Transaction> transactions;
    trust::FeedbackLedger ledger;
};

namespace detail {

// Distinct ring positions for node indices.
inline std::vector<chord::RingId> ring_ids(std::uint32_t n, unsigned bits, std::uint64_t seed) {
    const chord::RingId space = chord::RingId{1} << bits;
    std::vector<chord::RingId> ids(n);
    std::vector<chord::RingId> used;
    for (std::uint32_t i = 0; i < n; ++i) {
        chord::RingId id = splitmix64(seed ^ (0x51ed2701ULL + i)) & (space - 1);
        while (std::find(used.begin(), used.end(), id) != used.end()) id = (id + 1) & (space - 1);
        used.push_back(id);
        ids[i] = id;
    }
    return ids;
}

inline std::vector<NodeId> top_k(const std::vector<double>& trust, std::uint32_t k) {
    std::vector<NodeId> order(trust.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return trust[a] > trust[b]; });
    order.resize(std::min<std::size_t>(k, order.size()));
    return order;
}

inline void finish_report(MetricsReport& rep, const ScenarioConfig& cfg, const std::vector<double>& crisp,
                          const std::vector<bool>& known, const std::vector<fuzzy::Label>& labels,
                          const std::vector<bool>& malicious, bool has_truth) {
    const trust::ThresholdPolicy policy(cfg.theta);
    const std::size_t n = crisp.size();
    rep.nodes.resize(n);
    std::vector<double> v, u;
    std::vector<trust::Verdict> verdicts(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& o = rep.nodes[i];
        o.node = static_cast<NodeId>(i);
        o.malicious = malicious[i];
        o.known = known[i];
        o.crisp = crisp[i];
        o.label = known[i] ? labels[i] : cfg.engine.partition().label_of(crisp[i]);
        o.verdict = verdicts[i] = trust::classify(crisp[i], policy);
        if (has_truth) o.ground_truth = malicious[i] ? cfg.malicious.mean : cfg.honest.mean;
        if (o.verdict == trust::Verdict::Malicious) ++rep.flagged;
        if (!known[i]) {
            ++rep.unrated;
        } else if (has_truth) {
            v.push_back(crisp[i]);
            u.push_back(*o.ground_truth);
        }
    }
    if (has_truth && !v.empty()) {
        auto r = rms_error(v, u);
        r.excluded += rep.unrated;
        rep.rms = r;
    }

    // Weighted-sum baseline: each score weighted by the rater's final trust.
    std::vector<trust::WeightedScore> buf;
    for (std::size_t i = 0; i < n; ++i) {
        if (!known[i]) continue;
        buf.clear();
        for (const auto& e : rep.ledger.entries_for(static_cast<NodeId>(i))) buf.push_back({e.value, crisp[e.rater]});
        rep.nodes[i].baseline = trust::weighted_global_reputation(buf);
    }

    if (!has_truth) return;
    rep.detection = detection_metrics(verdicts, malicious);

    // Baseline flags the same number of nodes, lowest weighted sums first.
    std::vector<NodeId> rated;
    for (std::size_t i = 0; i < n; ++i) {
        if (rep.nodes[i].baseline) rated.push_back(static_cast<NodeId>(i));
    }
    std::stable_sort(rated.begin(), rated.end(),
                     [&](NodeId a, NodeId b) { return *rep.nodes[a].baseline < *rep.nodes[b].baseline; });
    std::vector<trust::Verdict> base(n, trust::Verdict::Trusted);
    for (std::size_t k = 0; k < std::min(rep.flagged, rated.size()); ++k) base[rated[k]] = trust::Verdict::Malicious;
    rep.baseline_detection = detection_metrics(base, malicious);
}

} // namespace detail

inline MetricsReport run_scripted(const ScenarioConfig& cfg) {
    MetricsReport rep;
    rep.seed = cfg.seed;
    NodeId max_id = 0;
    trust::Round max_round = 0;
    for (const auto& s : cfg.scripted) {
        max_id = std::max({max_id, s.rater, s.ratee});
        max_round = std::max(max_round, s.round);
    }
    const std::size_t n = std::max<std::size_t>(cfg.n_nodes, std::size_t{max_id} + 1);
    std::vector<double> crisp(n, trust::kNeutralTrust);
    std::vector<bool> known(n, false);
    std::vector<fuzzy::Label> labels(n, fuzzy::Label::Medium);

    auto scripted = cfg.scripted;
    std::stable_sort(scripted.begin(), scripted.end(), [](const auto& a, const auto& b) { return a.round < b.round; });
    std::size_t next = 0;
    for (trust::Round r = 0; r <= max_round; ++r) {
        for (; next < scripted.size() && scripted[next].round == r; ++next) {
            const auto& s = scripted[next];
            rep.ledger.submit(s);
            const auto rec = trust::compute_trust(rep.ledger, s.ratee, cfg.engine, cfg.window);
            crisp[s.ratee] = rec.crisp;
            labels[s.ratee] = rec.label;
            known[s.ratee] = true;
            rep.transactions.push_back({r, s.rater, s.ratee, false, s.value});
            ++rep.queries;
            rep.messages += chord::kCoordinatorMessages;
        }
        if (cfg.keep_snapshots) {
            rep.snapshots.push_back(crisp);
            rep.snapshot_known.push_back(known);
        }
    }
    detail::finish_report(rep, cfg, crisp, known, labels, std::vector<bool>(n, false), false);
    return rep;
}

// One replica. Each round every node consumes once: with probability alpha
// it picks a provider among the top-k by trust at the start of the round,
// otherwise uniformly among all other nodes. The provider's trust is
// recomputed after every score.
inline MetricsReport run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    if (!cfg.scripted.empty()) return run_scripted(cfg);

    const std::uint32_t n = cfg.n_nodes;
    Rng rng(cfg.seed);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    rng.shuffle(order);
    std::vector<bool> malicious(n, false);
    for (std::uint32_t i = 0; i < cfg.malicious_count(); ++i) malicious[order[i]] = true;

    std::optional<chord::Ring> ring;
    std::vector<chord::RingId> ids;
    if (cfg.query_model == chord::QueryModel::Dht) {
        ids = detail::ring_ids(n, cfg.chord_bits, cfg.seed);
        ring.emplace(chord::RingConfig{cfg.chord_bits, ids});
    }

    MetricsReport rep;
    rep.seed = cfg.seed;
    std::vector<double> crisp(n, trust::kNeutralTrust);
    std::vector<bool> known(n, false);
    std::vector<fuzzy::Label> labels(n, fuzzy::Label::Medium);
    const std::uint32_t k = cfg.power_nodes();

    for (trust::Round r = 0; r < cfg.rounds; ++r) {
        const auto power = detail::top_k(crisp, k);
        rep.power_sets.push_back(power);
        for (NodeId c = 0; c < n; ++c) {
            const bool greedy = rng.bernoulli(cfg.greedy_alpha);
            NodeId p = c;
            bool picked = false;
            if (greedy) {
                std::vector<NodeId> pool;
                for (NodeId q : power) {
                    if (q != c) pool.push_back(q);
                }
                if (!pool.empty()) {
                    p = pool[rng.below(pool.size())];
                    picked = true;
                }
            }
            if (!picked) {
                p = static_cast<NodeId>(rng.below(n - 1));
                if (p >= c) ++p;
            }

            const auto& profile = malicious[p] ? cfg.malicious : cfg.honest;
            const auto& rater = malicious[c] ? cfg.malicious : cfg.honest;
            const double quality = rng.truncated_normal(profile.mean, profile.spread);
            const double score = rater.honesty == RatingHonesty::Liar ? 1.0 - quality : quality;

            rep.ledger.submit({c, p, score, r});
            const auto rec = trust::compute_trust(rep.ledger, p, cfg.engine, cfg.window);
            crisp[p] = rec.crisp;
            labels[p] = rec.label;
            known[p] = true;
            rep.transactions.push_back({r, c, p, greedy && picked, score});
            ++rep.queries;
            rep.messages += ring ? chord::trust_query_cost(chord::QueryModel::Dht, *ring, ids[c], ids[p])
                                 : chord::kCoordinatorMessages;
        }
        if (cfg.keep_snapshots) {
            rep.snapshots.push_back(crisp);
            rep.snapshot_known.push_back(known);
        }
    }
    detail::finish_report(rep, cfg, crisp, known, labels, malicious, true);
    return rep;
}

inline std::uint64_t replica_seed(std::uint64_t base, std::size_t replica) noexcept { return base + replica; }

// Replicas run on up to `threads` workers; results are ordered by replica index.
inline std::vector<MetricsReport> run_replicas(const ScenarioConfig& cfg, std::size_t replicas,
                                               std::size_t threads = 1) {
    cfg.validate();
    std::vector<MetricsReport> out(replicas);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(replicas);
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < replicas;) {
            try {
                auto c = cfg;
                c.seed = replica_seed(cfg.seed, i);
                out[i] = run_scenario(c);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(replicas, 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace frtrust::sim
