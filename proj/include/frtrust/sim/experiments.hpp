#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "frtrust/chord/ring.hpp"
#include "frtrust/fuzzy/engine.hpp"
#include "frtrust/io/csv.hpp"
#include "frtrust/sim/random.hpp"
#include "frtrust/sim/scenario.hpp"
#include "frtrust/trust/agent.hpp"

namespace frtrust::sim {

using io::format_double;

// ---------------------------------------------------------------------------
// Fuzzy output sweep against reference values (P2 = 0.5, P3 = 0.9).

struct Table2Row {
    double p1, p2, p3;
    double reference;           // reference value; plateau rows carry 0.8
    bool approximate;           // reference given only as "~0.8"
    std::string reference_text; // as printed
    std::string other_model;    // competing fuzzy model, quoted as printed
};

inline const std::vector<Table2Row>& table2_rows() {
    static const std::vector<Table2Row> rows{
        {0.1, 0.5, 0.9, 0.5, false, "0.5", "0.176"},    {0.2, 0.5, 0.9, 0.544, false, "0.544", "0.334"},
        {0.3, 0.5, 0.9, 0.613, false, "0.613", "0.418"}, {0.4, 0.5, 0.9, 0.705, false, "0.705", "0.468"},
        {0.5, 0.5, 0.9, 0.8, true, "~0.8", "0.491"},     {0.6, 0.5, 0.9, 0.8, true, "~0.8", "~0.5"},
        {0.7, 0.5, 0.9, 0.8, true, "~0.8", "~0.5"},      {0.8, 0.5, 0.9, 0.8, true, "~0.8", "~0.5"},
        {0.96, 0.5, 0.9, 0.8, true, "~0.8", "~0.5"},     {1.0, 0.5, 0.9, 0.8, true, "~0.8", "~0.5"},
    };
    return rows;
}

struct Table2Result {
    Table2Row row;
    fuzzy::TrustValue computed;
};

inline std::vector<Table2Result> exp_table2(const fuzzy::Engine& engine,
                                            const std::vector<Table2Row>& rows = table2_rows()) {
    std::vector<Table2Result> out;
    for (const auto& r : rows) out.push_back({r, engine.evaluate(r.p1, r.p2, r.p3)});
    return out;
}

inline io::CsvTable to_csv(const std::vector<Table2Result>& res) {
    io::CsvTable t({"p1", "p2", "p3", "computed", "label", "reference", "reference_other"});
    for (const auto& r : res) {
        t.add_row({format_double(r.row.p1), format_double(r.row.p2), format_double(r.row.p3),
                   format_double(r.computed.crisp), std::string(1, fuzzy::to_char(r.computed.label)),
                   r.row.reference_text, r.row.other_model});
    }
    return t;
}

// ---------------------------------------------------------------------------
// Fault tolerance: an error X in one weighted term. The baseline is X + Y;
// the fuzzy system sees X in the P1 slot with the other scores fixed.

inline constexpr double kTable3Y = 0.2;
inline constexpr double kTable3P2 = 0.5;
inline constexpr double kTable3P3 = 0.8;

struct Table3Row {
    double x;
    fuzzy::TrustValue fr;
    double baseline;
};

inline std::vector<double> unit_grid(std::size_t points) {
    if (points < 2) throw DomainError("grid needs at least two points");
    std::vector<double> xs(points);
    for (std::size_t i = 0; i < points; ++i) xs[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return xs;
}

inline std::vector<Table3Row> exp_table3(const fuzzy::Engine& engine, double y_fixed, const std::vector<double>& xs) {
    std::vector<Table3Row> out;
    for (double x : xs) {
        frtrust::detail::require_unit(x, "perturbed input");
        const std::array<trust::WeightedScore, 2> terms{{{x, 1.0}, {y_fixed, 1.0}}};
        out.push_back({x, engine.evaluate(x, kTable3P2, kTable3P3), trust::weighted_global_reputation(terms)});
    }
    return out;
}

inline io::CsvTable to_csv(const std::vector<Table3Row>& rows) {
    io::CsvTable t({"x", "fr_trust", "fr_label", "baseline"});
    for (const auto& r : rows) {
        t.add_row({format_double(r.x), format_double(r.fr.crisp), std::string(1, fuzzy::to_char(r.fr.label)),
                   format_double(r.baseline)});
    }
    return t;
}

// ---------------------------------------------------------------------------
// RMS error over greedy factor x malicious fraction.

struct RmsCell {
    double alpha;
    double fraction;
    double mean;
    double min;
    double max;
    std::size_t replicas;
};

inline std::vector<RmsCell> exp_rms_sweep(const std::vector<double>& alphas, const std::vector<double>& fractions,
                                          const ScenarioConfig& base, std::size_t replicas, std::size_t threads = 1) {
    if (replicas == 0) throw ConfigError("rms sweep needs at least one replica");
    std::vector<RmsCell> out;
    for (double a : alphas) {
        for (double f : fractions) {
            auto cfg = base;
            cfg.greedy_alpha = a;
            cfg.malicious_fraction = f;
            cfg.keep_snapshots = false;
            const auto reports = run_replicas(cfg, replicas, threads);
            RmsCell cell{a, f, 0.0, std::numeric_limits<double>::infinity(), 0.0, 0};
            for (const auto& r : reports) {
                if (!r.rms) continue;
                cell.mean += r.rms->value;
                cell.min = std::min(cell.min, r.rms->value);
                cell.max = std::max(cell.max, r.rms->value);
                ++cell.replicas;
            }
            if (cell.replicas == 0) throw DomainError("no replica produced an RMS value");
            cell.mean /= static_cast<double>(cell.replicas);
            out.push_back(cell);
        }
    }
    return out;
}

inline io::CsvTable to_csv(const std::vector<RmsCell>& cells) {
    io::CsvTable t({"alpha", "malicious_fraction", "rms_mean", "rms_min", "rms_max", "replicas"});
    for (const auto& c : cells) {
        t.add_row({format_double(c.alpha), format_double(c.fraction), format_double(c.mean), format_double(c.min),
                   format_double(c.max), std::to_string(c.replicas)});
    }
    return t;
}

// ---------------------------------------------------------------------------
// Detection precision/recall, fuzzy classifier vs weighted-sum baseline.

struct DetectionSummary {
    std::vector<MetricsReport> reports;
    std::optional<double> precision; // means over replicas where defined
    std::optional<double> recall;
    std::optional<double> baseline_precision;
    std::optional<double> baseline_recall;
};

namespace detail {

template <typename Get>
std::optional<double> mean_defined(const std::vector<MetricsReport>& reps, Get get) {
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& r : reps) {
        if (auto v = get(r)) {
            s += *v;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return s / static_cast<double>(n);
}

inline std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

} // namespace detail

inline DetectionSummary exp_detection(const ScenarioConfig& cfg, std::size_t replicas, std::size_t threads = 1) {
    auto c = cfg;
    c.keep_snapshots = false;
    DetectionSummary s;
    s.reports = run_replicas(c, replicas, threads);
    s.precision = detail::mean_defined(s.reports, [](const auto& r) { return r.detection.precision; });
    s.recall = detail::mean_defined(s.reports, [](const auto& r) { return r.detection.recall; });
    s.baseline_precision = detail::mean_defined(s.reports, [](const auto& r) { return r.baseline_detection.precision; });
    s.baseline_recall = detail::mean_defined(s.reports, [](const auto& r) { return r.baseline_detection.recall; });
    return s;
}

inline io::CsvTable to_csv(const DetectionSummary& s) {
    io::CsvTable t({"replica", "seed", "flagged", "precision", "recall", "baseline_precision", "baseline_recall"});
    for (std::size_t i = 0; i < s.reports.size(); ++i) {
        const auto& r = s.reports[i];
        t.add_row({std::to_string(i), std::to_string(r.seed), std::to_string(r.flagged), detail::opt(r.detection.precision),
                   detail::opt(r.detection.recall), detail::opt(r.baseline_detection.precision),
                   detail::opt(r.baseline_detection.recall)});
    }
    t.add_row({"mean", "", "", detail::opt(s.precision), detail::opt(s.recall), detail::opt(s.baseline_precision),
               detail::opt(s.baseline_recall)});
    return t;
}

// ---------------------------------------------------------------------------
// Query cost: Chord lookup vs coordinator.

inline constexpr std::size_t kExhaustiveChordLimit = 64;
inline constexpr std::size_t kChordSamples = 100000;

struct ChordRow {
    std::size_t nodes;
    unsigned bits;
    std::uint64_t pairs;
    bool exhaustive;
    double mean_hops;
    unsigned max_hops;
    double dht_messages;
    unsigned coordinator_messages;
    std::uint64_t owner_mismatches; // greedy routing vs linear scan
};

inline std::vector<chord::RingId> random_ring_ids(std::size_t n, unsigned bits, Rng& rng) {
    const std::uint64_t space = std::uint64_t{1} << bits;
    if (n > space) throw ConfigError("more ring nodes than identifiers");
    std::vector<chord::RingId> ids;
    while (ids.size() < n) {
        const auto id = rng.below(space);
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

inline ChordRow measure_ring(const chord::Ring& ring, Rng& rng, std::size_t exhaustive_limit = kExhaustiveChordLimit,
                             std::size_t samples = kChordSamples) {
    ChordRow row{ring.size(), ring.bits(), 0, ring.size() <= exhaustive_limit, 0.0, 0, 0.0, chord::kCoordinatorMessages, 0};
    double hops = 0.0;
    double dht = 0.0;
    auto visit = [&](chord::RingId start, chord::RingId key) {
        const auto res = ring.lookup(start, key);
        hops += res.hops;
        dht += res.hops + 1;
        row.max_hops = std::max(row.max_hops, res.hops);
        if (res.owner != chord::linear_successor(ring.nodes(), key)) ++row.owner_mismatches;
        if (chord::trust_query_cost(chord::QueryModel::Coordinator, ring, start, key) != chord::kCoordinatorMessages) {
            row.coordinator_messages = 0;
        }
        ++row.pairs;
    };
    if (row.exhaustive) {
        for (chord::RingId s : ring.nodes()) {
            for (chord::RingId k = 0; k < ring.space(); ++k) visit(s, k);
        }
    } else {
        for (std::size_t i = 0; i < samples; ++i) visit(ring.nodes()[rng.below(ring.size())], rng.below(ring.space()));
    }
    row.mean_hops = hops / static_cast<double>(row.pairs);
    row.dht_messages = dht / static_cast<double>(row.pairs);
    return row;
}

inline std::vector<ChordRow> exp_chord(const std::vector<std::size_t>& sizes, unsigned bits, std::uint64_t seed) {
    std::vector<ChordRow> out;
    for (std::size_t n : sizes) {
        Rng rng(splitmix64(seed + n));
        const chord::Ring ring({bits, random_ring_ids(n, bits, rng)});
        out.push_back(measure_ring(ring, rng));
    }
    return out;
}

inline io::CsvTable to_csv(const std::vector<ChordRow>& rows) {
    io::CsvTable t({"n", "bits", "pairs", "exhaustive", "mean_hops", "max_hops", "log2_n", "dht_mean_messages",
                    "coordinator_messages", "owner_mismatches"});
    for (const auto& r : rows) {
        t.add_row({std::to_string(r.nodes), std::to_string(r.bits), std::to_string(r.pairs), r.exhaustive ? "1" : "0",
                   format_double(r.mean_hops), std::to_string(r.max_hops),
                   format_double(std::log2(static_cast<double>(r.nodes))), format_double(r.dht_messages),
                   std::to_string(r.coordinator_messages), std::to_string(r.owner_mismatches)});
    }
    return t;
}

// ---------------------------------------------------------------------------
// Output surface over two inputs with the third fixed.

struct Surface {
    std::size_t fixed_slot; // 0, 1 or 2
    double fixed_value;
    std::vector<double> axis;
    std::vector<std::vector<double>> crisp; // crisp[i][j]: first free input = axis[i], second = axis[j]
};

inline Surface exp_surface(const fuzzy::Engine& engine, std::size_t fixed_slot, double fixed_value, double step) {
    if (fixed_slot > 2) throw DomainError("fixed input must be p1, p2 or p3");
    frtrust::detail::require_unit(fixed_value, "fixed input");
    if (!(step > 0.0 && step <= 1.0)) throw DomainError("surface step must lie in (0, 1]");
    const double cells = 1.0 / step;
    const auto n = static_cast<std::size_t>(std::llround(cells));
    if (std::abs(cells - static_cast<double>(n)) > 1e-9) throw DomainError("surface step must divide 1 evenly");

    Surface s{fixed_slot, fixed_value, unit_grid(n + 1), {}};
    for (double a : s.axis) {
        auto& row = s.crisp.emplace_back();
        for (double b : s.axis) {
            std::array<double, 3> in{};
            std::size_t k = 0;
            for (std::size_t slot = 0; slot < 3; ++slot) in[slot] = slot == fixed_slot ? fixed_value : (k++ == 0 ? a : b);
            row.push_back(engine.evaluate(in).crisp);
        }
    }
    return s;
}

inline io::CsvTable to_csv(const Surface& s) {
    std::array<std::string, 2> free;
    std::size_t k = 0;
    for (std::size_t slot = 0; slot < 3; ++slot) {
        if (slot != s.fixed_slot) free[k++] = "p" + std::to_string(slot + 1);
    }
    std::vector<std::string> header{free[0] + "/" + free[1]};
    for (double b : s.axis) header.push_back(format_double(b));
    io::CsvTable t(header);
    for (std::size_t i = 0; i < s.axis.size(); ++i) {
        std::vector<std::string> row{format_double(s.axis[i])};
        for (double v : s.crisp[i]) row.push_back(format_double(v));
        t.add_row(std::move(row));
    }
    return t;
}

} // namespace frtrust::sim
