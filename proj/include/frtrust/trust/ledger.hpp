#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "frtrust/error.hpp"
#include "frtrust/io/csv.hpp"
#include "frtrust/types.hpp"

namespace frtrust::trust {

using Round = std::uint32_t;

struct FeedbackScore {
    NodeId rater = 0;
    NodeId ratee = 0;
    double value = 0.0;
    Round round = 0;

    friend bool operator==(const FeedbackScore&, const FeedbackScore&) = default;
};

// Append-only feedback log with a per-ratee index.
class FeedbackLedger {
public:
    void submit(const FeedbackScore& s) {
        if (s.rater == s.ratee) throw DomainError("node " + std::to_string(s.rater) + " cannot rate itself");
        detail::require_unit(s.value, "feedback value");
        by_ratee_[s.ratee].push_back(entries_.size());
        entries_.push_back(s);
        if (!latest_ || s.round > *latest_) latest_ = s.round;
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::span<const FeedbackScore> entries() const noexcept { return entries_; }
    std::optional<Round> latest_round() const noexcept { return latest_; }

    bool has_feedback(NodeId node) const { return by_ratee_.contains(node); }

    // Scores for `node` from the last `window` rounds ending at the ledger's
    // latest round; no window means the whole history.
    std::vector<double> scores_for(NodeId node, std::optional<Round> window = std::nullopt) const {
        std::vector<double> out;
        auto it = by_ratee_.find(node);
        if (it == by_ratee_.end()) return out;
        const Round newest = latest_.value_or(0);
        const Round oldest = (window && *window <= newest) ? newest - *window + 1 : 0;
        if (window && *window == 0) return out;
        out.reserve(it->second.size());
        for (std::size_t i : it->second) {
            if (entries_[i].round >= oldest) out.push_back(entries_[i].value);
        }
        return out;
    }

    std::vector<FeedbackScore> entries_for(NodeId node) const {
        std::vector<FeedbackScore> out;
        if (auto it = by_ratee_.find(node); it != by_ratee_.end()) {
            for (std::size_t i : it->second) out.push_back(entries_[i]);
        }
        return out;
    }

    std::string to_csv() const {
        io::CsvTable t({"rater", "ratee", "value", "round"});
        for (const auto& e : entries_) {
            t.add_row({std::to_string(e.rater), std::to_string(e.ratee), io::format_double(e.value),
                       std::to_string(e.round)});
        }
        return t.str();
    }

    static FeedbackLedger from_csv(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line)) throw ConfigError("ledger csv is empty");
        const auto header = io::split_fields(line);
        if (header != std::vector<std::string>{"rater", "ratee", "value", "round"}) {
            throw ConfigError("ledger csv header must be rater,ratee,value,round");
        }
        FeedbackLedger ledger;
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line == "\r") continue;
            const auto f = io::split_fields(line);
            if (f.size() != 4) throw ConfigError("ledger csv line " + std::to_string(lineno) + " needs 4 fields");
            ledger.submit({io::parse_int<NodeId>(f[0]), io::parse_int<NodeId>(f[1]), io::parse_double(f[2]),
                           io::parse_int<Round>(f[3])});
        }
        return ledger;
    }

private:
    std::vector<FeedbackScore> entries_;
    std::unordered_map<NodeId, std::vector<std::size_t>> by_ratee_;
    std::optional<Round> latest_;
};

// One writer, many readers.
class SharedLedger {
public:
    void submit(const FeedbackScore& s) {
        std::unique_lock lock(mutex_);
        ledger_.submit(s);
    }

    template <typename Fn>
    auto read(Fn&& fn) const -> decltype(fn(std::declval<const FeedbackLedger&>())) {
        std::shared_lock lock(mutex_);
        return std::invoke(std::forward<Fn>(fn), ledger_);
    }

private:
    mutable std::shared_mutex mutex_;
    FeedbackLedger ledger_;
};

} // namespace frtrust::trust
