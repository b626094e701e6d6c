#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frtrust/error.hpp"
#include "frtrust/fuzzy/membership.hpp"

namespace frtrust::fuzzy {

using Antecedent = std::array<Label, 3>;

struct FuzzyRule {
    Antecedent antecedent;
    Label consequent;

    friend bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

inline constexpr std::size_t kRuleCount = 27;

constexpr std::size_t rule_index(const Antecedent& a) noexcept {
    return index(a[0]) * 9 + index(a[1]) * 3 + index(a[2]);
}

constexpr Antecedent antecedent_at(std::size_t i) noexcept {
    return {static_cast<Label>(i / 9), static_cast<Label>((i / 3) % 3), static_cast<Label>(i % 3)};
}

constexpr Label median_label(const Antecedent& a) noexcept {
    auto v = a;
    std::sort(v.begin(), v.end());
    return v[1];
}

// The ten expert rules for (P1, P2, P3) -> trust.
inline const std::vector<FuzzyRule>& expert_rules() {
    using enum Label;
    static const std::vector<FuzzyRule> rules{
        {{Low, Low, Low}, Low},
        {{High, High, High}, High},
        {{Low, Medium, Medium}, Medium},
        {{High, High, Medium}, High},
        {{Medium, Medium, Medium}, Medium},
        {{Low, Medium, High}, Medium},
        {{Low, Medium, Low}, Low},
        {{High, Medium, High}, High},
        {{Low, Low, High}, Low},
        {{Medium, Medium, High}, High},
    };
    return rules;
}

// A complete rule base: exactly one consequent for each of the 27 antecedents.
class RuleBase {
public:
    // Requires every antecedent to be covered; duplicates must agree.
    static RuleBase from_rules(std::span<const FuzzyRule> rules) {
        auto table = collect(rules);
        std::array<Label, kRuleCount> out{};
        for (std::size_t i = 0; i < kRuleCount; ++i) {
            if (!table[i]) {
                const auto a = antecedent_at(i);
                throw ConfigError(std::string("incomplete rule base: no rule for (") + to_char(a[0]) + ","
                                  + to_char(a[1]) + "," + to_char(a[2]) + ")");
            }
            out[i] = *table[i];
        }
        return RuleBase(out);
    }

    // Explicit rules win; any missing antecedent takes the median of its labels.
    static RuleBase completed(std::span<const FuzzyRule> rules) {
        auto table = collect(rules);
        std::array<Label, kRuleCount> out{};
        for (std::size_t i = 0; i < kRuleCount; ++i) {
            out[i] = table[i].value_or(median_label(antecedent_at(i)));
        }
        return RuleBase(out);
    }

    static RuleBase standard() { return completed(expert_rules()); }

    Label consequent(const Antecedent& a) const noexcept { return consequents_[rule_index(a)]; }
    Label consequent(std::size_t i) const noexcept { return consequents_[i]; }

    std::vector<FuzzyRule> rules() const {
        std::vector<FuzzyRule> out;
        out.reserve(kRuleCount);
        for (std::size_t i = 0; i < kRuleCount; ++i) out.push_back({antecedent_at(i), consequents_[i]});
        return out;
    }

    friend bool operator==(const RuleBase&, const RuleBase&) = default;

private:
    explicit RuleBase(const std::array<Label, kRuleCount>& c) : consequents_(c) {}

    static std::array<std::optional<Label>, kRuleCount> collect(std::span<const FuzzyRule> rules) {
        std::array<std::optional<Label>, kRuleCount> table{};
        for (const auto& r : rules) {
            auto& slot = table[rule_index(r.antecedent)];
            if (slot && *slot != r.consequent) {
                throw ConfigError("conflicting rules for the same antecedent");
            }
            slot = r.consequent;
        }
        return table;
    }

    std::array<Label, kRuleCount> consequents_;
};

} // namespace frtrust::fuzzy
