#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "frtrust/error.hpp"
#include "frtrust/fuzzy/membership.hpp"
#include "frtrust/fuzzy/rule_base.hpp"

namespace frtrust::fuzzy {

inline constexpr std::size_t kDefaultResolution = 1000;
inline constexpr std::size_t kMinResolution = 100;

using InputDegrees = std::array<Degrees, 3>;
using FiringStrengths = std::array<double, kRuleCount>;

// Membership samples at z_i = i / R, i = 0..R.
class OutputCurve {
public:
    explicit OutputCurve(std::size_t resolution) : samples_(check(resolution) + 1, 0.0) {}

    std::size_t resolution() const noexcept { return samples_.size() - 1; }
    double z(std::size_t i) const noexcept { return static_cast<double>(i) / static_cast<double>(resolution()); }

    std::span<double> samples() noexcept { return samples_; }
    std::span<const double> samples() const noexcept { return samples_; }
    double operator[](std::size_t i) const noexcept { return samples_[i]; }

private:
    static std::size_t check(std::size_t r) {
        if (r < kMinResolution) throw ConfigError("output resolution must be at least 100");
        return r;
    }

    std::vector<double> samples_;
};

// AND is the minimum over the three antecedent degrees.
inline FiringStrengths fire_rules(const RuleBase&, const InputDegrees& degrees) noexcept {
    FiringStrengths s{};
    for (std::size_t i = 0; i < kRuleCount; ++i) {
        const Antecedent a = antecedent_at(i);
        s[i] = std::min({degrees[0][index(a[0])], degrees[1][index(a[1])], degrees[2][index(a[2])]});
    }
    return s;
}

// Each rule clips its consequent set at its strength; the curve is the pointwise max.
inline OutputCurve aggregate(const RuleBase& rules, const FiringStrengths& strengths, const FuzzyPartition& partition,
                             std::size_t resolution = kDefaultResolution) {
    OutputCurve curve(resolution);
    auto out = curve.samples();
    for (std::size_t r = 0; r < kRuleCount; ++r) {
        if (strengths[r] <= 0.0) continue;
        const auto& mf = partition[rules.consequent(r)];
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = std::max(out[i], std::min(mf(curve.z(i)), strengths[r]));
        }
    }
    return curve;
}

// Centroid by the trapezoid rule; the uniform step cancels between numerator and denominator.
inline double defuzzify_centroid(const OutputCurve& curve) {
    const auto s = curve.samples();
    const std::size_t n = s.size();
    double area = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        area += w * s[i];
        moment += w * s[i] * curve.z(i);
    }
    if (!(area > 0.0)) throw NoRuleFiredError();
    return std::clamp(moment / area, 0.0, 1.0);
}

struct TrustValue {
    double crisp = 0.5;
    Label label = Label::Medium;

    friend bool operator==(const TrustValue&, const TrustValue&) = default;
};

// Mamdani inference over three scores. Immutable once built; evaluate() is
// safe to call concurrently.
class Engine {
public:
    Engine() : Engine(FuzzyPartition::standard(), RuleBase::standard()) {}

    Engine(FuzzyPartition partition, RuleBase rules, std::size_t resolution = kDefaultResolution)
        : partition_(std::move(partition)), rules_(std::move(rules)), resolution_(resolution) {
        OutputCurve probe(resolution_);
        for (Label l : kLabels) {
            auto& col = sampled_[index(l)];
            col.resize(resolution_ + 1);
            for (std::size_t i = 0; i <= resolution_; ++i) col[i] = partition_[l](probe.z(i));
        }
    }

    const FuzzyPartition& partition() const noexcept { return partition_; }
    const RuleBase& rules() const noexcept { return rules_; }
    std::size_t resolution() const noexcept { return resolution_; }

    InputDegrees fuzzify_inputs(double p1, double p2, double p3) const {
        return {fuzzify(partition_, p1), fuzzify(partition_, p2), fuzzify(partition_, p3)};
    }

    // Same curve as aggregate(): max over rules of min(mu_c, s_r) equals
    // min(mu_c, max s_r) per consequent c, so three clipped sets suffice.
    OutputCurve output_curve(const InputDegrees& degrees) const {
        const auto strengths = fire_rules(rules_, degrees);
        std::array<double, 3> clip{};
        for (std::size_t r = 0; r < kRuleCount; ++r) {
            auto& c = clip[index(rules_.consequent(r))];
            c = std::max(c, strengths[r]);
        }
        OutputCurve curve(resolution_);
        auto out = curve.samples();
        for (Label l : kLabels) {
            const double h = clip[index(l)];
            if (h <= 0.0) continue;
            const auto& col = sampled_[index(l)];
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], std::min(col[i], h));
        }
        return curve;
    }

    TrustValue evaluate(double p1, double p2, double p3) const {
        const double crisp = defuzzify_centroid(output_curve(fuzzify_inputs(p1, p2, p3)));
        return {crisp, partition_.label_of(crisp)};
    }

    TrustValue evaluate(const std::array<double, 3>& inputs) const { return evaluate(inputs[0], inputs[1], inputs[2]); }

private:
    FuzzyPartition partition_;
    RuleBase rules_;
    std::size_t resolution_;
    std::array<std::vector<double>, 3> sampled_;
};

} // namespace frtrust::fuzzy
