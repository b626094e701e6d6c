#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "frtrust/error.hpp"

namespace frtrust::fuzzy {

// Ordered linguistic terms; the underlying value doubles as an array index.
enum class Label : std::uint8_t { Low = 0, Medium = 1, High = 2 };

inline constexpr std::array<Label, 3> kLabels{Label::Low, Label::Medium, Label::High};

constexpr std::size_t index(Label l) noexcept { return static_cast<std::size_t>(l); }

constexpr char to_char(Label l) noexcept {
    switch (l) {
    case Label::Low: return 'L';
    case Label::Medium: return 'M';
    case Label::High: return 'H';
    }
    return '?';
}

inline Label parse_label(std::string_view s) {
    if (s == "L" || s == "Low" || s == "low") return Label::Low;
    if (s == "M" || s == "Medium" || s == "medium") return Label::Medium;
    if (s == "H" || s == "High" || s == "high") return Label::High;
    throw ConfigError("unknown linguistic label '" + std::string(s) + "'");
}

// Trapezoid (a, b, c, d) on [0,1]; a triangle when b == c. Degenerate edges
// (a == b or c == d) are vertical, so the plateau value holds at the endpoint.
class MembershipFunction {
public:
    constexpr MembershipFunction() = default;

    MembershipFunction(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
        if (!(0.0 <= a && a <= b && b <= c && c <= d && d <= 1.0)) {
            throw ConfigError("membership breakpoints must satisfy 0 <= a <= b <= c <= d <= 1");
        }
    }

    // Unchecked evaluation; callers that accept user input go through mf_eval.
    double operator()(double x) const noexcept {
        if (x < a_ || x > d_) return 0.0;
        if (x < b_) return (x - a_) / (b_ - a_);
        if (x <= c_) return 1.0;
        return (d_ - x) / (d_ - c_);
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    double peak() const noexcept { return 0.5 * (b_ + c_); }
    std::array<double, 4> breakpoints() const noexcept { return {a_, b_, c_, d_}; }

    friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

private:
    double a_ = 0.0, b_ = 0.0, c_ = 0.0, d_ = 0.0;
};

inline double mf_eval(const MembershipFunction& mf, double x) {
    detail::require_unit(x, "membership input");
    return mf(x);
}

using Degrees = std::array<double, 3>;

// Low/Medium/High membership functions over the unit interval.
class FuzzyPartition {
public:
    FuzzyPartition(MembershipFunction low, MembershipFunction medium, MembershipFunction high)
        : sets_{low, medium, high} {
        if (!(low.peak() < medium.peak() && medium.peak() < high.peak())) {
            throw ConfigError("partition peaks must be ordered Low < Medium < High");
        }
        if (!covers_unit_interval()) {
            throw ConfigError("partition leaves part of [0,1] with zero total membership");
        }
    }

    // Trapezoids with a wide Medium plateau; crossovers at 0.375 and 0.625.
    // High reaches full membership at 0.7, which keeps the output monotone
    // when Medium and High rules fire together.
    static FuzzyPartition standard() {
        return {{0.0, 0.0, 0.3, 0.45}, {0.15, 0.3, 0.7, 0.85}, {0.55, 0.7, 1.0, 1.0}};
    }

    // Plain triangles with crossovers at 0.25 and 0.75.
    static FuzzyPartition triangular() {
        return {{0.0, 0.0, 0.0, 0.5}, {0.0, 0.5, 0.5, 1.0}, {0.5, 1.0, 1.0, 1.0}};
    }

    const MembershipFunction& operator[](Label l) const noexcept { return sets_[index(l)]; }
    const MembershipFunction& low() const noexcept { return sets_[0]; }
    const MembershipFunction& medium() const noexcept { return sets_[1]; }
    const MembershipFunction& high() const noexcept { return sets_[2]; }

    Degrees degrees(double x) const noexcept { return {sets_[0](x), sets_[1](x), sets_[2](x)}; }

    // Argmax membership; any tie resolves to Medium.
    Label label_of(double x) const noexcept {
        const Degrees d = degrees(x);
        const double best = std::max({d[0], d[1], d[2]});
        if (d[1] == best) return Label::Medium;
        if (d[0] == best && d[2] == best) return Label::Medium;
        return d[0] == best ? Label::Low : Label::High;
    }

    friend bool operator==(const FuzzyPartition&, const FuzzyPartition&) = default;

private:
    // Total membership of piecewise-linear sets can only vanish at a
    // breakpoint or on an interval between consecutive breakpoints, so
    // checking breakpoints and midpoints between them is exhaustive.
    bool covers_unit_interval() const {
        std::array<double, 14> pts{};
        std::size_t n = 0;
        pts[n++] = 0.0;
        pts[n++] = 1.0;
        for (const auto& s : sets_) {
            for (double p : s.breakpoints()) pts[n++] = p;
        }
        std::sort(pts.begin(), pts.end());
        auto total = [&](double x) { return sets_[0](x) + sets_[1](x) + sets_[2](x); };
        for (std::size_t i = 0; i < n; ++i) {
            if (total(pts[i]) <= 0.0) return false;
            if (i + 1 < n && pts[i + 1] > pts[i] && total(0.5 * (pts[i] + pts[i + 1])) <= 0.0) return false;
        }
        return true;
    }

    std::array<MembershipFunction, 3> sets_;
};

inline Degrees fuzzify(const FuzzyPartition& partition, double x) {
    detail::require_unit(x, "fuzzify input");
    return partition.degrees(x);
}

} // namespace frtrust::fuzzy
