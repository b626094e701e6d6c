#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "frtrust/error.hpp"
#include "frtrust/trust/agent.hpp"

namespace frtrust::sim {

inline constexpr double kRmsEpsilon = 1e-6;

struct RmsResult {
    double value = 0.0;
    std::size_t used = 0;
    std::size_t excluded = 0; // entries with computed value below epsilon
};

// Root mean square of the relative deviation (v - u) / v over entries with v >= epsilon.
inline RmsResult rms_error(std::span<const double> computed, std::span<const double> truth) {
    if (computed.size() != truth.size()) throw DomainError("rms_error needs equal-length vectors");
    RmsResult r;
    double sum = 0.0;
    for (std::size_t i = 0; i < computed.size(); ++i) {
        const double v = computed[i];
        if (!(v >= kRmsEpsilon)) {
            ++r.excluded;
            continue;
        }
        const double rel = (v - truth[i]) / v;
        sum += rel * rel;
        ++r.used;
    }
    if (r.used == 0) throw DomainError("rms_error: every entry was excluded");
    r.value = std::sqrt(sum / static_cast<double>(r.used));
    return r;
}

struct DetectionResult {
    std::optional<double> precision;
    std::optional<double> recall;
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t false_negative = 0;
};

// Positive = flagged malicious; condition = the node's profile is malicious.
inline DetectionResult detection_metrics(const std::vector<trust::Verdict>& verdicts, const std::vector<bool>& malicious) {
    if (verdicts.size() != malicious.size()) throw DomainError("detection_metrics needs the same node set");
    DetectionResult r;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const bool flagged = verdicts[i] == trust::Verdict::Malicious;
        if (flagged && malicious[i]) ++r.true_positive;
        if (flagged && !malicious[i]) ++r.false_positive;
        if (!flagged && malicious[i]) ++r.false_negative;
    }
    const auto tp = static_cast<double>(r.true_positive);
    if (r.true_positive + r.false_positive > 0) {
        r.precision = tp / static_cast<double>(r.true_positive + r.false_positive);
    }
    if (r.true_positive + r.false_negative > 0) {
        r.recall = tp / static_cast<double>(r.true_positive + r.false_negative);
    }
    return r;
}

} // namespace frtrust::sim
