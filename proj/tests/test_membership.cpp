#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "frtrust/fuzzy/membership.hpp"
#include "oracle.hpp"

using namespace frtrust;
using namespace frtrust::fuzzy;

TEST(MembershipFunction, LowTriangleValues) {
    const MembershipFunction low(0, 0, 0, 0.5);
    EXPECT_DOUBLE_EQ(mf_eval(low, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(mf_eval(low, 0.5), 0.0);
    EXPECT_DOUBLE_EQ(mf_eval(low, 0.25), 0.5);
}

TEST(MembershipFunction, RejectsOutOfDomainAndNaN) {
    const MembershipFunction low(0, 0, 0, 0.5);
    EXPECT_THROW(mf_eval(low, -0.01), DomainError);
    EXPECT_THROW(mf_eval(low, 1.01), DomainError);
    EXPECT_THROW(mf_eval(low, std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST(MembershipFunction, RejectsUnorderedBreakpoints) {
    EXPECT_THROW(MembershipFunction(0.5, 0.2, 0.6, 0.8), ConfigError);
    EXPECT_THROW(MembershipFunction(0.0, 0.2, 0.6, 1.2), ConfigError);
}

TEST(MembershipFunction, MatchesOracleOnGrid) {
    const oracle::Trap shapes[] = {{0, 0, 0, 0.5}, {0, 0.5, 0.5, 1}, {0.5, 1, 1, 1}, {0.1, 0.3, 0.6, 0.9}, {0.2, 0.2, 0.4, 0.4}};
    for (const auto& t : shapes) {
        const MembershipFunction mf(t.a, t.b, t.c, t.d);
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            EXPECT_NEAR(mf(x), oracle::mu(t, x), 1e-12) << "x=" << x;
            EXPECT_GE(mf(x), 0.0);
            EXPECT_LE(mf(x), 1.0);
        }
    }
}

TEST(Fuzzify, DefaultPartitionCorners) {
    const auto p = FuzzyPartition::standard();
    EXPECT_EQ(fuzzify(p, 0.5), (Degrees{0, 1, 0}));
    EXPECT_EQ(fuzzify(p, 0.0), (Degrees{1, 0, 0}));
    EXPECT_EQ(fuzzify(p, 1.0), (Degrees{0, 0, 1}));
}

TEST(Fuzzify, TriangularPartitionCorners) {
    const auto p = FuzzyPartition::triangular();
    EXPECT_EQ(fuzzify(p, 0.5), (Degrees{0, 1, 0}));
    EXPECT_EQ(fuzzify(p, 0.0), (Degrees{1, 0, 0}));
    EXPECT_EQ(fuzzify(p, 1.0), (Degrees{0, 0, 1}));
    const auto d = fuzzify(p, 0.25);
    EXPECT_DOUBLE_EQ(d[0], 0.5);
    EXPECT_DOUBLE_EQ(d[1], 0.5);
}

TEST(Fuzzify, EveryPointHasSomeMembership) {
    for (const auto& p : {FuzzyPartition::standard(), FuzzyPartition::triangular()}) {
        for (int i = 0; i <= 1000; ++i) {
            const auto d = p.degrees(i / 1000.0);
            EXPECT_GT(d[0] + d[1] + d[2], 0.0);
        }
    }
}

TEST(FuzzyPartition, RejectsGapsAndBadPeakOrder) {
    EXPECT_THROW(FuzzyPartition({0, 0, 0.1, 0.2}, {0.4, 0.5, 0.5, 0.6}, {0.8, 0.9, 1, 1}), ConfigError);
    EXPECT_THROW(FuzzyPartition({0.5, 1, 1, 1}, {0, 0.5, 0.5, 1}, {0, 0, 0, 0.5}), ConfigError);
}

TEST(FuzzyPartition, LabelOfTiesGoToMedium) {
    const auto p = FuzzyPartition::triangular();
    EXPECT_EQ(p.label_of(0.25), Label::Medium);
    EXPECT_EQ(p.label_of(0.75), Label::Medium);
    EXPECT_EQ(p.label_of(0.1), Label::Low);
    EXPECT_EQ(p.label_of(0.9), Label::High);
}

TEST(Label, ParseAndPrint) {
    EXPECT_EQ(parse_label("L"), Label::Low);
    EXPECT_EQ(parse_label("medium"), Label::Medium);
    EXPECT_EQ(parse_label("High"), Label::High);
    EXPECT_THROW(parse_label("X"), ConfigError);
    EXPECT_EQ(to_char(Label::Medium), 'M');
}
