#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "frtrust/sim/experiments.hpp"
#include "oracle.hpp"

using namespace frtrust;
using namespace frtrust::sim;

TEST(Table2, RowsAgainstReferenceValues) {
    const auto res = exp_table2(fuzzy::Engine{});
    ASSERT_EQ(res.size(), 10u);
    const auto o = oracle::default_fis();
    for (std::size_t i = 0; i < res.size(); ++i) {
        const auto& r = res[i];
        EXPECT_NEAR(r.computed.crisp, o.eval(r.row.p1, r.row.p2, r.row.p3), 1e-9);
        if (i < 4) {
            EXPECT_NEAR(r.computed.crisp, r.row.reference, 0.15) << i;
        } else {
            EXPECT_GE(r.computed.crisp, 0.65) << i;
            EXPECT_LE(r.computed.crisp, 0.9) << i;
        }
        if (i) {
            EXPECT_GE(r.computed.crisp, res[i - 1].computed.crisp);
        }
    }
    EXPECT_EQ(to_csv(res).str().rfind("p1,p2,p3,computed,label,reference,reference_other\n0.1,", 0), 0u);
}

TEST(Table3, BaselineColumnExact) {
    const auto rows = exp_table3(fuzzy::Engine{}, kTable3Y, unit_grid(11));
    ASSERT_EQ(rows.size(), 11u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_NEAR(rows[i].baseline, 0.2 + 0.1 * static_cast<double>(i), 1e-12);
        EXPECT_LE(rows[i].fr.crisp, 1.0);
        EXPECT_GE(rows[i].fr.crisp, 0.0);
    }
    EXPECT_NEAR(rows[5].baseline, 0.7, 1e-12);
    EXPECT_NEAR(rows[9].baseline, 1.1, 1e-12);
}

TEST(Table3, FuzzyRangeNarrowerThanBaseline) {
    const auto rows = exp_table3(fuzzy::Engine{}, kTable3Y, unit_grid(101));
    auto [flo, fhi] = std::minmax_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.fr.crisp < b.fr.crisp; });
    auto [blo, bhi] = std::minmax_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.baseline < b.baseline; });
    EXPECT_NEAR(bhi->baseline - blo->baseline, 1.0, 1e-12);
    EXPECT_LT(fhi->fr.crisp - flo->fr.crisp, 1.0);
    EXPECT_GT(flo->fr.crisp, 0.0);
    EXPECT_LT(fhi->fr.crisp, 1.0);
}

TEST(UnitGrid, EndpointsExact) {
    const auto g = unit_grid(101);
    ASSERT_EQ(g.size(), 101u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_EQ(g[50], 0.5);
}

TEST(Surface, GridShapeAndValues) {
    const fuzzy::Engine e;
    const auto s = exp_surface(e, 2, 0.5, 0.05);
    ASSERT_EQ(s.axis.size(), 21u);
    ASSERT_EQ(s.crisp.size(), 21u);
    for (std::size_t i = 0; i < 21; ++i) {
        ASSERT_EQ(s.crisp[i].size(), 21u);
        for (std::size_t j = 0; j < 21; j += 5) EXPECT_EQ(s.crisp[i][j], e.evaluate(s.axis[i], s.axis[j], 0.5).crisp);
    }
    const auto csv = to_csv(s).str();
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 22);
    EXPECT_EQ(csv.substr(0, 6), "p1/p2,");
    EXPECT_EQ(to_csv(exp_surface(e, 0, 0.3, 0.5)).str().substr(0, 6), "p2/p3,");
    EXPECT_THROW(exp_surface(e, 3, 0.5, 0.1), DomainError);
    EXPECT_THROW(exp_surface(e, 0, 0.5, 0.3), DomainError);
}

TEST(RmsSweep, NoiselessHonestSystemIsAccurate) {
    ScenarioConfig base;
    base.honest.spread = 0.0;
    const auto cells = exp_rms_sweep({0.5}, {0.0}, base, 3);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_LT(cells[0].mean, 0.1);
    EXPECT_EQ(cells[0].replicas, 3u);
}

TEST(RmsSweep, CellOrderAndCsv) {
    ScenarioConfig base;
    base.n_nodes = 30;
    base.rounds = 5;
    const auto cells = exp_rms_sweep({0.25, 0.75}, {0.0, 0.4}, base, 2);
    ASSERT_EQ(cells.size(), 4u);
    EXPECT_EQ(cells[1].alpha, 0.25);
    EXPECT_EQ(cells[1].fraction, 0.4);
    EXPECT_LE(cells[0].min, cells[0].mean);
    EXPECT_GE(cells[0].max, cells[0].mean);
    EXPECT_THROW(exp_rms_sweep({0.5}, {0.0}, base, 0), ConfigError);
}

TEST(Detection, SummaryAveragesReplicas) {
    ScenarioConfig c;
    c.n_nodes = 40;
    c.rounds = 10;
    c.malicious_fraction = 0.3;
    const auto s = exp_detection(c, 3);
    ASSERT_EQ(s.reports.size(), 3u);
    double sum = 0.0;
    for (const auto& r : s.reports) sum += *r.detection.precision;
    EXPECT_NEAR(*s.precision, sum / 3.0, 1e-12);
    const auto csv = to_csv(s).str();
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}
