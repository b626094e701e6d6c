#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "frtrust/semantic/overlay.hpp"

using namespace frtrust;
using namespace frtrust::semantic;

namespace {

Taxonomy chain() {
    return Taxonomy::from_edges({{"Node", std::nullopt}, {"Resource", "Node"}, {"File", "Resource"}, {"Image", "File"},
                                 {"Service", "Node"}});
}

// Set arithmetic by brute force over a small universe.
double brute_similarity(const std::vector<bool>& a, const std::vector<bool>& b, double alpha, double beta) {
    int inter = 0, only_a = 0, only_b = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        inter += a[i] && b[i];
        only_a += a[i] && !b[i];
        only_b += !a[i] && b[i];
    }
    const double den = inter + alpha * only_a + beta * only_b;
    if (den == 0.0) return (only_a == 0 && only_b == 0) ? 1.0 : 0.0;
    return inter / den;
}

ConceptSet to_set(const std::vector<bool>& bits) {
    ConceptSet s;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s.insert("c" + std::to_string(i));
    return s;
}

} // namespace

TEST(Closure, ChainToRoot) {
    EXPECT_EQ(closure({"Image"}, chain()), (ConceptSet{"Image", "File", "Resource", "Node"}));
}

TEST(Closure, RootsAndEmpty) {
    EXPECT_EQ(closure({"Node"}, chain()), (ConceptSet{"Node"}));
    EXPECT_EQ(closure({}, chain()), ConceptSet{});
    EXPECT_THROW(closure({"Nope"}, chain()), ConfigError);
}

TEST(Taxonomy, RejectsCyclesAndUnknownParents) {
    EXPECT_THROW(Taxonomy::from_edges({{"a", "b"}, {"b", "a"}}), ConfigError);
    EXPECT_THROW(Taxonomy::from_edges({{"a", "missing"}}), ConfigError);
}

TEST(Similarity, Examples) {
    EXPECT_DOUBLE_EQ(similarity({"a", "b"}, {"a", "b"}), 1.0);
    EXPECT_DOUBLE_EQ(similarity({"a"}, {"b"}), 0.0);
    EXPECT_DOUBLE_EQ(similarity({"a", "b", "c"}, {"a", "b", "d"}), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(similarity({}, {}), 1.0);
    EXPECT_DOUBLE_EQ(similarity({"a"}, {}), 0.0);
    EXPECT_THROW(similarity({"a"}, {"a"}, {-1.0, 0.5}), DomainError);
}

TEST(Similarity, MatchesBruteForceOracle) {
    std::mt19937_64 gen(21);
    std::uniform_int_distribution<int> size(0, 12);
    std::uniform_real_distribution<double> w(0.0, 2.0);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = static_cast<std::size_t>(size(gen));
        std::vector<bool> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = gen() & 1;
            b[i] = gen() & 1;
        }
        const double alpha = t % 2 ? 0.5 : w(gen), beta = t % 2 ? 0.5 : w(gen);
        const double got = similarity(to_set(a), to_set(b), {alpha, beta});
        EXPECT_EQ(got, brute_similarity(a, b, alpha, beta));
        EXPECT_GE(got, 0.0);
        EXPECT_LE(got, 1.0);
        EXPECT_DOUBLE_EQ(got, similarity(to_set(b), to_set(a), SimilarityParams{alpha, beta}.swapped()));
    }
}

TEST(Cluster, IdenticalSetsFormOneVO) {
    std::vector<NodeProfile> nodes;
    for (NodeId i = 0; i < 6; ++i) nodes.push_back({i, {"x", "y"}});
    const auto vos = cluster(nodes, 0.5);
    ASSERT_EQ(vos.size(), 1u);
    EXPECT_EQ(vos[0].members.size(), 6u);
}

TEST(Cluster, DisjointSetsAreSingletons) {
    std::vector<NodeProfile> nodes;
    for (NodeId i = 0; i < 5; ++i) nodes.push_back({i, {"c" + std::to_string(i)}});
    EXPECT_EQ(cluster(nodes, 0.1).size(), 5u);
}

TEST(Cluster, ThreeNodeExample) {
    const std::vector<NodeProfile> nodes{{1, {"a", "b", "c"}}, {2, {"a", "b", "d"}}, {3, {"z"}}};
    const auto vos = cluster(nodes, 0.5);
    ASSERT_EQ(vos.size(), 2u);
    EXPECT_EQ(vos[0].members, (std::vector<NodeId>{1, 2}));
    EXPECT_EQ(vos[1].members, (std::vector<NodeId>{3}));
    EXPECT_EQ(vos[0].coordinator, 1u);
    EXPECT_EQ(vos[1].coordinator, 3u);
}

TEST(Cluster, RejectsDuplicateIdsAndBadThreshold) {
    EXPECT_THROW(cluster({{1, {"a"}}, {1, {"b"}}}, 0.5), ConfigError);
    EXPECT_THROW(cluster({{1, {"a"}}}, 1.5), DomainError);
}

TEST(Cluster, PartitionPropertyAcrossThresholds) {
    std::mt19937_64 gen(4);
    std::vector<NodeProfile> nodes;
    for (NodeId i = 0; i < 100; ++i) {
        ConceptSet s;
        for (int c = 0; c < 10; ++c)
            if (gen() % 3 == 0) s.insert("c" + std::to_string(c));
        nodes.push_back({i * 7 % 101, s});
    }
    for (int k = 1; k <= 9; ++k) {
        const auto vos = cluster(nodes, k / 10.0);
        std::multiset<NodeId> seen;
        for (const auto& vo : vos) {
            EXPECT_FALSE(vo.members.empty());
            EXPECT_EQ(vo.coordinator, *std::min_element(vo.members.begin(), vo.members.end()));
            seen.insert(vo.members.begin(), vo.members.end());
        }
        std::multiset<NodeId> expect;
        for (const auto& n : nodes) expect.insert(n.id);
        EXPECT_EQ(seen, expect);
        EXPECT_EQ(vos.size(), cluster(nodes, k / 10.0).size());
    }
}

TEST(ElectCoordinator, Minimum) {
    VirtualOrganization vo{0, {7, 2, 9}, 0, 0.5};
    EXPECT_EQ(elect_coordinator(vo), 2u);
    EXPECT_EQ(elect_coordinator(vo), 2u);
    EXPECT_EQ(elect_coordinator({0, {4}, 0, 0.5}), 4u);
    EXPECT_THROW(elect_coordinator({0, {}, 0, 0.5}), ConfigError);
}

TEST(OverlayDocument, LoadsWithAndWithoutClosure) {
    const nlohmann::json j = nlohmann::json::parse(R"({
        "concepts": [{"id": "Node"}, {"id": "Resource", "parent": "Node"}, {"id": "Image", "parent": "Resource"}],
        "nodes": [{"id": 1, "concepts": ["Image"]}, {"id": 2, "concepts": ["Resource"]}]
    })");
    const auto closed = overlay_from_json(j);
    EXPECT_EQ(closed.nodes[0].concepts, (ConceptSet{"Image", "Resource", "Node"}));
    const auto raw = overlay_from_json(j, false);
    EXPECT_EQ(raw.nodes[0].concepts, (ConceptSet{"Image"}));
    EXPECT_THROW(overlay_from_json(nlohmann::json::parse(R"({"concepts": [], "nodes": [{"id": 1, "concepts": ["X"]}]})")),
                 ConfigError);
}
