#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dpic/mutation.hpp"
#include "dpic/tree.hpp"

using namespace dpic;

namespace {

std::set<int> follower_labels(const ModifiedBrauerTree& t, int j) {
    auto v = following_edges(t, j);
    return {v.begin(), v.end()};
}

// Brute-force follower: walk the rotation at each end of j directly.
std::set<int> follower_walk(const ModifiedBrauerTree& t, int j) {
    std::set<int> s;
    int e = t.edge_of(j);
    for (int w : {t.edges[e].u, t.edges[e].v}) {
        const auto& r = t.rot[w];
        if (r.size() < 2) continue;
        auto it = std::find(r.begin(), r.end(), e);
        int f = r[(it - r.begin() + 1) % r.size()];
        for (int l : t.edges[f].labels) s.insert(l);
    }
    return s;
}

// Per label: the label sets at its two ends, with the edge of j left out.
// Vertex ids are not stable under mutation, these are.
std::vector<std::set<std::set<int>>> end_signature(const ModifiedBrauerTree& t, int j) {
    const int ej = t.edge_of(j);
    std::vector<std::set<std::set<int>>> sig(t.m + 1);
    for (int l = 1; l <= t.m; ++l) {
        const auto& e = t.edges[t.edge_of(l)];
        for (int w : {e.u, e.v}) {
            std::set<int> at;
            for (int f : t.rot[w])
                if (f != ej)
                    for (int x : t.edges[f].labels) at.insert(x);
            sig[l].insert(at);
        }
    }
    return sig;
}

}  // namespace

TEST(Trees, StarIsValid) {
    for (int m = 4; m <= 8; ++m) {
        EXPECT_TRUE(validate_tree(gamma_tree(m)).empty()) << m;
        EXPECT_TRUE(validate_tree(line_tree(m)).empty()) << m;
    }
}

TEST(Trees, DuplicateLabelIsReported) {
    auto t = gamma_tree(5);
    t.edges[t.edge_of(4)].labels = {3};
    auto d = validate_tree(t);
    EXPECT_NE(std::find(d.begin(), d.end(), "labels not bijective"), d.end());
}

TEST(Trees, TripleWithBrokenCentralPatternIsReported) {
    auto t = mutate_tree(gamma_tree(6), 1, +1);
    ASSERT_EQ(t.kind, TreeKind::TripleTree);
    ASSERT_TRUE(validate_tree(t).empty());
    // reverse a root rotation that holds two central edges and something else
    bool broke = false;
    for (int w = 0; w < t.num_vertices() && !broke; ++w) {
        int c = 0;
        for (int e : t.rot[w])
            for (int l : t.central)
                if (t.edges[e].labels[0] == l) ++c;
        if (c == 2 && t.rot[w].size() >= 3) {
            std::reverse(t.rot[w].begin(), t.rot[w].end());
            broke = true;
        }
    }
    ASSERT_TRUE(broke);
    EXPECT_FALSE(validate_tree(t).empty());
}

TEST(Trees, StarFollowers) {
    auto t = gamma_tree(6);
    // pendant 4 at the center: followed by 3, preceded by 5
    EXPECT_EQ(follower_labels(t, 4), (std::set<int>{3}));
    auto pre = preceding_edges(t, 4);
    EXPECT_EQ(std::set<int>(pre.begin(), pre.end()), (std::set<int>{5}));
    auto f3 = follower_labels(t, 3);
    EXPECT_TRUE(f3.count(1) && f3.count(2));
    for (int m = 4; m <= 7; ++m) {
        auto g = gamma_tree(m);
        for (int j = 3; j <= m; ++j) EXPECT_EQ(follower_labels(g, j), follower_walk(g, j)) << m << " " << j;
    }
}

TEST(Trees, FollowersMatchRotationWalkOnRandomTrees) {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 200; ++n) {
        int m = 4 + static_cast<int>(rng() % 5);
        auto t = random_tree(m, rng);
        if (t.kind != TreeKind::DoubleEdge) continue;
        for (int j = 3; j <= m; ++j) EXPECT_EQ(follower_labels(t, j), follower_walk(t, j));
    }
}

TEST(Trees, MutateStarAtDoubleEdgeGivesTriple) {
    for (int m = 4; m <= 7; ++m) {
        auto g = gamma_tree(m);
        auto t = mutate_tree(g, 1, +1);
        EXPECT_EQ(t.kind, TreeKind::TripleTree);
        std::set<int> c(t.central.begin(), t.central.end());
        EXPECT_TRUE(c.count(1) && c.count(2));
        // the third one follows the double edge in the star
        int k = 0;
        for (int l : c)
            if (l > 2) k = l;
        EXPECT_TRUE(follower_labels(g, 1).count(k)) << m;
    }
}

TEST(Trees, MutateStarAtThreeMovesDoubleEdge) {
    // 3 slides past the double edge: the double edge now precedes 3
    auto t = mutate_tree(gamma_tree(5), 3, +1);
    EXPECT_EQ(t.kind, TreeKind::DoubleEdge);
    EXPECT_TRUE(validate_tree(t).empty());
    EXPECT_EQ(follower_labels(t, 1), (std::set<int>{3}));
    EXPECT_EQ(follower_labels(t, 3), (std::set<int>{5}));
    EXPECT_EQ(t.degree(t.edges[t.double_edge()].v), 1);
}

TEST(Trees, RoundTripAndSingleEdgeMoves) {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int n = 0; n < 1000; ++n) {
        int m = 4 + static_cast<int>(rng() % 5);
        auto t = random_tree(m, rng);
        ASSERT_TRUE(validate_tree(t).empty());
        for (int j = 1; j <= m; ++j)
            for (int dir : {+1, -1}) {
                auto u = mutate_tree(t, j, dir);
                EXPECT_TRUE(validate_tree(u).empty());
                EXPECT_TRUE(same_labeled(mutate_tree(u, j, -dir), t));
                if (t.kind == u.kind) {
                    auto a = end_signature(t, j), b = end_signature(u, j);
                    for (int l = 1; l <= m; ++l)
                        if (t.edges[t.edge_of(l)].labels != t.edges[t.edge_of(j)].labels) EXPECT_EQ(a[l], b[l]) << l;
                }
                ++checked;
            }
    }
    EXPECT_GE(checked, 1000);
}

TEST(Trees, KindTransitions) {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 300; ++n) {
        int m = 4 + static_cast<int>(rng() % 4);
        auto t = random_tree(m, rng);
        for (int j = 1; j <= m; ++j) {
            int c = rule_case(t, j);
            auto u = mutate_tree(t, j, +1);
            if (c == 2) EXPECT_EQ(u.kind, TreeKind::TripleTree);
            else if (c == 5) EXPECT_EQ(u.kind, TreeKind::DoubleEdge);
            else EXPECT_EQ(u.kind, t.kind) << "case " << c;
        }
    }
}

TEST(Trees, Relabel) {
    auto g = gamma_tree(6);
    EXPECT_TRUE(same_labeled(relabel(g, LabelPermutation(6)), g));
    auto sw = relabel(g, LabelPermutation::transposition(6, 1, 2));
    EXPECT_TRUE(same_labeled(sw, g));  // the pair is unordered on the double edge
    EXPECT_EQ(sw.edges[sw.double_edge()].labels, (std::vector<int>{1, 2}));

    std::mt19937_64 rng(5);
    for (int n = 0; n < 200; ++n) {
        int m = 4 + static_cast<int>(rng() % 4);
        auto t = random_tree(m, rng);
        LabelPermutation p(m), q(m);
        std::vector<int> a(m), b(m);
        for (int i = 0; i < m; ++i) a[i] = b[i] = i + 1;
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        for (int i = 1; i <= m; ++i) p.img[i] = a[i - 1], q.img[i] = b[i - 1];
        EXPECT_TRUE(same_labeled(relabel(t, p * q), relabel(relabel(t, q), p)));
        EXPECT_TRUE(same_labeled(relabel(relabel(t, p), p.inverse()), t));
    }
}

TEST(Trees, StandardLabelings) {
    for (int m = 4; m <= 7; ++m) {
        auto g = gamma_tree(m);
        auto p = standard_labeling(g);
        for (int i = 1; i <= m; ++i) EXPECT_EQ(p(i), i);
        EXPECT_TRUE(same_labeled(standardize(line_tree(m)), line_tree(m)));
    }
}

TEST(Trees, ShapeEnumeration) {
    // shapes reachable from the star; the count grows and each is valid
    std::size_t prev = 0;
    for (int m = 4; m <= 7; ++m) {
        auto s = enumerate_shapes(m);
        EXPECT_GT(s.size(), prev);
        prev = s.size();
        std::set<std::string> keys;
        for (const auto& t : s) {
            EXPECT_TRUE(validate_tree(t).empty());
            keys.insert(shape_key(t));
        }
        EXPECT_EQ(keys.size(), s.size());
    }
}

TEST(Trees, TextRoundTrip) {
    std::mt19937_64 rng(9);
    for (int n = 0; n < 200; ++n) {
        auto t = random_tree(4 + static_cast<int>(rng() % 5), rng);
        auto u = tree_from_text(tree_to_text(t));
        EXPECT_TRUE(same_labeled(t, u));
        EXPECT_EQ(tree_to_text(u), tree_to_text(t));
    }
    EXPECT_THROW(tree_from_text("{\"kind\":\"double_edge\",\"m\":5,\"rotations\":{\"v0\":[3,\"D:1,2\"]}}"),
                 std::invalid_argument);
}

TEST(Trees, MutationWordParse) {
    auto w = MutationWord::parse("4+ 4+ 3- 2+");
    EXPECT_EQ(w.str(), "4+ 4+ 3- 2+");
    EXPECT_EQ(w.inverse().str(), "2- 3+ 4- 4-");
    EXPECT_THROW(MutationWord::parse("4x"), std::invalid_argument);
}
