#include <gtest/gtest.h>

#include <random>

#include "dpic/mutation.hpp"
#include "dpic/twists.hpp"

using namespace dpic;
using Q = Rational;

namespace {

TiltingComplex<Q> random_walk(const PathAlgebra<Q>& A, int len, std::mt19937_64& rng) {
    auto T = TiltingComplex<Q>::regular(A);
    for (int k = 0; k < len; ++k) T = silt_mutate(T, 1 + static_cast<int>(rng() % A.n()), rng() % 2 ? +1 : -1);
    return T;
}

}  // namespace

TEST(Mutation, LeftApproximationOfStalks) {
    const int m = 6;
    auto A = lambda_algebra<Q>(m);
    auto reg = TiltingComplex<Q>::regular(A);
    for (int j = 4; j <= m; ++j) {
        auto ap = minimal_approximation(reg, j, true);
        EXPECT_EQ(ap.target_labels, std::vector<int>{j - 1});
        EXPECT_TRUE(is_isomorphic(A, cone(A, ap.source, ap.target, ap.map),
                                  shift(two_term(A, j, j - 1, A.element("beta" + std::to_string(j))), 1))
                        .iso);
        EXPECT_TRUE(verify_approximation(reg, j, ap).empty());
    }
    auto ap3 = minimal_approximation(reg, 3, true);
    auto labels = ap3.target_labels;
    std::sort(labels.begin(), labels.end());
    EXPECT_EQ(labels, (std::vector<int>{1, 2}));
    EXPECT_TRUE(verify_approximation(reg, 3, ap3).empty());
    ProjComplex<Q> want;
    want.terms[-1] = {3};
    want.terms[0] = {1, 2};
    Mat<Q> d = zero_mat(A, {3}, {1, 2});
    d.at(0, 0) = A.element("alpha1");
    d.at(1, 0) = A.element("alpha2");
    want.d[-1] = d;
    EXPECT_TRUE(is_isomorphic(A, cone(A, ap3.source, ap3.target, ap3.map), want).iso);
}

TEST(Mutation, ApproximationCertificates) {
    std::mt19937_64 rng(1);
    auto A = lambda_algebra<Q>(5);
    for (int n = 0; n < 15; ++n) {
        auto T = random_walk(A, 3, rng);
        for (int j = 1; j <= 5; ++j)
            for (bool left : {true, false}) {
                auto ap = minimal_approximation(T, j, left);
                EXPECT_TRUE(verify_approximation(T, j, ap).empty());
            }
    }
}

TEST(Mutation, SquareAtFourIsTheTwist) {
    for (int m = 4; m <= 6; ++m) {
        auto A = lambda_algebra<Q>(m);
        auto reg = TiltingComplex<Q>::regular(A);
        auto T1 = silt_mutate(reg, 4, +1);
        EXPECT_TRUE(is_isomorphic(A, T1.summand(4), shift(two_term(A, 4, 3, A.element("beta4")), 1)).iso);
        auto T2 = silt_mutate(T1, 4, +1);
        EXPECT_TRUE(is_isomorphic(A, T2.summand(4), single_twist_complex(A, 4, 3)).iso);
    }
}

TEST(Mutation, RightUndoesLeft) {
    std::mt19937_64 rng(2);
    for (int m = 4; m <= 6; ++m) {
        auto A = lambda_algebra<Q>(m);
        for (int n = 0; n < 8; ++n) {
            auto T = random_walk(A, 1 + static_cast<int>(rng() % 3), rng);
            for (int j = 1; j <= m; ++j) {
                auto U = silt_mutate(T, j, +1);
                EXPECT_TRUE(is_tilting(A, U.summands()).ok);
                EXPECT_EQ(U.m(), m);
                std::string why;
                EXPECT_TRUE(same_summands(silt_mutate(U, j, -1), T, &why)) << why;
                EXPECT_TRUE(same_summands(silt_mutate(silt_mutate(T, j, -1), j, +1), T, &why)) << why;
            }
        }
    }
}

TEST(Mutation, LineToStarWord) {
    for (int m = 4; m <= 7; ++m) {
        auto R = r_algebra<Q>(m);
        MutationWord w;
        for (int k = m; k >= 4; --k) w.push(k, -1, k - 3);
        auto U = apply_mutations(TiltingComplex<Q>::regular(R), w);
        for (int i = 1; i <= m; ++i) {
            ProjComplex<Q> want;
            if (i <= 3) {
                want = stalk(R, i);
            } else {
                std::vector<int> labels;
                std::vector<Vec<Q>> maps;
                for (int k = 3; k <= i; ++k) labels.push_back(k);
                for (int k = 3; k < i; ++k) maps.push_back(R.element("gp" + std::to_string(k)));
                want = chain_complex(R, labels, maps, i - 3);
            }
            EXPECT_TRUE(is_isomorphic(R, U.summand(i), want).iso) << m << " U" << i;
        }
        EXPECT_EQ(endo_data(U).cartan(), lambda_algebra<Q>(m).cartan());
    }
}

TEST(Mutation, EndomorphismData) {
    const int m = 5;
    auto A = lambda_algebra<Q>(m);
    auto reg = TiltingComplex<Q>::regular(A);
    auto E = endo_data(reg);
    EXPECT_EQ(E.cartan(), A.cartan());
    // composition on stalks is the algebra multiplication
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            for (int k = 1; k <= m; ++k)
                for (int p = 0; p < A.dim(i, j); ++p)
                    for (int q = 0; q < A.dim(j, k); ++q)
                        EXPECT_EQ(E.basis_product(i, j, k, p, q), A.tab.basis_product(i, j, k, p, q));

    auto T2 = silt_mutate(reg, 2, +1);
    auto want = compute_basis(build_presentation<Q>(mutate_tree(gamma_tree(m), 2, +1))).cartan();
    EXPECT_EQ(endo_data(T2).cartan(), want);
    EXPECT_TRUE(is_isomorphic(A, T2.summand(2), shift(two_term(A, 2, m, A.element("delta2")), 1)).iso);
}

TEST(Mutation, CrossValidateFixtures) {
    const int m = 5;
    auto g = gamma_tree(m);
    auto r1 = cross_validate<Q>(g, 1);
    EXPECT_EQ(r1.rule, 2);
    EXPECT_EQ(r1.to, TreeKind::TripleTree);
    EXPECT_TRUE(r1.ok());
    auto A = lambda_algebra<Q>(m);
    EXPECT_TRUE(is_isomorphic(A, silt_mutate(TiltingComplex<Q>::regular(A), 1, +1).summand(1),
                              shift(two_term(A, 1, m, A.element("delta1")), 1))
                    .iso);
    auto r3 = cross_validate<Q>(g, 3);
    EXPECT_EQ(r3.rule, 3);
    EXPECT_TRUE(r3.ok());

    int seen = 0;
    for (const auto& t : enumerate_shapes(m)) {
        if (t.kind != TreeKind::TripleTree) continue;
        for (int j : t.central)
            if (rule_case(t, j) == 5) {
                auto r = cross_validate<Q>(t, j);
                EXPECT_EQ(r.rule, 5);
                EXPECT_EQ(r.to, TreeKind::DoubleEdge);
                EXPECT_TRUE(r.ok());
                ++seen;
            }
    }
    EXPECT_GT(seen, 0);
}

TEST(Mutation, CrossValidateExhaustiveSmall) {
    for (int m = 4; m <= 5; ++m)
        for (const auto& t : enumerate_shapes(m))
            for (int j = 1; j <= m; ++j)
                for (int dir : {+1, -1}) {
                    auto r = cross_validate<Q>(t, j, dir);
                    EXPECT_TRUE(r.ok()) << tree_to_text(t) << " j=" << j << " dir=" << dir << " rule " << r.rule;
                }
}

TEST(Mutation, TiltingAlongRandomWalks) {
    std::mt19937_64 rng(3);
    for (int m = 4; m <= 6; ++m) {
        auto A = lambda_algebra<Q>(m);
        auto T = TiltingComplex<Q>::regular(A);
        for (int k = 0; k < 10; ++k) {
            T = silt_mutate(T, 1 + static_cast<int>(rng() % m), rng() % 2 ? +1 : -1);
            EXPECT_EQ(T.m(), m);
            EXPECT_TRUE(is_tilting(A, T.summands()).ok);
            for (int i = 1; i <= m; ++i)
                for (int j = i + 1; j <= m; ++j) EXPECT_FALSE(is_isomorphic(A, T.summand(i), T.summand(j)).iso);
        }
    }
}
