#include <gtest/gtest.h>

#include "dpic/cases.hpp"
#include "dpic/twists.hpp"
#include "dpic/verify.hpp"

using namespace dpic;
using Q = Rational;

namespace {

struct Star {
    PathAlgebra<Q> A;
    TwistFrame<Q> fr;
    explicit Star(int m) : A(lambda_algebra<Q>(m)), fr(A) {}
    TwistState<Q> eval(const std::string& w) const { return eval_gword(fr, GWord::parse(w)); }
};

bool is_regular(const TiltingComplex<Q>& T) {
    for (int l = 1; l <= T.m(); ++l) {
        const auto& X = T.summand(l);
        if (X.size() != 1 || X.lo() != 0 || X.at(0)[0] != l) return false;
    }
    return true;
}

}  // namespace

TEST(Twists, WordSyntax) {
    auto w = GWord::parse("s1 s2^-1 t k(-1) sh(-2)");
    EXPECT_EQ(w.str(), "s1 s2^-1 t k(-1) sh(-2)");
    EXPECT_EQ(w.letters.size(), 5u);
    EXPECT_EQ(GWord::parse("").letters.size(), 0u);
    EXPECT_THROW(GWord::parse("s1 x"), std::invalid_argument);
    EXPECT_THROW(GWord::parse("k(0)"), std::invalid_argument);
    Star S(4);
    EXPECT_THROW(S.eval("s5"), std::out_of_range);
}

TEST(Twists, EmptyWord) {
    Star S(5);
    auto s = S.eval("");
    EXPECT_TRUE(is_regular(s.T));
    EXPECT_EQ(s.unit, 1);
    EXPECT_EQ(s.shift, 0);
}

TEST(Twists, Recipes) {
    EXPECT_EQ(twist_recipe(6, 4, +1).str(), "4+ 4+");
    EXPECT_THROW(twist_recipe(6, 7, +1), std::out_of_range);
    // t4 t4 is not the fourth power of mu4
    Star S(5);
    auto reg = TiltingComplex<Q>::regular(S.A);
    auto tt = S.eval("s4 s4");
    EXPECT_TRUE(same_summands(tt.T, apply_mutations(reg, MutationWord::parse("4+ 4+ 3+ 3+"))));
    EXPECT_NE(endo_data(apply_mutations(reg, MutationWord::parse("4+ 4+ 4+ 4+"))).cartan(), S.A.cartan());
}

TEST(Twists, SingleTwistsMatchClosedForms) {
    for (int m = 4; m <= 6; ++m) {
        Star S(m);
        for (int i = 1; i <= m; ++i) {
            auto s = eval_gword(S.fr, GWord().s(i));
            for (int j = 1; j <= m; ++j)
                EXPECT_TRUE(is_isomorphic(S.A, s.T.summand(j), single_twist_complex(S.A, i, j)).iso) << m << " t" << i << " P" << j;
        }
    }
}

TEST(Twists, InversePairs) {
    for (int m = 4; m <= 6; ++m) {
        Star S(m);
        for (int i = 1; i <= m; ++i) {
            EXPECT_TRUE(is_regular(eval_gword(S.fr, GWord().s(i).s(i, -1)).T)) << m << " " << i;
            EXPECT_TRUE(is_regular(eval_gword(S.fr, GWord().s(i, -1).s(i)).T)) << m << " " << i;
        }
    }
}

TEST(Twists, WrapFamily) {
    for (int m = 4; m <= 6; ++m) {
        Star S(m);
        for (int k = 1; k <= m - 3; ++k) {
            auto s = eval_gword(S.fr, f_word(m, k));
            EXPECT_EQ(s.shift, -2 * k);
            std::vector<ProjComplex<Q>> want;
            for (int i = 1; i <= m; ++i) want.push_back(wrap_complex(S.A, k, i));
            std::string why;
            EXPECT_TRUE(pic_equal(s.T, TiltingComplex<Q>(&S.A, want), PicMode::Pic, &why)) << m << " k=" << k << " " << why;
        }
        EXPECT_THROW(wrap_complex(S.A, m - 2, 1), std::out_of_range);
    }
}

TEST(Twists, BraidRelationsOnStates) {
    Star S(5);
    EXPECT_TRUE(is_regular(S.eval("s1 s3 s1 s3^-1 s1^-1 s3^-1").T));
    EXPECT_TRUE(is_regular(S.eval("s4 s5 s4 s5^-1 s4^-1 s5^-1").T));
    EXPECT_TRUE(is_regular(S.eval("s1 s2 s1^-1 s2^-1").T));
    EXPECT_TRUE(is_regular(S.eval("s1 s4 s1^-1 s4^-1").T));
}

TEST(Twists, PicEquality) {
    Star S(5);
    auto a = S.eval("s1");
    EXPECT_TRUE(pic_equal(a, a, PicMode::Pic0));
    EXPECT_TRUE(pic_equal(a, S.eval("t s2 t"), PicMode::Pic));
    EXPECT_FALSE(pic_equal(a, S.eval("s1 sh(1)"), PicMode::Pic));
    for (int i = 3; i <= 5; ++i) {
        auto w = "s" + std::to_string(i);
        EXPECT_TRUE(pic_equal(S.eval("t " + w), S.eval(w + " t"), PicMode::Pic)) << i;
    }
    EXPECT_TRUE(pic_equal(S.eval("s1 t"), S.eval("t s2"), PicMode::Pic));
    EXPECT_FALSE(pic_equal(S.eval("s3"), S.eval("s4"), PicMode::Pic));
}

TEST(Twists, SphericalTwistsOnLine) {
    for (int m = 4; m <= 6; ++m) {
        auto R = r_algebra<Q>(m);
        for (int i = 1; i <= m; ++i) EXPECT_TRUE(is_isomorphic(R, spherical_twist(R, i, stalk(R, i)), stalk(R, i, -1)).iso);
        for (int i = 3; i < m; ++i)
            EXPECT_TRUE(is_isomorphic(R, coxeter_twist_power(R, stalk(R, i), 1), stalk(R, i + 1, -1)).iso) << m << " " << i;
        EXPECT_TRUE(is_isomorphic(R, coxeter_twist_power(R, stalk(R, m), 2), stalk(R, 3, -m)).iso);
        for (int i = 1; i <= m; ++i) {
            int want = (m % 2 == 1 && i <= 2) ? 3 - i : i;
            EXPECT_TRUE(is_isomorphic(R, coxeter_twist_power(R, stalk(R, i), m - 1), stalk(R, want, -(2 * m - 3))).iso)
                << m << " " << i;
        }
    }
}

TEST(Twists, CaseClassification) {
    const int m = 6;
    auto g = gamma_tree(m);
    EXPECT_EQ(classify_case(g, 3).kind, CaseKind::DE2a);
    EXPECT_EQ(classify_case(g, 1).kind, CaseKind::DE2c);
    EXPECT_EQ(classify_case(g, 2).kind, CaseKind::DE2c);
    int seen = 0;
    for (const auto& s : enumerate_shapes(m)) {
        if (s.kind != TreeKind::TripleTree) continue;
        auto t = standardize(s);
        if (level_functions(t).sizes[2] != 0) continue;
        EXPECT_EQ(classify_case(t, m).kind, CaseKind::TT3c) << tree_to_text(t);
        ++seen;
    }
    EXPECT_GT(seen, 0);
    for (auto k : table_cases()) EXPECT_EQ(case_from_name(case_name(k)), k);
}

TEST(Twists, CaseWords) {
    CaseId c;
    c.m = 6;
    c.kind = CaseKind::DE1a;
    EXPECT_TRUE(case_twist_word(c).letters.empty());
    c.kind = CaseKind::DE1b;
    c.j = 4;
    EXPECT_EQ(case_twist_word(c).str(), "s4");
    c.kind = CaseKind::TT4c;
    c.l = 4;
    auto printed = case_twist_word(c, WordSource::Printed);
    auto want = GWord().s(2).s(1).append(wrap_block(6).power(2)).sh(-6);
    EXPECT_EQ(printed, want);
}

TEST(Twists, CaseReplaysOnSmallTrees) {
    Star S(5);
    int n = 0;
    for (const auto& s : enumerate_shapes(5))
        for (int rot = 0; rot < num_standard_labelings(s); ++rot) {
            auto G = relabel(s, standard_labeling_rotated(s, rot).inverse());
            for (int j = 1; j <= 5; ++j) {
                auto r = check_case(S.fr, G, j);
                EXPECT_TRUE(r.ok) << r.id.str() << " " << r.detail;
                ++n;
            }
        }
    EXPECT_GT(n, 20);
}

TEST(Twists, Decompose) {
    Star S(5);
    auto d = decompose(S.fr, MutationWord::parse("4+ 4+"));
    EXPECT_EQ(d.word.str(), "s4");
    EXPECT_TRUE(decompose(S.fr, MutationWord{}).word.letters.empty());
    auto d2 = decompose(S.fr, MutationWord::parse("2+ 2+"));
    EXPECT_TRUE(pic_equal(eval_gword(S.fr, d2.word), S.eval("s1^-1 s3^-1 s1^-1 s4^-1 s5^-1 sh(2)"), PicMode::Pic));
    auto reg = TiltingComplex<Q>::regular(S.A);
    std::mt19937_64 rng(8);
    for (int n = 0; n < 10; ++n) {
        auto w = verify::random_closed_word(5, rng, 4);
        auto dw = decompose(S.fr, w);
        auto replay = apply_mutations(reg, w).relabeled(dw.final_labels.inverse());
        EXPECT_TRUE(pic_equal(eval_gword(S.fr, dw.word).T, replay, PicMode::Pic)) << w.str();
    }
    // a word that does not come back to the star algebra
    EXPECT_THROW(decompose(S.fr, MutationWord::parse("1+")), std::invalid_argument);
}
