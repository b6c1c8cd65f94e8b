#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "dpic/artin.hpp"
#include "dpic/twists.hpp"
#include "dpic/verify.hpp"

using namespace dpic;
using Q = Rational;

namespace {

using SP = SignedPermutation;

// Breadth-first search over W(D_m) from the identity; distance = word length.
std::map<std::vector<int>, int> coxeter_ball(int m) {
    std::map<std::vector<int>, int> dist;
    auto key = [m](const SP& w) {
        std::vector<int> k;
        for (int i = 1; i <= m; ++i) k.push_back(w(i));
        return k;
    };
    std::deque<SP> q{SP::identity(m)};
    dist[key(q.front())] = 0;
    while (!q.empty()) {
        SP w = q.front();
        q.pop_front();
        int d = dist[key(w)];
        for (int i = 1; i <= m; ++i) {
            SP v = w * SP::generator(m, i);
            if (dist.emplace(key(v), d + 1).second) q.push_back(v);
        }
    }
    return dist;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

GWord random_braid(int m, std::mt19937_64& rng, int max_len) { return verify::random_gword(m, rng, max_len, false); }

// Image in W of a braid word, and of a normal form.
SP word_image(int m, const GWord& w) {
    SP x = SP::identity(m);
    for (const auto& l : w.letters)
        for (int r = 0; r < std::abs(l.exp); ++r) x = x * SP::generator(m, l.index);
    return x;
}

SP nf_image(const GreedyNormalForm& nf) {
    SP x = SP::identity(nf.m);
    const SP w0 = SP::longest(nf.m);
    for (int r = 0; r < std::abs(nf.p); ++r) x = x * w0;
    for (const auto& f : nf.factors) x = x * f;
    return x;
}

// Exponent sum, a homomorphism to Z.
long exponent_sum(const GWord& w) {
    long s = 0;
    for (const auto& l : w.letters) s += l.exp;
    return s;
}

long nf_exponent_sum(const GreedyNormalForm& nf) {
    long s = static_cast<long>(nf.p) * SP::longest(nf.m).length();
    for (const auto& f : nf.factors) s += f.length();
    return s;
}

bool adjacent(int i, int j) {
    if (i > j) std::swap(i, j);
    if (i <= 2) return j == 3;
    return j == i + 1;
}

int order(const SP& x) {
    SP y = x;
    int n = 1;
    while (!y.is_identity()) y = y * x, ++n;
    return n;
}

}  // namespace

TEST(Artin, SignedPermutationConstruction) {
    EXPECT_NO_THROW(SP(std::vector<int>{0, -2, -1, 3, 4}));
    EXPECT_THROW(SP(std::vector<int>{0, -1, 2, 3, 4}), std::invalid_argument);
    EXPECT_THROW(SP(std::vector<int>{0, 1, 1, 3, 4}), std::invalid_argument);
    EXPECT_THROW(SP(std::vector<int>{0, 1, 2, 3, 5}), std::invalid_argument);
    EXPECT_THROW(SP::generator(4, 5), std::out_of_range);
    EXPECT_EQ(SP::identity(5).length(), 0);
}

TEST(Artin, CoxeterRelations) {
    for (int m = 4; m <= 8; ++m)
        for (int i = 1; i <= m; ++i) {
            const SP si = SP::generator(m, i);
            EXPECT_EQ(order(si), 2);
            EXPECT_EQ(si.length(), 1);
            for (int j = i + 1; j <= m; ++j)
                EXPECT_EQ(order(si * SP::generator(m, j)), adjacent(i, j) ? 3 : 2) << m << " " << i << " " << j;
        }
}

TEST(Artin, GroupOrderAndLength) {
    for (int m = 4; m <= 6; ++m) {
        auto ball = coxeter_ball(m);
        EXPECT_EQ(static_cast<long>(ball.size()), (1L << (m - 1)) * factorial(m));
        int maxlen = 0;
        for (const auto& [img, d] : ball) {
            std::vector<int> v{0};
            v.insert(v.end(), img.begin(), img.end());
            SP w(v);
            EXPECT_EQ(w.length(), d);
            maxlen = std::max(maxlen, d);
        }
        EXPECT_EQ(maxlen, m * (m - 1));
        EXPECT_EQ(SP::longest(m).length(), maxlen);
    }
    EXPECT_EQ(coxeter_ball(4).size(), 192u);
}

TEST(Artin, GroupAxiomsSampled) {
    std::mt19937_64 rng(11);
    for (int m = 4; m <= 7; ++m) {
        auto rnd = [&] { return word_image(m, random_braid(m, rng, 20)); };
        for (int n = 0; n < 200; ++n) {
            SP a = rnd(), b = rnd(), c = rnd();
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_TRUE((a * a.inverse()).is_identity());
            EXPECT_TRUE((a.inverse() * a).is_identity());
            EXPECT_EQ(a * SP::identity(m), a);
            EXPECT_LE((a * b).length(), a.length() + b.length());
            EXPECT_EQ(a.inverse().length(), a.length());
        }
    }
}

TEST(Artin, LongestElement) {
    for (int m = 4; m <= 8; ++m) {
        const SP w0 = SP::longest(m);
        EXPECT_TRUE((w0 * w0).is_identity());
        bool minus = true;
        for (int i = 1; i <= m; ++i) minus = minus && w0(i) == -i;
        EXPECT_EQ(minus, m % 2 == 0);
        if (m % 2) {
            EXPECT_EQ(w0(1), 1);
            for (int i = 2; i <= m; ++i) EXPECT_EQ(w0(i), -i);
        }
        EXPECT_EQ(w0.right_descents().size(), static_cast<std::size_t>(m));
        EXPECT_EQ(w0.left_descents().size(), static_cast<std::size_t>(m));
        // greedy ascent from e ends at w0
        SP w = SP::identity(m);
        for (bool grew = true; grew;) {
            grew = false;
            for (int i = 1; i <= m && !grew; ++i)
                if (!w.right_descent(i)) w = w * SP::generator(m, i), grew = true;
        }
        EXPECT_EQ(w, w0);
    }
}

TEST(Artin, ReducedWords) {
    std::mt19937_64 rng(12);
    for (int m = 4; m <= 7; ++m)
        for (int n = 0; n < 100; ++n) {
            SP w = word_image(m, random_braid(m, rng, 25));
            auto r = w.reduced_word();
            EXPECT_EQ(static_cast<int>(r.size()), w.length());
            EXPECT_EQ(coxeter_product(m, r), w);
            for (int i = 1; i <= m; ++i) {
                bool by_len = (w * SP::generator(m, i)).length() < w.length();
                EXPECT_EQ(w.right_descent(i), by_len);
            }
        }
}

TEST(Artin, RelatorsNormalizeToIdentity) {
    for (int m = 4; m <= 8; ++m) {
        auto rel = braid_relators(m);
        EXPECT_EQ(static_cast<int>(rel.size()), m * (m - 1) / 2);
        for (const auto& w : rel) EXPECT_TRUE(greedy_nf(m, w).is_identity()) << w.str();
    }
    EXPECT_THROW(greedy_nf(5, GWord::parse("s1 t")), std::invalid_argument);
    EXPECT_THROW(greedy_nf(5, GWord::parse("s6")), std::out_of_range);
    EXPECT_THROW(nf_identity(3), std::invalid_argument);
}

TEST(Artin, NormalFormShape) {
    std::mt19937_64 rng(13);
    for (int m = 4; m <= 6; ++m) {
        const SP w0 = SP::longest(m);
        for (int n = 0; n < 200; ++n) {
            auto w = random_braid(m, rng, 30);
            auto nf = greedy_nf(m, w);
            for (std::size_t k = 0; k < nf.factors.size(); ++k) {
                EXPECT_FALSE(nf.factors[k].is_identity());
                EXPECT_NE(nf.factors[k], w0);
                if (k + 1 < nf.factors.size())
                    for (int i = 1; i <= m; ++i)
                        if (nf.factors[k + 1].left_descent(i)) EXPECT_TRUE(nf.factors[k].right_descent(i));
            }
            // the two homomorphisms out of the braid group
            EXPECT_EQ(nf_image(nf), word_image(m, w)) << w.str();
            EXPECT_EQ(nf_exponent_sum(nf), exponent_sum(w)) << w.str();
        }
    }
}

TEST(Artin, InversePairs) {
    std::mt19937_64 rng(14);
    for (int n = 0; n < 10000; ++n) {
        auto w = random_braid(5, rng, 30);
        auto ww = w;
        ww.append(w.inverse());
        EXPECT_TRUE(greedy_nf(5, ww).is_identity()) << w.str();
    }
}

TEST(Artin, RelatorInsertion) {
    std::mt19937_64 rng(15);
    for (int m = 4; m <= 6; ++m) {
        auto rel = braid_relators(m);
        for (int n = 0; n < 300; ++n) {
            auto w = random_braid(m, rng, 20);
            const auto& r = rel[rng() % rel.size()];
            std::size_t at = w.letters.size() ? rng() % (w.letters.size() + 1) : 0;
            GWord v;
            v.letters.assign(w.letters.begin(), w.letters.begin() + at);
            v.append(rng() % 2 ? r : r.inverse());
            v.letters.insert(v.letters.end(), w.letters.begin() + at, w.letters.end());
            EXPECT_TRUE(nf_equal(greedy_nf(m, w), greedy_nf(m, v))) << w.str() << " | " << v.str();
        }
    }
}

TEST(Artin, MultiplyAndInvertAreConsistent) {
    std::mt19937_64 rng(16);
    for (int m = 4; m <= 6; ++m)
        for (int n = 0; n < 200; ++n) {
            auto u = random_braid(m, rng, 15), v = random_braid(m, rng, 15), x = random_braid(m, rng, 15);
            auto a = greedy_nf(m, u), b = greedy_nf(m, v), c = greedy_nf(m, x);
            auto uv = u;
            uv.append(v);
            EXPECT_EQ(nf_multiply(a, b), greedy_nf(m, uv));
            EXPECT_EQ(nf_invert(a), greedy_nf(m, u.inverse()));
            EXPECT_EQ(nf_multiply(nf_multiply(a, b), c), nf_multiply(a, nf_multiply(b, c)));
            EXPECT_TRUE(nf_multiply(a, nf_invert(a)).is_identity());
            // congruence: equal inputs give equal products
            auto a2 = greedy_nf(m, GWord(u).append(braid_relators(m)[0]));
            EXPECT_TRUE(nf_equal(nf_multiply(a2, b), nf_multiply(a, b)));
        }
}

TEST(Artin, DeltaIsTheLongestLift) {
    std::mt19937_64 rng(17);
    for (int m = 4; m <= 7; ++m) {
        GWord dw;
        for (int i : SP::longest(m).reduced_word()) dw.s(i);
        auto D = greedy_nf(m, dw);
        EXPECT_EQ(D.p, 1);
        EXPECT_TRUE(D.factors.empty());
        for (int n = 0; n < 50; ++n) {
            auto w = random_braid(m, rng, 15);
            auto wd = w;
            wd.append(dw);
            EXPECT_EQ(nf_times_delta(greedy_nf(m, w), 1), greedy_nf(m, wd));
            auto wdi = w;
            wdi.append(dw.inverse());
            EXPECT_EQ(nf_times_delta(greedy_nf(m, w), -1), greedy_nf(m, wdi));
        }
    }
}

// Delta sigma_i Delta^-1 fixes sigma_i for m even and trades sigma_1, sigma_2 for m odd.
TEST(Artin, DeltaConjugation) {
    for (int m = 4; m <= 8; ++m) {
        GWord dw;
        for (int i : SP::longest(m).reduced_word()) dw.s(i);
        const bool minus = m % 2 == 0;
        for (int i = 1; i <= m; ++i) {
            auto c = dw;
            c.s(i).append(dw.inverse());
            int want = (!minus && i <= 2) ? 3 - i : i;
            EXPECT_EQ(greedy_nf(m, c), greedy_nf(m, GWord().s(want))) << m << " " << i;
        }
        const auto& rec = delta_record(m);
        EXPECT_EQ(rec.w0_is_minus_one, minus);
        EXPECT_EQ(rec.delta_central, minus);
        EXPECT_EQ(rec.delta_swaps12, !minus);
    }
}

TEST(Artin, CoxeterPowerIsDelta) {
    for (int m = 4; m <= 8; ++m) {
        EXPECT_EQ(coxeter_product(m, SP::longest(m).reduced_word()), SP::longest(m));
        const auto& rec = delta_record(m);
        EXPECT_TRUE(rec.usable) << rec.diagnostics;
        EXPECT_EQ(rec.c_power.p, 1);
        EXPECT_TRUE(rec.c_power.factors.empty());
    }
    // Delta is central for m even, so every ordering of the generators works
    for (int m : {4, 6}) {
        std::vector<int> ord(m);
        for (int i = 0; i < m; ++i) ord[i] = i + 1;
        do {
            GWord c;
            for (int i : ord) c.s(i);
            auto nf = greedy_nf(m, c.power(m - 1));
            EXPECT_EQ(nf.p, 1) << c.str();
            EXPECT_TRUE(nf.factors.empty()) << c.str();
        } while (std::next_permutation(ord.begin(), ord.end()));
    }
}

TEST(Artin, GmNormalFormFixtures) {
    for (int m = 4; m <= 8; ++m) {
        auto nf = gm_normal_form(m, coxeter_word(m).power(m - 1));
        EXPECT_EQ(nf.b, m % 2);
        EXPECT_TRUE(nf.t.factors.empty());
        EXPECT_EQ(nf.a, Q(-1));
        EXPECT_EQ(nf.d, 2 * m - 3);
        EXPECT_TRUE(gm_normal_form(m, verify::quotient_relator(m)) == gm_normal_form(m, GWord())) << m;
    }
    auto id = gm_normal_form(5, GWord());
    EXPECT_EQ(id.b, 0);
    EXPECT_EQ(id.a, Q(1));
    EXPECT_EQ(id.d, 0);
    EXPECT_TRUE(id.t.factors.empty());
    EXPECT_TRUE(gm_normal_form(5, GWord().t().t().k(Q(3)).k(Q(1, 3))) == id);
    EXPECT_THROW(gm_normal_form(5, GWord().k(Q(0))), std::invalid_argument);
}

TEST(Artin, GmEqualExamples) {
    for (int m = 4; m <= 7; ++m) {
        EXPECT_TRUE(gm_equal(m, GWord::parse("t s1"), GWord::parse("s2 t")));
        EXPECT_FALSE(gm_equal(m, GWord::parse("s1"), GWord::parse("s2")));
        EXPECT_TRUE(gm_equal(m, GWord::parse("s3 t"), GWord::parse("t s3")));
        EXPECT_TRUE(gm_equal(m, GWord::parse("s1 sh(1) k(-1)"), GWord::parse("k(-1) sh(1) s1")));
        EXPECT_FALSE(gm_equal(m, GWord::parse("s1"), GWord::parse("s1 k(-1)")));
        EXPECT_FALSE(gm_equal(m, GWord::parse("s1"), GWord::parse("s1 t")));
    }
    std::mt19937_64 rng(18);
    for (int m = 4; m <= 6; ++m) {
        auto rel = braid_relators(m);
        for (int n = 0; n < 200; ++n) {
            auto w = verify::random_gword(m, rng, 12);
            auto v = w;
            v.append(rel[rng() % rel.size()]);
            EXPECT_TRUE(gm_equal(m, w, v));
            auto q = w;
            q.append(verify::quotient_relator(m));
            EXPECT_TRUE(gm_equal(m, w, q)) << w.str();
            // spelling out a normal form gives it back
            auto nf = gm_normal_form(m, w);
            EXPECT_TRUE(gm_normal_form(m, gm_word(nf)) == nf) << w.str();
        }
    }
}

// gm_equal pairs evaluate to pic-equal states over the star algebra.
TEST(Artin, NormalFormSoundOnEvaluation) {
    const int m = 4;
    auto A = lambda_algebra<Q>(m);
    TwistFrame<Q> fr(A);
    std::mt19937_64 rng(19);
    for (int n = 0; n < 6; ++n) {
        auto w = verify::random_gword(m, rng, 4);
        auto v = gm_word(gm_normal_form(m, w));
        ASSERT_TRUE(gm_equal(m, w, v));
        std::string why;
        EXPECT_TRUE(pic_equal(eval_gword(fr, w), eval_gword(fr, v), PicMode::Pic, &why)) << w.str() << " vs " << v.str() << " " << why;
    }
}
