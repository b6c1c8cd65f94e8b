#pragma once
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpic/artin.hpp"
#include "dpic/cases.hpp"
#include "dpic/oracle.hpp"

// Verification suites, one per acceptance criterion. Shared by the CLI
// `verify` subcommand and the acceptance binary.

namespace dpic::verify {

struct Finding {
    std::string module, case_id, expected, got;
    std::string line() const { return "FINDING\t" + module + "\t" + case_id + "\t" + expected + "\t" + got; }
};

struct Report {
    int criterion = 0;
    std::string name;
    std::vector<std::string> lines;
    std::vector<Finding> findings;
    double seconds = 0;

    bool pass() const { return findings.empty(); }
    void check(bool ok, const std::string& module, const std::string& id, const std::string& expected,
               const std::string& got, const std::string& note = "") {
        lines.push_back((ok ? "PASS " : "FAIL ") + id + (note.empty() ? "" : "  " + note));
        if (!ok) findings.push_back({module, id, expected, got});
    }
    void info(const std::string& s) { lines.push_back("INFO " + s); }
};

struct Options {
    std::vector<int> ms;       // empty: the suite's own range
    std::uint64_t seed = 1;
    int samples = 0;           // 0: the suite's own count
    std::string only;          // appendix: restrict to one case name
};

namespace detail {

inline std::vector<int> range(const Options& o, int lo, int hi) {
    if (!o.ms.empty()) return o.ms;
    std::vector<int> v;
    for (int m = lo; m <= hi; ++m) v.push_back(m);
    return v;
}

inline std::string ms(int m) { return "m" + std::to_string(m); }

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

inline std::string matrix_str(const std::vector<std::vector<int>>& c) {
    std::string s;
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (i > 1) s += ';';
        for (std::size_t j = 1; j < c[i].size(); ++j) s += (j > 1 ? "," : "") + std::to_string(c[i][j]);
    }
    return s;
}

inline std::string perm_str(const LabelPermutation& p) {
    std::string s;
    for (int i = 1; i <= p.size(); ++i) s += (i > 1 ? " " : "") + std::to_string(p(i));
    return s;
}

// A tree in a chosen standard labeling.
inline ModifiedBrauerTree in_labeling(const ModifiedBrauerTree& sh, int rotation) {
    return relabel(sh, standard_labeling_rotated(sh, rotation).inverse());
}

}  // namespace detail

// Random walk of left and right mutations from Lambda, closed by the inverse
// standard sequence of the tree reached, so the word returns to the star.
inline MutationWord random_closed_word(int m, std::mt19937_64& rng, int max_len = 6) {
    MutationWord w;
    ModifiedBrauerTree G = gamma_tree(m);
    const int L = 1 + static_cast<int>(rng() % max_len);
    for (int k = 0; k < L; ++k) {
        int j = 1 + static_cast<int>(rng() % m), dir = (rng() % 3 == 0) ? -1 : 1;
        w.push(j, dir);
        G = mutate_tree(G, j, dir);
    }
    auto sg = standard_labeling(G);
    auto back = standard_sequence(relabel(G, sg.inverse())).inverse().relabeled(sg);
    for (const auto& s : back.steps) w.steps.push_back(s);
    return w;
}

inline GWord random_gword(int m, std::mt19937_64& rng, int max_len, bool extended = true) {
    GWord w;
    const int L = static_cast<int>(rng() % (max_len + 1));
    for (int k = 0; k < L; ++k) {
        int r = static_cast<int>(rng() % 10);
        if (!extended || r < 7) w.s(1 + static_cast<int>(rng() % m), (rng() & 1) ? 1 : -1);
        else if (r == 7) w.t();
        else if (r == 8) w.sh((rng() & 1) ? 1 : -1);
        else w.k(Rational(-1));
    }
    return w;
}

// c^{m-1} s^{-(2m-3)} kappa_{-1}, followed by tau when m is odd.
inline GWord quotient_relator(int m) {
    GWord w = coxeter_word(m).power(m - 1);
    w.sh(-(2 * m - 3)).k(Rational(-1));
    if (m % 2) w.t();
    return w;
}

// ---------------------------------------------------------------------------
// 1. Algebra fixtures against the brute-force oracle.

template <class F>
Report algebra_fixtures(const Options& o = {}) {
    Report r;
    r.criterion = 1;
    r.name = "algebra";
    detail::Clock all;
    for (int m : detail::range(o, 4, 8)) {
        for (int which = 0; which < 2; ++which) {
            detail::Clock c;
            auto A = which == 0 ? lambda_algebra<F>(m) : r_algebra<F>(m);
            auto orc = oracle::path_dims(A.pres);
            const double secs = c.seconds();
            std::string id = detail::ms(m) + (which == 0 ? " lambda" : " R");
            auto cart = A.cartan();
            bool local = true, sym = true;
            for (int i = 1; i <= m; ++i) {
                local = local && cart[i][i] == 2;
                for (int j = 1; j <= m; ++j) sym = sym && cart[i][j] == cart[j][i];
            }
            r.check(local, "algebra", id + " local", "dim e_i A e_i = 2", detail::matrix_str(cart));
            r.check(sym, "algebra", id + " symmetric", "symmetric Cartan", detail::matrix_str(cart));
            r.check(orc.stable && orc.dim == cart, "algebra", id + " oracle", detail::matrix_str(orc.dim),
                    detail::matrix_str(cart), "dim=" + std::to_string(A.total_dim()));
            r.check(secs < 10, "algebra", id + " time", "< 10 s", std::to_string(secs) + " s");
        }
    }
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 2. Mutation rules: categorical mutation against the tree move and the
// closed-form summand, every shape and label.

template <class F>
Report mutation_rules(const Options& o = {}) {
    Report r;
    r.criterion = 2;
    r.name = "rules";
    detail::Clock all;
    for (int m : detail::range(o, 4, 7)) {
        std::map<int, std::pair<int, int>> per_rule;
        int idx = 0;
        for (const auto& t : enumerate_shapes(m)) {
            ++idx;
            for (int j = 1; j <= m; ++j)
                for (int d : {+1, -1}) {
                    auto rep = cross_validate<F>(t, j, d);
                    auto& st = per_rule[rep.rule];
                    ++st.first;
                    if (rep.ok()) {
                        ++st.second;
                        continue;
                    }
                    std::string id = detail::ms(m) + " shape" + std::to_string(idx) + " j=" + std::to_string(j) +
                                     (d > 0 ? " +" : " -");
                    r.findings.push_back({"mutation", id, "clean cross-validation",
                                          rep.findings.empty() ? "?" : rep.findings.front()});
                }
        }
        for (const auto& [rule, st] : per_rule)
            r.lines.push_back(std::string(st.first == st.second ? "PASS " : "FAIL ") + detail::ms(m) + " rule" +
                              std::to_string(rule) + " " + std::to_string(st.second) + "/" + std::to_string(st.first));
    }
    r.seconds = all.seconds();
    r.check(r.seconds < 300, "mutation", "time", "< 300 s", std::to_string(r.seconds) + " s");
    return r;
}

// ---------------------------------------------------------------------------
// 3. Standard sequences: replay on Lambda against the closed form.

template <class F>
Report standard_sequences(const Options& o = {}) {
    Report r;
    r.criterion = 3;
    r.name = "standard";
    detail::Clock all;
    auto one = [&](const PathAlgebra<F>& A, const ModifiedBrauerTree& t, const std::string& id, int& bad) {
        auto w = standard_sequence(t);
        std::string why;
        if (!same_labeled(apply_word(gamma_tree(t.m), w), t)) {
            ++bad;
            r.findings.push_back({"standardseq", id, tree_to_text(t), "tree of " + w.str() + " differs"});
            return;
        }
        auto T = apply_mutations(TiltingComplex<F>::regular(A), w);
        TiltingComplex<F> S(&A, standard_complex(t, A));
        if (!same_summands(T, S, &why)) {
            ++bad;
            r.findings.push_back({"standardseq", id, "standard_complex", why});
        }
    };
    std::vector<int> exhaustive, randomized;
    for (int m : detail::range(o, 4, 8)) (m <= 7 ? exhaustive : randomized).push_back(m);
    for (int m : exhaustive) {
        auto A = lambda_algebra<F>(m);
        int n = 0, bad = 0, idx = 0;
        for (const auto& sh : enumerate_shapes(m)) {
            ++idx;
            for (int s = 0; s < num_standard_labelings(sh); ++s, ++n)
                one(A, detail::in_labeling(sh, s), detail::ms(m) + " shape" + std::to_string(idx) + " rot" + std::to_string(s), bad);
        }
        r.lines.push_back(std::string(bad ? "FAIL " : "PASS ") + detail::ms(m) + " exhaustive " +
                          std::to_string(n - bad) + "/" + std::to_string(n));
    }
    for (int m : randomized) {
        auto A = lambda_algebra<F>(m);
        std::mt19937_64 rng(o.seed * 7919 + m);
        const int N = o.samples > 0 ? o.samples : 200;
        int bad = 0;
        std::set<std::string> distinct;
        for (int n = 0; n < N; ++n) {
            auto sh = standardize(random_tree(m, rng));
            distinct.insert(shape_key(sh));
            int s = static_cast<int>(rng() % num_standard_labelings(sh));
            one(A, detail::in_labeling(sh, s), detail::ms(m) + " sample" + std::to_string(n), bad);
        }
        r.lines.push_back(std::string(bad ? "FAIL " : "PASS ") + detail::ms(m) + " random " + std::to_string(N - bad) +
                          "/" + std::to_string(N) + " (" + std::to_string(distinct.size()) + " distinct shapes)");
    }
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 4. Evaluation of each sigma_i against the table of t_i(P_j).

template <class F>
Report lemma2(const Options& o = {}) {
    Report r;
    r.criterion = 4;
    r.name = "lemma2";
    detail::Clock all;
    for (int m : detail::range(o, 4, 8)) {
        auto A = lambda_algebra<F>(m);
        TwistFrame<F> fr(A);
        for (int i = 1; i <= m; ++i) {
            auto st = eval_gword(fr, GWord().s(i));
            std::string bad;
            for (int j = 1; j <= m && bad.empty(); ++j)
                if (!is_isomorphic(A, st.T.summand(j), single_twist_complex(A, i, j)).iso)
                    bad = "P" + std::to_string(j) + " -> " + complex_describe(A, st.T.summand(j));
            r.check(bad.empty(), "twists", detail::ms(m) + " t" + std::to_string(i), "table row", bad);
        }
    }
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 5. Mutation recipes of the twists, with labels.

inline MutationWord recipe_check_word(int m, int i, int dir) {
    MutationWord w;
    if (i >= 4) {
        w.push(dir > 0 ? i : i - 1, dir, 2);
        return w;
    }
    w.shift = dir;
    if (i == 3) {
        if (dir > 0) {
            w.push(1, -1);
            w.push(2, -1);
            for (int k = m; k >= 4; --k) w.push(k, -1);
        } else {
            for (int k = 4; k <= m; ++k) w.push(k, +1);
            w.push(2, +1);
            w.push(1, +1);
        }
        return w;
    }
    const int o = 3 - i;
    if (dir > 0) {
        w.push(o, -1);
        for (int k = m; k >= 4; --k) w.push(k, -1);
        w.push(o, +1);
        w.push(3, -1);
        w.push(o, -1);
    } else {
        w.push(o, +1);
        for (int k = 3; k <= m - 1; ++k) w.push(k, +1);
        w.push(o, -1);
        w.push(m, +1);
        w.push(o, +1);
    }
    return w;
}

template <class F>
Report lemma3(const Options& o = {}) {
    Report r;
    r.criterion = 5;
    r.name = "lemma3";
    detail::Clock all;
    for (int m : detail::range(o, 4, 8)) {
        auto A = lambda_algebra<F>(m);
        TwistFrame<F> fr(A);
        const auto reg = TiltingComplex<F>::regular(A);
        for (int i = 1; i <= m; ++i) {
            std::string id = detail::ms(m) + " t" + std::to_string(i);
            auto plus = recipe_check_word(m, i, +1), minus = recipe_check_word(m, i, -1);
            r.check(twist_recipe(m, i, +1) == plus && twist_recipe(m, i, -1) == minus, "twists", id + " recipe",
                    plus.str() + " / " + minus.str(), twist_recipe(m, i, +1).str() + " / " + twist_recipe(m, i, -1).str());
            // (mu_i^+)^2 exchanges the edges i-1 and i
            auto q = i >= 4 ? LabelPermutation::transposition(m, i - 1, i) : LabelPermutation::identity(m);
            auto R = apply_mutations(reg, plus);
            std::string bad;
            for (int l = 1; l <= m && bad.empty(); ++l)
                if (!is_isomorphic(A, R.summand(l), single_twist_complex(A, i, q(l))).iso)
                    bad = "label " + std::to_string(l) + ": " + complex_describe(A, R.summand(l));
            r.check(bad.empty(), "twists", id + " labels", "label l holds t_i(P_q(l)), q = " + detail::perm_str(q), bad);
            // the inverse recipe, run in the frame where label l holds t_i(P_l), undoes it
            auto back = apply_mutations(R.relabeled(q), minus);
            std::set<int> seen;
            bool proj = true;
            for (int l = 1; l <= m; ++l) {
                const auto& X = back.summand(l);
                proj = proj && X.size() == 1 && X.lo() == 0 && seen.insert(X.at(0)[0]).second;
            }
            r.check(proj, "twists", id + " inverse", "projectives", "not all stalks in degree 0");
            GWord a, b;
            a.s(i).s(i, -1);
            b.s(i, -1).s(i);
            const auto id0 = eval_gword(fr, GWord{});
            r.check(pic_equal(eval_gword(fr, a), id0, PicMode::Pic0) && pic_equal(eval_gword(fr, b), id0, PicMode::Pic0),
                    "twists", id + " pair", "identity state", "differs");
        }
        auto e = eval_gword(fr, GWord::parse("s4 s4"));
        auto R = apply_mutations(reg, MutationWord::parse("4+ 4+ 3+ 3+"));
        std::string why;
        r.check(same_summands(e.T, R, &why), "twists", detail::ms(m) + " t4t4", "(mu3+)^2 (mu4+)^2", why);
        auto R4 = apply_mutations(reg, MutationWord::parse("4+ 4+ 4+ 4+"));
        r.check(endo_data(R4).cartan() != A.cartan(), "twists", detail::ms(m) + " (mu4+)^4", "End not Lambda",
                "Cartan of Lambda");
    }
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 6. The F_k family. P1 and P2 come out exchanged for odd k, so the
// comparison allows the label swap.

template <class F>
Report lemma4(const Options& o = {}) {
    Report r;
    r.criterion = 6;
    r.name = "lemma4";
    detail::Clock all;
    for (int m : detail::range(o, 4, 8)) {
        auto A = lambda_algebra<F>(m);
        TwistFrame<F> fr(A);
        for (int k = 1; k <= m - 3; ++k) {
            auto st = eval_gword(fr, f_word(m, k));
            std::vector<ProjComplex<F>> want;
            for (int i = 1; i <= m; ++i) want.push_back(wrap_complex(A, k, i));
            TiltingComplex<F> W(&A, want);
            std::string why;
            bool ok = pic_equal(st.T, W, PicMode::Pic, &why);
            bool exact = ok && pic_equal(st.T, W, PicMode::Pic0);
            r.check(ok, "twists", detail::ms(m) + " k" + std::to_string(k), "closed form", why,
                    ok ? (exact ? "labels exact" : "P1, P2 exchanged") : "");
        }
    }
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 7. Coxeter twist powers on R with the direct twist formula; C = T_m o ... o T_1.

template <class F>
Report lemma5(const Options& o = {}) {
    Report r;
    r.criterion = 7;
    r.name = "lemma5";
    detail::Clock all;
    for (int m : detail::range(o, 4, 7)) {
        auto R = r_algebra<F>(m);
        const int n = 2 * m - 3;
        for (int i = 1; i <= m; ++i) {
            auto X = coxeter_twist_power(R, stalk(R, i), m - 1);
            int want = (m % 2 == 1 && i <= 2) ? 3 - i : i;
            r.check(is_isomorphic(R, X, stalk(R, want, -n)).iso, "twists",
                    detail::ms(m) + " C^(m-1)(R" + std::to_string(i) + ")",
                    "R" + std::to_string(want) + "[" + std::to_string(n) + "]", complex_describe(R, X));
            auto T = spherical_twist(R, i, stalk(R, i));
            r.check(is_isomorphic(R, T, stalk(R, i, -1)).iso, "twists", detail::ms(m) + " T" + std::to_string(i) + "(R" + std::to_string(i) + ")",
                    "R" + std::to_string(i) + "[1]", complex_describe(R, T));
        }
        for (int i = 3; i <= m - 1; ++i) {
            auto X = coxeter_twist_power(R, stalk(R, i), 1);
            r.check(is_isomorphic(R, X, stalk(R, i + 1, -1)).iso, "twists", detail::ms(m) + " C(R" + std::to_string(i) + ")",
                    "R" + std::to_string(i + 1) + "[1]", complex_describe(R, X));
        }
        auto Z = coxeter_twist_power(R, stalk(R, m), 2);
        r.check(is_isomorphic(R, Z, stalk(R, 3, -m)).iso, "twists", detail::ms(m) + " C^2(R" + std::to_string(m) + ")",
                "R3[" + std::to_string(m) + "]", complex_describe(R, Z));
    }
    r.info("the kappa_{-1} scalar is not verified");
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 8. Braid relations and the tau commutations at state level.

template <class F>
Report braid_relations(const Options& o = {}) {
    Report r;
    r.criterion = 8;
    r.name = "braid";
    detail::Clock all;
    for (int m : detail::range(o, 4, 6)) {
        auto A = lambda_algebra<F>(m);
        TwistFrame<F> fr(A);
        const auto id0 = eval_gword(fr, GWord{});
        for (const auto& w : braid_relators(m)) {
            std::string why;
            r.check(pic_equal(eval_gword(fr, w), id0, PicMode::Pic, &why), "twists", detail::ms(m) + " " + w.str(),
                    "identity", why);
        }
        for (int i = 1; i <= m; ++i) {
            GWord a, b;
            a.t().s(i);
            if (i <= 2) b.s(3 - i).t();
            else b.s(i).t();
            r.check(pic_equal(eval_gword(fr, a), eval_gword(fr, b), PicMode::Pic), "twists",
                    detail::ms(m) + " " + a.str() + " = " + b.str(), "equal", "differs");
        }
    }
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 9. Case table, every instance.

template <class F>
Report case_table(const Options& o = {}) {
    Report r;
    r.criterion = 9;
    r.name = "appendix";
    detail::Clock all;
    std::optional<CaseKind> only;
    if (!o.only.empty()) {
        only = case_from_name(o.only);
        if (!only) throw std::invalid_argument("unknown case: " + o.only);
    }
    std::map<std::pair<CaseKind, int>, std::pair<int, int>> stat;
    int printed_n = 0, printed_bad = 0;
    const auto ms_list = detail::range(o, 4, 7);
    for (int m : ms_list) {
        auto A = lambda_algebra<F>(m);
        TwistFrame<F> fr(A);
        for (const auto& sh : enumerate_shapes(m))
            for (int s = 0; s < num_standard_labelings(sh); ++s) {
                auto G = detail::in_labeling(sh, s);
                for (int j = 1; j <= m; ++j) {
                    auto id = classify_case(G, j);
                    if (only && id.kind != *only) continue;
                    auto c = check_case(fr, G, j);
                    auto& st = stat[{c.id.kind, m}];
                    ++st.first;
                    if (c.ok) ++st.second;
                    else r.findings.push_back({"twists", c.id.str(), c.word, c.detail.substr(0, 200)});
                    if (c.id.kind == CaseKind::TT4c) {
                        ++printed_n;
                        if (!check_case(fr, G, j, WordSource::Printed).ok) ++printed_bad;
                    }
                }
            }
    }
    for (auto k : table_cases()) {
        if (only && k != *only) continue;
        int n = 0, ok = 0;
        std::string per;
        for (int m : ms_list)
            if (auto it = stat.find({k, m}); it != stat.end()) {
                n += it->second.first;
                ok += it->second.second;
                per += " " + detail::ms(m) + ":" + std::to_string(it->second.second) + "/" + std::to_string(it->second.first);
            }
        if (n == 0) {
            r.check(false, "twists", case_name(k), "at least one instance", "none");
            continue;
        }
        r.lines.push_back(std::string(n == ok ? "PASS " : "FAIL ") + case_name(k) + per);
    }
    if (printed_n)
        r.info("printed triple-4c word (shift -2l+2): " + std::to_string(printed_bad) + "/" + std::to_string(printed_n) +
               " instances fail; corrected shift -2l+3 used");
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 10. Decomposition of mutation words returning to Lambda.

template <class F>
Report decomposition(const Options& o = {}) {
    Report r;
    r.criterion = 10;
    r.name = "decompose";
    detail::Clock all;
    for (int m : detail::range(o, 4, 7)) {
        auto A = lambda_algebra<F>(m);
        TwistFrame<F> fr(A);
        const auto reg = TiltingComplex<F>::regular(A);
        // fixtures
        r.check(decompose(fr, MutationWord::parse("4+ 4+")).word == GWord::parse("s4"), "twists",
                detail::ms(m) + " (mu4+)^2", "s4", decompose(fr, MutationWord::parse("4+ 4+")).word.str());
        r.check(decompose(fr, MutationWord{}).word.letters.empty(), "twists", detail::ms(m) + " empty", "empty word",
                decompose(fr, MutationWord{}).word.str());
        {
            GWord want;
            want.s(1, -1).s(3, -1).s(1, -1);
            for (int k = 4; k <= m; ++k) want.s(k, -1);
            want.sh(2);
            auto d = decompose(fr, MutationWord::parse("2+ 2+"));
            r.check(pic_equal(eval_gword(fr, d.word), eval_gword(fr, want), PicMode::Pic), "twists",
                    detail::ms(m) + " (mu2+)^2", want.str(), d.word.str());
        }
        std::mt19937_64 rng(o.seed * 1000003 + m);
        const int N = o.samples > 0 ? o.samples : 200;
        int ok = 0;
        std::size_t longest = 0;
        for (int n = 0; n < N; ++n) {
            auto w = random_closed_word(m, rng);
            std::string id = detail::ms(m) + " #" + std::to_string(n) + " " + w.str();
            try {
                auto d = decompose(fr, w);
                auto direct = apply_mutations(reg, w).relabeled(d.final_labels.inverse());
                std::string why;
                if (pic_equal(eval_gword(fr, d.word).T, direct, PicMode::Pic, &why)) {
                    ++ok;
                    longest = std::max(longest, d.word.letters.size());
                } else {
                    r.findings.push_back({"twists", id, "pic-equal to the replay", why});
                }
            } catch (const std::exception& e) {
                r.findings.push_back({"twists", id, "decomposition", e.what()});
            }
        }
        r.lines.push_back(std::string(ok == N ? "PASS " : "FAIL ") + detail::ms(m) + " random words " +
                          std::to_string(ok) + "/" + std::to_string(N) + " (longest word " + std::to_string(longest) +
                          " letters)");
    }
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// 11. Garside normal forms.

inline Report garside(const Options& o = {}) {
    Report r;
    r.criterion = 11;
    r.name = "garside";
    detail::Clock all;
    for (int m : detail::range(o, 4, 8)) {
        int bad = 0, n = 0;
        for (const auto& w : braid_relators(m)) {
            ++n;
            if (!greedy_nf(m, w).is_identity()) {
                ++bad;
                r.findings.push_back({"artin", detail::ms(m) + " " + w.str(), "identity", greedy_nf(m, w).str()});
            }
        }
        r.lines.push_back(std::string(bad ? "FAIL " : "PASS ") + detail::ms(m) + " relators " + std::to_string(n - bad) +
                          "/" + std::to_string(n));
        const auto& rec = delta_record(m);
        r.info(rec.diagnostics);
        const bool swap = !rec.w0_is_minus_one;
        const auto D = nf_times_delta(nf_identity(m), 1);
        std::string conj;
        for (int i = 1; i <= m; ++i) {
            auto x = nf_times_delta(nf_times_letter(D, i, 1), -1);
            int di = swap && i <= 2 ? 3 - i : i;
            if (!(x == greedy_nf(m, GWord().s(di)))) conj += " s" + std::to_string(i) + "->" + x.str();
        }
        r.check(conj.empty(), "artin", detail::ms(m) + " Delta conjugation",
                swap ? "s1 <-> s2, others fixed" : "trivial", conj);
    }
    const int m = o.ms.empty() ? 5 : o.ms.front();
    std::mt19937_64 rng(o.seed * 31 + 5);
    const int N = o.samples > 0 ? o.samples : 10000;
    int bad = 0;
    for (int n = 0; n < N; ++n) {
        auto w = random_gword(m, rng, 30, false);
        auto a = greedy_nf(m, w);
        bool ok = greedy_nf(m, GWord(w).append(w.inverse())).is_identity() && nf_multiply(a, nf_invert(a)).is_identity() &&
                  nf_multiply(nf_invert(a), a).is_identity();
        if (!ok && ++bad <= 5) r.findings.push_back({"artin", w.str(), "w w^-1 = e", a.str()});
    }
    r.lines.push_back(std::string(bad ? "FAIL " : "PASS ") + detail::ms(m) + " random w w^-1 " + std::to_string(N - bad) +
                      "/" + std::to_string(N));
    r.seconds = all.seconds();
    r.check(r.seconds < 120, "artin", "time", "< 120 s", std::to_string(r.seconds) + " s");
    return r;
}

// ---------------------------------------------------------------------------
// 12. G_m word problem against the evaluation.

template <class F>
Report gm_consistency(const Options& o = {}) {
    Report r;
    r.criterion = 12;
    r.name = "gm";
    detail::Clock all;
    const auto ms_list = detail::range(o, 4, 7);
    for (int m : ms_list) {
        auto nf = gm_normal_form(m, coxeter_word(m).power(m - 1));
        GmNormalForm want;
        want.b = m % 2;
        want.t = nf_identity(m);
        want.a = -1;
        want.d = 2 * m - 3;
        r.check(nf == want, "artin", detail::ms(m) + " nf(c^(m-1))", want.str(), nf.str());
    }
    std::map<int, std::unique_ptr<PathAlgebra<F>>> algs;
    std::map<int, std::unique_ptr<TwistFrame<F>>> frames;
    for (int m : ms_list) {
        algs[m] = std::make_unique<PathAlgebra<F>>(lambda_algebra<F>(m));
        frames[m] = std::make_unique<TwistFrame<F>>(*algs[m]);
    }
    std::mt19937_64 rng(o.seed * 977 + 12);
    const int N = o.samples > 0 ? o.samples : 1000;
    int equal = 0, bad = 0;
    for (int n = 0; n < N; ++n) {
        const int m = ms_list[n % ms_list.size()];
        auto w = random_gword(m, rng, 8);
        GWord v;
        auto insert = [&](const GWord& x) {
            std::size_t at = rng() % (w.letters.size() + 1);
            v = w;
            v.letters.insert(v.letters.begin() + static_cast<long>(at), x.letters.begin(), x.letters.end());
        };
        switch (n % 4) {
            case 0: {
                auto rel = braid_relators(m);
                auto x = rel[rng() % rel.size()];
                insert((rng() & 1) ? x : x.inverse());
                break;
            }
            case 1: insert((rng() & 1) ? quotient_relator(m) : quotient_relator(m).inverse()); break;
            case 2: {
                // tau, shift and kappa moved across a sigma
                GWord x, y;
                int i = 1 + static_cast<int>(rng() % m);
                x.t().s(i);
                y.s(i <= 2 ? 3 - i : i).t();
                if (rng() & 1) std::swap(x, y);
                insert(GWord(x).append(y.inverse()));
                break;
            }
            default: v = random_gword(m, rng, 8); break;
        }
        if (!gm_equal(m, w, v)) continue;
        ++equal;
        const auto& fr = *frames[m];
        std::string why;
        if (!pic_equal(eval_gword(fr, w), eval_gword(fr, v), PicMode::Pic, &why)) {
            ++bad;
            r.findings.push_back({"artin", detail::ms(m) + " " + w.str() + " | " + v.str(), "pic-equal", why});
        }
    }
    r.lines.push_back(std::string(bad ? "FAIL " : "PASS ") + "gm_equal pairs pic-equal " + std::to_string(equal - bad) +
                      "/" + std::to_string(equal) + " (of " + std::to_string(N) + " pairs)");
    r.seconds = all.seconds();
    return r;
}

// ---------------------------------------------------------------------------

struct Suite {
    int criterion;
    std::string name;
    std::function<Report(const Options&)> run;
};

// Criterion number, CLI name and runner, all over the field F.
template <class F>
std::vector<Suite> suites() {
    return {
        {1, "algebra", [](const Options& o) { return algebra_fixtures<F>(o); }},
        {2, "rules", [](const Options& o) { return mutation_rules<F>(o); }},
        {3, "standard", [](const Options& o) { return standard_sequences<F>(o); }},
        {4, "lemma2", [](const Options& o) { return lemma2<F>(o); }},
        {5, "lemma3", [](const Options& o) { return lemma3<F>(o); }},
        {6, "lemma4", [](const Options& o) { return lemma4<F>(o); }},
        {7, "lemma5", [](const Options& o) { return lemma5<F>(o); }},
        {8, "braid", [](const Options& o) { return braid_relations<F>(o); }},
        {9, "appendix", [](const Options& o) { return case_table<F>(o); }},
        {10, "decompose", [](const Options& o) { return decomposition<F>(o); }},
        {11, "garside", [](const Options& o) { return garside(o); }},
        {12, "gm", [](const Options& o) { return gm_consistency<F>(o); }},
    };
}

}  // namespace dpic::verify
