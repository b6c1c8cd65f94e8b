#pragma once
#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpic/algebra.hpp"
#include "dpic/complex.hpp"
#include "dpic/mutation.hpp"
#include "dpic/standardseq.hpp"
#include "dpic/tree.hpp"

namespace dpic {

// ---------------------------------------------------------------------------
// Words in the generators sigma_i, tau, kappa_a and the shift, written like
// the composites they name: in g1 g2 ... gn the recipe of gn is replayed
// first and g1 last. On objects this means g1 acts first.

struct GLetter {
    enum Kind { Sigma, Tau, Kappa, Shift } kind = Sigma;
    int index = 0;      // sigma: generator index
    int exp = 1;        // sigma: exponent; shift: amount
    Rational unit = 1;  // kappa

    friend bool operator==(const GLetter& a, const GLetter& b) {
        return a.kind == b.kind && a.index == b.index && a.exp == b.exp && a.unit == b.unit;
    }
};

struct GWord {
    std::vector<GLetter> letters;

    static GLetter sigma(int i, int e = 1) { return {GLetter::Sigma, i, e, 1}; }
    static GLetter tau() { return {GLetter::Tau, 0, 0, 1}; }
    static GLetter kappa(const Rational& a) { return {GLetter::Kappa, 0, 0, a}; }
    static GLetter shift_by(int n) { return {GLetter::Shift, 0, n, 1}; }

    GWord& s(int i, int e = 1) {
        letters.push_back(sigma(i, e));
        return *this;
    }
    GWord& sh(int n) {
        if (n) letters.push_back(shift_by(n));
        return *this;
    }
    GWord& t() {
        letters.push_back(tau());
        return *this;
    }
    GWord& k(const Rational& a) {
        letters.push_back(kappa(a));
        return *this;
    }
    GWord& append(const GWord& w) {
        letters.insert(letters.end(), w.letters.begin(), w.letters.end());
        return *this;
    }
    GWord power(int k) const {
        GWord w;
        if (k >= 0)
            for (int r = 0; r < k; ++r) w.append(*this);
        else
            for (int r = 0; r < -k; ++r) w.append(inverse());
        return w;
    }
    GWord inverse() const {
        GWord w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            GLetter l = *it;
            if (l.kind == GLetter::Sigma || l.kind == GLetter::Shift) l.exp = -l.exp;
            if (l.kind == GLetter::Kappa) l.unit = 1 / l.unit;
            w.letters.push_back(l);
        }
        return w;
    }
    // Conjugation by tau: sigma_1 and sigma_2 trade places.
    GWord swapped12() const {
        GWord w = *this;
        for (auto& l : w.letters)
            if (l.kind == GLetter::Sigma && (l.index == 1 || l.index == 2)) l.index = 3 - l.index;
        return w;
    }
    bool empty() const { return letters.empty(); }
    // Free reduction: shifts are central and collected at the end, tau is
    // moved to the front past sigmas (trading s1 and s2), equal neighbouring
    // sigmas are merged. Kappa letters block the tau moves.
    GWord reduced(bool move_tau = true) const {
        bool frozen = !move_tau;
        int shift = 0, taus = 0;
        for (const auto& l : letters) {
            if (l.kind == GLetter::Kappa) frozen = true;
            if (l.kind == GLetter::Shift) shift += l.exp;
        }
        // built back to front
        std::vector<GLetter> out;
        auto push = [&](GLetter l) {
            if (l.kind == GLetter::Sigma && !out.empty() && out.back().kind == GLetter::Sigma && out.back().index == l.index) {
                out.back().exp += l.exp;
                if (out.back().exp == 0) out.pop_back();
                return;
            }
            if (l.kind == GLetter::Tau && !out.empty() && out.back().kind == GLetter::Tau) {
                out.pop_back();
                return;
            }
            out.push_back(l);
        };
        // a sigma with an odd number of taus to its right is conjugated
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            GLetter l = *it;
            if (l.kind == GLetter::Shift) continue;
            if (!frozen && l.kind == GLetter::Tau) {
                ++taus;
                continue;
            }
            if (!frozen && taus % 2 && l.kind == GLetter::Sigma && (l.index == 1 || l.index == 2)) l.index = 3 - l.index;
            push(l);
        }
        if (taus % 2) push(tau());
        GWord w;
        w.letters.assign(out.rbegin(), out.rend());
        return w.sh(shift);
    }
    int max_index() const {
        int r = 0;
        for (const auto& l : letters)
            if (l.kind == GLetter::Sigma) r = std::max(r, l.index);
        return r;
    }
    friend bool operator==(const GWord& a, const GWord& b) { return a.letters == b.letters; }

    std::string str() const {
        std::string out;
        for (const auto& l : letters) {
            if (!out.empty()) out += ' ';
            switch (l.kind) {
                case GLetter::Sigma:
                    out += "s" + std::to_string(l.index);
                    if (l.exp != 1) out += "^" + std::to_string(l.exp);
                    break;
                case GLetter::Tau: out += "t"; break;
                case GLetter::Kappa: out += "k(" + l.unit.get_str() + ")"; break;
                case GLetter::Shift: out += "sh(" + std::to_string(l.exp) + ")"; break;
            }
        }
        return out;
    }

    // Tokens: s<i>, s<i>^<e>, t, k(<a>), sh(<n>).
    static GWord parse(const std::string& text) {
        GWord w;
        std::istringstream in(text);
        std::string tok;
        auto bad = [](const std::string& t) { return std::invalid_argument("bad word token: " + t); };
        auto whole_int = [&](const std::string& s, const std::string& t) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(s, &used);
            } catch (const std::exception&) {
                throw bad(t);
            }
            if (used != s.size()) throw bad(t);
            return v;
        };
        while (in >> tok) {
            if (tok == "t") {
                w.t();
            } else if (tok.rfind("sh(", 0) == 0 && tok.back() == ')') {
                w.letters.push_back(shift_by(whole_int(tok.substr(3, tok.size() - 4), tok)));
            } else if (tok.rfind("k(", 0) == 0 && tok.back() == ')') {
                Rational a;
                try {
                    a = Rational(tok.substr(2, tok.size() - 3));
                } catch (const std::exception&) {
                    throw bad(tok);
                }
                a.canonicalize();
                if (sgn(a) == 0) throw std::invalid_argument("kappa needs a nonzero unit: " + tok);
                w.k(a);
            } else if (tok.size() > 1 && tok[0] == 's' && std::isdigit(static_cast<unsigned char>(tok[1]))) {
                auto caret = tok.find('^');
                int i = whole_int(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), tok);
                int e = caret == std::string::npos ? 1 : whole_int(tok.substr(caret + 1), tok);
                if (i < 1 || e == 0) throw bad(tok);
                int unit = e > 0 ? 1 : -1;
                for (int r = 0; r < std::abs(e); ++r) w.s(i, unit);
            } else {
                throw bad(tok);
            }
        }
        return w;
    }
};

// sigma_m ... sigma_4 sigma_3 sigma_1 sigma_2 sigma_3, the building block of F_k.
inline GWord wrap_block(int m) {
    GWord w;
    for (int i = m; i >= 3; --i) w.s(i);
    w.s(1).s(2).s(3);
    return w;
}

// (sigma_m ... sigma_3 sigma_1 sigma_2 sigma_3)^k shift(-2k)
inline GWord f_word(int m, int k) { return wrap_block(m).power(k).sh(-2 * k); }

// c = sigma_1 ... sigma_m.
inline GWord coxeter_word(int m) {
    GWord w;
    for (int i = 1; i <= m; ++i) w.s(i);
    return w;
}

// ---------------------------------------------------------------------------
// Complexes over the star algebra used as oracles.

// P_{l0} -> P_{l1} -> ... with the given maps, the last term in degree top.
template <class F>
ProjComplex<F> chain_complex(const PathAlgebra<F>& A, const std::vector<int>& labels, const std::vector<Vec<F>>& maps, int top) {
    ProjComplex<F> X;
    const int n = static_cast<int>(labels.size());
    for (int k = 0; k < n; ++k) X.terms[top - (n - 1) + k] = {labels[k]};
    for (int k = 0; k + 1 < n; ++k) {
        Mat<F> M = zero_mat(A, {labels[k]}, {labels[k + 1]});
        M.at(0, 0) = maps[k];
        X.d[top - (n - 1) + k] = M;
    }
    return X;
}

namespace detail {

// beta_m ... beta_{j+1} preceded by head, as a path name list
inline std::string beta_down(int m, int j, const std::string& head) {
    std::string s = head;
    for (int k = m; k > j; --k) s += " beta" + std::to_string(k);
    return s;
}

}  // namespace detail

// t_i(P_j) on the star algebra.
template <class F>
ProjComplex<F> single_twist_complex(const PathAlgebra<F>& A, int i, int j) {
    const int m = A.n();
    if (i >= 4) {
        if (j == i) return stalk(A, i - 1);
        if (j == i - 1)
            return chain_complex(A, {i, i - 1, i - 1}, {A.element("beta" + std::to_string(i)), A.socle[i - 1]}, 0);
        return stalk(A, j);
    }
    if (i == 1 || i == 2) {
        if (j == 3 - i) return stalk(A, j);
        if (j == i) return stalk(A, i, -1);
        return shift(two_term(A, i, j, A.element(detail::beta_down(m, j, "delta" + std::to_string(i)))), 1);
    }
    // i == 3
    if (j == 3) return stalk(A, 3, -1);
    if (j == 1 || j == 2) return shift(two_term(A, 3, j, A.element("alpha" + std::to_string(j))), 1);
    return shift(two_term(A, 3, j, A.element(detail::beta_down(m, j, "alpha1 delta1"))), 1);
}

// F_k(P_i) on the star algebra, 1 <= k <= m-3.
template <class F>
ProjComplex<F> wrap_complex(const PathAlgebra<F>& A, int k, int i) {
    const int m = A.n();
    if (k < 1 || k > m - 3) throw std::out_of_range("wrap_complex: k out of range");
    if (i <= 2) return stalk(A, i);
    if (i <= m - k) return stalk(A, k + i);
    const int a = i - m + k + 2;
    ProjComplex<F> X;
    X.terms[-1] = {a};
    X.terms[0] = {1, 2};
    Mat<F> d = zero_mat(A, {a}, {1, 2});
    d.at(0, 0) = A.element(detail::beta_path(a, "alpha1"));
    d.at(1, 0) = A.element(detail::beta_path(a, "alpha2"));
    X.d[-1] = d;
    return X;
}

// Mutation words realizing t_i (dir = +1) and t_i^{-1} (dir = -1) on a
// labeled tilting complex, in application order.
inline MutationWord twist_recipe(int m, int i, int dir) {
    if (i < 1 || i > m) throw std::out_of_range("twist_recipe: index out of range");
    MutationWord w;
    if (i >= 4) {
        if (dir > 0) w.push(i, +1, 2);
        else w.push(i - 1, -1, 2);
        return w;
    }
    if (i == 3) {
        if (dir > 0) {
            w.shift = 1;
            w.push(1, -1);
            w.push(2, -1);
            for (int k = m; k >= 4; --k) w.push(k, -1);
        } else {
            w.shift = -1;
            for (int k = 4; k <= m; ++k) w.push(k, +1);
            w.push(2, +1);
            w.push(1, +1);
        }
        return w;
    }
    const int o = 3 - i;
    if (dir > 0) {
        w.shift = 1;
        w.push(o, -1);
        for (int k = m; k >= 4; --k) w.push(k, -1);
        w.push(o, +1);
        w.push(3, -1);
        w.push(o, -1);
    } else {
        w.shift = -1;
        w.push(o, +1);
        for (int k = 3; k <= m - 1; ++k) w.push(k, +1);
        w.push(o, -1);
        w.push(m, +1);
        w.push(o, +1);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Labeled states: summand j holds F(P_j) for the autoequivalence F built so
// far. The unit is the formal coefficient carried by kappa letters.

template <class F>
struct TwistState {
    TiltingComplex<F> T;
    Rational unit = 1;
    int shift = 0;
};

// Recipes together with the label permutations that turn a replayed recipe
// into a state. Replaying the recipe of t_i^{dir} on Lambda gives a complex
// whose label l holds t_i^{dir}(P_{perm(l)}).
template <class F>
class TwistFrame {
public:
    explicit TwistFrame(const PathAlgebra<F>& A, MutationOptions opt = {}) : A_(&A), opt_(opt) {}

    const PathAlgebra<F>& algebra() const { return *A_; }
    int m() const { return A_->n(); }
    const MutationOptions& options() const { return opt_; }

    const LabelPermutation& perm(int i, int dir) const {
        auto key = std::make_pair(i, dir);
        if (auto it = perms_.find(key); it != perms_.end()) return it->second;
        LabelPermutation p = dir > 0 ? match_plus(i) : match_minus(i);
        return perms_.emplace(key, p).first->second;
    }

    // One twist t_i^{dir} composed on the right of the state.
    TwistState<F> step(const TwistState<F>& s, int i, int dir) const {
        const auto& p = perm(i, dir);
        TwistState<F> r = s;
        r.T = apply_mutations(s.T, twist_recipe(m(), i, dir), opt_).relabeled(p);
        return r;
    }

private:
    LabelPermutation match_plus(int i) const {
        auto R = apply_mutations(TiltingComplex<F>::regular(*A_), twist_recipe(m(), i, +1), opt_);
        LabelPermutation p(m());
        std::vector<char> used(m() + 1, 0);
        for (int l = 1; l <= m(); ++l) {
            int hit = 0;
            for (int j = 1; j <= m() && !hit; ++j)
                if (!used[j] && is_isomorphic(*A_, R.summand(l), single_twist_complex(*A_, i, j)).iso) hit = j;
            if (!hit)
                throw std::runtime_error("twist recipe " + std::to_string(i) + "+: summand " + std::to_string(l) +
                                         " matches no t_i(P_j)");
            used[hit] = 1;
            p.img[l] = hit;
        }
        return p;
    }
    // t_i applied to the replay of the inverse recipe must give back the
    // projectives; their labels give the permutation.
    LabelPermutation match_minus(int i) const {
        TwistState<F> s{TiltingComplex<F>::regular(*A_)};
        s = step(s, i, +1);
        auto R = apply_mutations(s.T, twist_recipe(m(), i, -1), opt_);
        LabelPermutation p(m());
        std::vector<char> used(m() + 1, 0);
        for (int l = 1; l <= m(); ++l) {
            const auto& X = R.summand(l);
            if (X.size() != 1 || X.lo() != 0 || used[X.at(0)[0]])
                throw std::runtime_error("twist recipe " + std::to_string(i) + "-: does not invert the + recipe at summand " +
                                         std::to_string(l));
            used[X.at(0)[0]] = 1;
            p.img[l] = X.at(0)[0];
        }
        return p;
    }

    const PathAlgebra<F>* A_;
    MutationOptions opt_;
    mutable std::map<std::pair<int, int>, LabelPermutation> perms_;
};

// Letters are replayed right to left; each one composes on the right of the
// equivalence built so far.
template <class F>
TwistState<F> eval_gword(const TwistFrame<F>& fr, const GWord& w, TwistState<F> s) {
    const int m = fr.m();
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        const auto& l = *it;
        switch (l.kind) {
            case GLetter::Sigma:
                if (l.index < 1 || l.index > m) throw std::out_of_range("eval_gword: sigma index out of range");
                for (int r = 0; r < std::abs(l.exp); ++r) s = fr.step(s, l.index, l.exp > 0 ? +1 : -1);
                break;
            case GLetter::Tau: s.T = s.T.relabeled(LabelPermutation::transposition(m, 1, 2)); break;
            case GLetter::Kappa: s.unit *= l.unit; break;
            case GLetter::Shift:
                s.T = s.T.shifted(l.exp);
                s.shift += l.exp;
                break;
        }
    }
    return s;
}

template <class F>
TwistState<F> eval_gword(const TwistFrame<F>& fr, const GWord& w) {
    return eval_gword(fr, w, TwistState<F>{TiltingComplex<F>::regular(fr.algebra())});
}

enum class PicMode { Pic0, Pic };

// X transported along an automorphism of the algebra.
template <class F>
ProjComplex<F> twist_by(const PathAlgebra<F>& A, const AlgebraAutomorphism<F>& g, const ProjComplex<F>& X) {
    ProjComplex<F> Y;
    for (const auto& [n, t] : X.terms) {
        auto& v = Y.terms[n];
        for (int x : t) v.push_back(g.vertex[x]);
    }
    for (const auto& [n, M] : X.d) {
        Mat<F> N = zero_mat(A, Y.at(n), Y.at(n + 1));
        for (int r = 0; r < M.nr; ++r)
            for (int c = 0; c < M.nc; ++c) N.at(r, c) = g.apply(A, X.at(n)[c], X.at(n + 1)[r], M.at(r, c));
        Y.d[n] = N;
    }
    return Y;
}

template <class F>
TiltingComplex<F> twist_by(const AlgebraAutomorphism<F>& g, const TiltingComplex<F>& T) {
    std::vector<ProjComplex<F>> s;
    for (int l = 1; l <= T.m(); ++l) s.push_back(twist_by(T.algebra(), g, T.summand(l)));
    return TiltingComplex<F>(&T.algebra(), std::move(s));
}

// Summandwise comparison. Pic mode also allows the swap of e1 and e2 on
// either side: on the labels, on the complexes, or both.
template <class F>
bool pic_equal(const TiltingComplex<F>& a, const TiltingComplex<F>& b, PicMode mode = PicMode::Pic, std::string* why = nullptr) {
    if (same_summands(a, b, why)) return true;
    if (mode == PicMode::Pic0) return false;
    auto sw = LabelPermutation::transposition(b.m(), 1, 2);
    if (same_summands(a, b.relabeled(sw))) return true;
    auto tb = twist_by(swap12(b.algebra()), b);
    return same_summands(a, tb) || same_summands(a, tb.relabeled(sw));
}

template <class F>
bool pic_equal(const TwistState<F>& a, const TwistState<F>& b, PicMode mode = PicMode::Pic, std::string* why = nullptr) {
    return pic_equal(a.T, b.T, mode, why);
}

// ---------------------------------------------------------------------------
// Spherical twist on any algebra: cone of the evaluation map
// P_i ⊗ Hom^•(P_i, X) -> X, reduced.
template <class F>
ProjComplex<F> spherical_twist(const PathAlgebra<F>& A, int i, const ProjComplex<F>& X) {
    if (A.dim(i, i) != 2) throw std::invalid_argument("spherical_twist: End(P_" + std::to_string(i) + ") is not two-dimensional");
    // basis of Hom(P_i, X^n): (slot, path)
    std::map<int, std::vector<std::pair<int, int>>> V;
    for (const auto& [n, t] : X.terms)
        for (int s = 0; s < static_cast<int>(t.size()); ++s)
            for (int p = 0; p < A.dim(i, t[s]); ++p) V[n].push_back({s, p});
    ProjComplex<F> Y;
    for (const auto& [n, b] : V)
        if (!b.empty()) Y.terms[n] = std::vector<int>(b.size(), i);
    for (const auto& [n, b] : V) {
        if (b.empty() || !Y.terms.count(n + 1)) continue;
        const auto& tgt = V[n + 1];
        std::map<std::pair<int, int>, int> pos;
        for (int k = 0; k < static_cast<int>(tgt.size()); ++k) pos[tgt[k]] = k;
        auto dX = diff(A, X, n);
        Mat<F> M = zero_mat(A, Y.at(n), Y.at(n + 1));
        for (int c = 0; c < static_cast<int>(b.size()); ++c) {
            auto [s, p] = b[c];
            Vec<F> e = A.zero(i, X.at(n)[s]);
            e[p] = F(1);
            for (int t = 0; t < static_cast<int>(X.at(n + 1).size()); ++t) {
                auto v = A.compose(i, X.at(n)[s], X.at(n + 1)[t], e, dX.at(t, s));
                for (int q = 0; q < static_cast<int>(v.size()); ++q)
                    if (!is_zero(v[q])) {
                        Vec<F> u = A.identity(i);
                        for (auto& x : u) x *= v[q];
                        M.at(pos.at({t, q}), c) = u;
                    }
            }
        }
        Y.d[n] = M;
    }
    ChainMap<F> ev;
    for (const auto& [n, b] : V) {
        if (b.empty()) continue;
        Mat<F> M = zero_mat(A, Y.at(n), X.at(n));
        for (int c = 0; c < static_cast<int>(b.size()); ++c) {
            auto [s, p] = b[c];
            Vec<F> e = A.zero(i, X.at(n)[s]);
            e[p] = F(1);
            M.at(s, c) = e;
        }
        ev.f[n] = M;
    }
    return reduce(A, cone(A, Y, X, ev));
}

// Twist letters acting on a single complex, first letter first.
template <class F>
ProjComplex<F> twist_word_on(const PathAlgebra<F>& A, const GWord& w, ProjComplex<F> X) {
    for (const auto& l : w.letters) {
        if (l.kind == GLetter::Shift) X = shift(X, l.exp);
        else if (l.kind == GLetter::Sigma && l.exp > 0)
            for (int r = 0; r < l.exp; ++r) X = spherical_twist(A, l.index, X);
        else if (l.kind != GLetter::Kappa) throw std::invalid_argument("twist_word_on: only positive twists, shifts and scalars");
    }
    return X;
}

// C = T_m∘...∘T_1 applied k times; T_m acts first.
template <class F>
ProjComplex<F> coxeter_twist_power(const PathAlgebra<F>& A, ProjComplex<F> X, int k) {
    GWord c;
    for (int i = A.n(); i >= 1; --i) c.s(i);
    return twist_word_on(A, c.power(k), X);
}

}  // namespace dpic
