#pragma once
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpic/algebra.hpp"
#include "dpic/complex.hpp"
#include "dpic/tree.hpp"

namespace dpic {

// Summands labeled 1..m (stored at index label-1) with a cache of the
// pairwise Hom spaces in the homotopy category.
template <class F>
class TiltingComplex {
public:
    TiltingComplex() = default;
    TiltingComplex(const PathAlgebra<F>* A, std::vector<ProjComplex<F>> s) : A_(A), s_(std::move(s)) {}

    static TiltingComplex regular(const PathAlgebra<F>& A) {
        std::vector<ProjComplex<F>> s;
        for (int i = 1; i <= A.n(); ++i) s.push_back(stalk(A, i));
        return TiltingComplex(&A, std::move(s));
    }

    const PathAlgebra<F>& algebra() const { return *A_; }
    int m() const { return static_cast<int>(s_.size()); }
    const ProjComplex<F>& summand(int label) const { return s_.at(label - 1); }
    const std::vector<ProjComplex<F>>& summands() const { return s_; }

    const HomK<F>& hom(int i, int j) const {
        auto key = std::make_pair(i, j);
        auto it = cache_->find(key);
        if (it != cache_->end()) return it->second;
        return cache_->emplace(key, hom_K(*A_, summand(i), summand(j))).first->second;
    }

    TiltingComplex replaced(int label, ProjComplex<F> X) const {
        auto s = s_;
        s.at(label - 1) = std::move(X);
        TiltingComplex T(A_, std::move(s));
        for (const auto& [k, v] : *cache_)
            if (k.first != label && k.second != label) T.cache_->emplace(k, v);
        return T;
    }

    TiltingComplex shifted(int n) const {
        std::vector<ProjComplex<F>> s;
        for (const auto& x : s_) s.push_back(shift(x, n));
        TiltingComplex T(A_, std::move(s));
        return T;
    }

    // Relabel: summand with old label l gets label p(l).
    TiltingComplex relabeled(const LabelPermutation& p) const {
        std::vector<ProjComplex<F>> s(s_.size());
        for (int l = 1; l <= m(); ++l) s[p(l) - 1] = s_[l - 1];
        return TiltingComplex(A_, std::move(s));
    }

private:
    const PathAlgebra<F>* A_ = nullptr;
    std::vector<ProjComplex<F>> s_;
    std::shared_ptr<std::map<std::pair<int, int>, HomK<F>>> cache_ = std::make_shared<std::map<std::pair<int, int>, HomK<F>>>();
};

// Endomorphism data of T: Hom(T_i, T_j) bases and composition.
template <class F>
AlgebraTable<F> endo_data(const TiltingComplex<F>& T) {
    const auto& A = T.algebra();
    const int m = T.m();
    AlgebraTable<F> E;
    E.init(m);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) E.dim[i][j] = static_cast<int>(T.hom(i, j).dim());
    for (int i = 1; i <= m; ++i) E.unit[i] = T.hom(i, i).coords(identity_map(A, T.summand(i)));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            if (!E.dim[i][j]) continue;
            const auto& Hij = T.hom(i, j);
            for (int k = 1; k <= m; ++k) {
                if (!E.dim[j][k] || !E.dim[i][k]) {
                    if (E.dim[j][k]) E.table[E.key(i, j, k)].assign(static_cast<std::size_t>(E.dim[i][j]) * E.dim[j][k], Vec<F>{});
                    continue;
                }
                const auto& Hjk = T.hom(j, k);
                const auto& Hik = T.hom(i, k);
                auto& tb = E.table[E.key(i, j, k)];
                tb.resize(static_cast<std::size_t>(E.dim[i][j]) * E.dim[j][k]);
                for (int p = 0; p < E.dim[i][j]; ++p) {
                    auto f = Hij.map(A, p);
                    for (int q = 0; q < E.dim[j][k]; ++q) {
                        auto g = Hjk.map(A, q);
                        auto h = compose_maps(A, T.summand(i), T.summand(j), T.summand(k), f, g);
                        tb[static_cast<std::size_t>(p) * E.dim[j][k] + q] = Hik.coords(h);
                    }
                }
            }
        }
    return E;
}

namespace detail {

// Radical of End(T_k): kernel of the trace of left multiplication (End is local).
template <class F>
std::vector<Vec<F>> end_radical(const TiltingComplex<F>& T, int k) {
    const auto& A = T.algebra();
    const auto& H = T.hom(k, k);
    const int d = static_cast<int>(H.dim());
    Vec<F> tr(d, F(0));
    const auto& X = T.summand(k);
    for (int p = 0; p < d; ++p) {
        auto f = H.map(A, p);
        F s(0);
        for (int q = 0; q < d; ++q) {
            auto g = H.map(A, q);
            s += H.coords(compose_maps(A, X, X, X, g, f))[q];
        }
        tr[p] = s;
    }
    return nullspace(std::vector<Vec<F>>{tr}, d);
}

template <class F>
std::vector<Vec<F>> radical_basis(const TiltingComplex<F>& T, int l, int k) {
    if (l == k) return end_radical(T, k);
    std::vector<Vec<F>> out;
    const int d = static_cast<int>(T.hom(l, k).dim());
    for (int p = 0; p < d; ++p) {
        Vec<F> v(d, F(0));
        v[p] = F(1);
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

template <class F>
struct Approximation {
    ProjComplex<F> source, target;        // X and the add(M) object
    std::vector<int> target_labels;       // summand label of each slot of the target
    std::vector<ChainMap<F>> components;  // per slot: X -> T_k (left) or T_k -> X (right)
    ChainMap<F> map;                      // X -> target (left) or target -> X (right)
    bool left = true;
};

template <class F>
ProjComplex<F> sum_of(const TiltingComplex<F>& T, const std::vector<int>& labels) {
    ProjComplex<F> S;
    for (int l : labels) S = direct_sum(T.algebra(), S, T.summand(l));
    return S;
}

// Offsets of each slot's terms inside the direct sum, per degree.
template <class F>
std::vector<std::map<int, int>> slot_offsets(const TiltingComplex<F>& T, const std::vector<int>& labels) {
    std::vector<std::map<int, int>> off;
    std::map<int, int> cur;
    for (int l : labels) {
        std::map<int, int> o;
        for (const auto& [n, t] : T.summand(l).terms) {
            o[n] = cur[n];
            cur[n] += static_cast<int>(t.size());
        }
        off.push_back(o);
    }
    return off;
}

template <class F>
Approximation<F> minimal_approximation(const TiltingComplex<F>& T, int j, bool left) {
    const auto& A = T.algebra();
    const int m = T.m();
    Approximation<F> ap;
    ap.left = left;
    ap.source = T.summand(j);
    for (int k = 1; k <= m; ++k) {
        if (k == j) continue;
        const auto& H = left ? T.hom(j, k) : T.hom(k, j);
        if (!H.dim()) continue;
        // maps that factor through a radical map between summands of M
        Echelon<F> rad(H.dim());
        for (int l = 1; l <= m; ++l) {
            if (l == j) continue;
            if (left) {
                const auto& Hjl = T.hom(j, l);
                const auto& Hlk = T.hom(l, k);
                if (!Hjl.dim() || !Hlk.dim()) continue;
                auto R = detail::radical_basis(T, l, k);
                for (std::size_t p = 0; p < Hjl.dim(); ++p) {
                    auto f = Hjl.map(A, p);
                    for (const auto& r : R) {
                        auto g = Hlk.map_of(A, r);
                        rad.add(H.coords(compose_maps(A, T.summand(j), T.summand(l), T.summand(k), f, g)));
                    }
                }
            } else {
                const auto& Hlj = T.hom(l, j);
                const auto& Hkl = T.hom(k, l);
                if (!Hlj.dim() || !Hkl.dim()) continue;
                auto R = detail::radical_basis(T, k, l);
                for (std::size_t p = 0; p < Hlj.dim(); ++p) {
                    auto g = Hlj.map(A, p);
                    for (const auto& r : R) {
                        auto f = Hkl.map_of(A, r);
                        rad.add(H.coords(compose_maps(A, T.summand(k), T.summand(l), T.summand(j), f, g)));
                    }
                }
            }
        }
        for (std::size_t p = 0; p < H.dim(); ++p) {
            Vec<F> e(H.dim(), F(0));
            e[p] = F(1);
            if (rad.add(e)) {
                ap.target_labels.push_back(k);
                ap.components.push_back(H.map(A, p));
            }
        }
    }
    ap.target = sum_of(T, ap.target_labels);
    auto off = slot_offsets(T, ap.target_labels);
    const auto& X = ap.source;
    const auto& M = ap.target;
    ChainMap<F> f;
    if (left) {
        for (const auto& [n, s] : X.terms) {
            if (M.at(n).empty()) continue;
            Mat<F> mat = zero_mat(A, s, M.at(n));
            for (std::size_t slot = 0; slot < ap.target_labels.size(); ++slot) {
                const auto& Y = T.summand(ap.target_labels[slot]);
                if (Y.at(n).empty()) continue;
                auto c = component(A, ap.components[slot], X, Y, n);
                int o = off[slot].at(n);
                for (int r = 0; r < c.nr; ++r)
                    for (int cc = 0; cc < c.nc; ++cc) mat.at(o + r, cc) = c.at(r, cc);
            }
            f.f[n] = mat;
        }
    } else {
        for (const auto& [n, s] : M.terms) {
            if (X.at(n).empty()) continue;
            Mat<F> mat = zero_mat(A, s, X.at(n));
            for (std::size_t slot = 0; slot < ap.target_labels.size(); ++slot) {
                const auto& Y = T.summand(ap.target_labels[slot]);
                if (Y.at(n).empty()) continue;
                auto c = component(A, ap.components[slot], Y, X, n);
                int o = off[slot].at(n);
                for (int r = 0; r < c.nr; ++r)
                    for (int cc = 0; cc < c.nc; ++cc) mat.at(r, o + cc) = c.at(r, cc);
            }
            f.f[n] = mat;
        }
    }
    ap.map = f;
    return ap;
}

// Approximation property and minimality, checked summand by summand:
// left: Hom(M', T_k) -> Hom(X, T_k) is onto, and stops being onto when any
// slot is dropped. Slots of one label are interchangeable, so one drop per
// label suffices. Right: dual.
template <class F>
std::vector<std::string> verify_approximation(const TiltingComplex<F>& T, int j, const Approximation<F>& ap) {
    const auto& A = T.algebra();
    std::vector<std::string> out;
    const int m = T.m();
    std::vector<std::size_t> image_rank(m + 1, 0);
    auto image_dim = [&](int k, int skip) {
        const auto& H = ap.left ? T.hom(j, k) : T.hom(k, j);
        Echelon<F> img(H.dim());
        for (std::size_t s = 0; s < ap.target_labels.size(); ++s) {
            if (static_cast<int>(s) == skip) continue;
            int l = ap.target_labels[s];
            const auto& Hlk = ap.left ? T.hom(l, k) : T.hom(k, l);
            for (std::size_t p = 0; p < Hlk.dim(); ++p) {
                auto g = Hlk.map(A, p);
                ChainMap<F> h = ap.left ? compose_maps(A, T.summand(j), T.summand(l), T.summand(k), ap.components[s], g)
                                        : compose_maps(A, T.summand(k), T.summand(l), T.summand(j), g, ap.components[s]);
                img.add(H.coords(h));
            }
        }
        return std::make_pair(img.rank(), H.dim());
    };
    for (int k = 1; k <= m; ++k) {
        if (k == j) continue;
        auto [r, d] = image_dim(k, -1);
        if (r != d) out.push_back("approximation not onto for summand " + std::to_string(k));
    }
    std::set<int> seen;
    for (std::size_t s = 0; s < ap.target_labels.size(); ++s) {
        int l = ap.target_labels[s];
        if (!seen.insert(l).second) continue;
        auto [r, d] = image_dim(l, static_cast<int>(s));
        if (r == d) out.push_back("approximation not minimal at slot of summand " + std::to_string(l));
    }
    return out;
}

template <class F>
ProjComplex<F> mutated_summand(const TiltingComplex<F>& T, const Approximation<F>& ap) {
    const auto& A = T.algebra();
    if (ap.left) return reduce(A, cone(A, ap.source, ap.target, ap.map));
    return reduce(A, shift(cone(A, ap.target, ap.source, ap.map), -1));
}

struct MutationOptions {
    bool verify_approx = false;
    bool verify_tilting = false;
};

template <class F>
TiltingComplex<F> silt_mutate(const TiltingComplex<F>& T, int j, int dir, MutationOptions opt = {}) {
    if (j < 1 || j > T.m()) throw std::out_of_range("silt_mutate: label out of range");
    auto ap = minimal_approximation(T, j, dir > 0);
    if (opt.verify_approx) {
        auto v = verify_approximation(T, j, ap);
        if (!v.empty()) throw std::runtime_error("silt_mutate: " + v.front());
    }
    auto R = T.replaced(j, mutated_summand(T, ap));
    if (opt.verify_tilting) {
        auto rep = is_tilting(T.algebra(), R.summands());
        if (!rep.ok) throw std::runtime_error("silt_mutate: result not tilting: " + rep.findings.front());
    }
    return R;
}

template <class F>
TiltingComplex<F> apply_mutations(TiltingComplex<F> T, const MutationWord& w, MutationOptions opt = {}) {
    for (const auto& st : w.steps) T = silt_mutate(T, st.label, st.dir, opt);
    if (w.shift) T = T.shifted(w.shift);
    return T;
}

// Summandwise isomorphism with identical labels.
template <class F>
bool same_summands(const TiltingComplex<F>& a, const TiltingComplex<F>& b, std::string* why = nullptr, std::uint64_t seed = 1) {
    if (a.m() != b.m()) return false;
    for (int l = 1; l <= a.m(); ++l) {
        auto r = is_isomorphic(a.algebra(), a.summand(l), b.summand(l), seed);
        if (!r.iso) {
            if (why) *why = "summand " + std::to_string(l) + ": " + r.witness;
            return false;
        }
    }
    return true;
}


// ---------------------------------------------------------------------------
// Tree rule against categorical mutation of the tree's own algebra.

// 1: regular edge of a double edge tree not followed by the double edge;
// 2: a label of the double edge; 3: followed by the double edge; 4: central
// edge staying in a triple tree; 5: central edge producing a double edge;
// 6: regular edge of a triple tree; 0: plain Kauer move. For dir < 0 the
// same rules apply to the mirror.
inline int rule_case(const ModifiedBrauerTree& t0, int j, int dir = +1) {
    const ModifiedBrauerTree t = dir > 0 ? t0 : detail::mirror(t0);
    const int e = t.edge_of(j);
    switch (t.kind) {
        case TreeKind::Plain: return 0;
        case TreeKind::DoubleEdge: {
            if (t.is_double(e)) return 2;
            for (int w : {t.edges[e].u, t.edges[e].v})
                if (t.degree(w) > 1 && t.is_double(t.next_at(w, e))) return 3;
            return 1;
        }
        case TreeKind::TripleTree:
            if (!t.is_central(j)) return 6;
            return mutate_tree(t, j, +1).kind == TreeKind::DoubleEdge ? 5 : 4;
    }
    return 0;
}

// The mutated summand predicted by the tree: (P_j -> sum of P_f over the
// followers f)[1] for dir > 0, (sum of P_p over predecessors -> P_j) for dir < 0,
// with arrows as components.
template <class F>
ProjComplex<F> rule_summand(const PathAlgebra<F>& A, const ModifiedBrauerTree& t, int j, int dir) {
    const auto nb = dir > 0 ? following_edges(t, j) : preceding_edges(t, j);
    auto arrow = [&](int s, int d) {
        for (int a = 0; a < static_cast<int>(A.pres.arrows.size()); ++a)
            if (A.pres.arrows[a].src == s && A.pres.arrows[a].dst == d) return A.path_element({a});
        if (A.dim(s, d) != 1) throw std::logic_error("rule_summand: no arrow " + std::to_string(s) + " -> " + std::to_string(d));
        return Vec<F>{F(1)};
    };
    ProjComplex<F> X;
    if (dir > 0) {
        X.terms[-1] = {j};
        X.terms[0] = nb;
        Mat<F> M = zero_mat(A, {j}, nb);
        for (std::size_t r = 0; r < nb.size(); ++r) M.at(static_cast<int>(r), 0) = arrow(j, nb[r]);
        X.d[-1] = M;
    } else {
        X.terms[0] = nb;
        X.terms[1] = {j};
        Mat<F> M = zero_mat(A, nb, {j});
        for (std::size_t c = 0; c < nb.size(); ++c) M.at(0, static_cast<int>(c)) = arrow(nb[c], j);
        X.d[0] = M;
    }
    return X;
}

struct CrossReport {
    int rule = -1;
    TreeKind from = TreeKind::Plain, to = TreeKind::Plain;
    bool cartan_ok = false, summand_ok = false, tilting_ok = false;
    std::vector<std::string> findings;
    bool ok() const { return cartan_ok && summand_ok && tilting_ok; }
};

// Mutates the regular module of the tree's algebra at j both ways round:
// the tree rule gives the new tree, silting mutation gives the new complex.
// Checks the Cartan matrix of End against the new tree's presentation and
// the mutated summand against the rule's closed form.
template <class F>
CrossReport cross_validate(const ModifiedBrauerTree& t, int j, int dir = +1) {
    CrossReport rep;
    rep.rule = rule_case(t, j, dir);
    rep.from = t.kind;
    const auto A = compute_basis(build_presentation<F>(t));
    MutationOptions opt;
    opt.verify_approx = true;
    auto R = silt_mutate(TiltingComplex<F>::regular(A), j, dir, opt);
    auto tilt = is_tilting(A, R.summands());
    rep.tilting_ok = tilt.ok;
    for (const auto& f : tilt.findings) rep.findings.push_back("tilting: " + f);
    const auto t2 = mutate_tree(t, j, dir);
    rep.to = t2.kind;
    const auto want = compute_basis(build_presentation<F>(t2)).cartan();
    const auto got = endo_data(R).cartan();
    rep.cartan_ok = want == got;
    if (!rep.cartan_ok) {
        std::string s = "cartan: expected";
        for (int a = 1; a <= t.m; ++a) {
            s += " ";
            for (int b = 1; b <= t.m; ++b) s += std::to_string(want[a][b]);
        }
        s += " got";
        for (int a = 1; a <= t.m; ++a) {
            s += " ";
            for (int b = 1; b <= t.m; ++b) s += std::to_string(got[a][b]);
        }
        rep.findings.push_back(s);
    }
    auto iso = is_isomorphic(A, R.summand(j), rule_summand(A, t, j, dir));
    rep.summand_ok = iso.iso;
    if (!iso.iso) rep.findings.push_back("summand: " + iso.witness);
    return rep;
}

}  // namespace dpic
