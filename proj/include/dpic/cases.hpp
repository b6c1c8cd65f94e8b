#pragma once
#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpic/mutation.hpp"
#include "dpic/standardseq.hpp"
#include "dpic/tree.hpp"
#include "dpic/twists.hpp"

namespace dpic {

// One step (standard sequence of G')^-1 ∘ mu_j^+ ∘ (standard sequence of G)
// and the twist word that realizes it on Lambda.
enum class CaseKind {
    DE1a, DE1b, DE1c, DE1d, DE2a, DE2b, DE2c,
    TT1, TT2a, TT2bi, TT2bii, TT2biii, TT3a, TT3b, TT3c, TT4a, TT4b, TT4c,
    // the pieces at both ends of a decomposition
    FirstStep, LastTwist, LastSquare2
};

inline const std::vector<CaseKind>& table_cases() {
    static const std::vector<CaseKind> all{
        CaseKind::DE1a, CaseKind::DE1b, CaseKind::DE1c, CaseKind::DE1d, CaseKind::DE2a, CaseKind::DE2b,
        CaseKind::DE2c, CaseKind::TT1,  CaseKind::TT2a, CaseKind::TT2bi, CaseKind::TT2bii, CaseKind::TT2biii,
        CaseKind::TT3a, CaseKind::TT3b, CaseKind::TT3c, CaseKind::TT4a, CaseKind::TT4b, CaseKind::TT4c};
    return all;
}

inline std::string case_name(CaseKind k) {
    switch (k) {
        case CaseKind::DE1a: return "double-1a";
        case CaseKind::DE1b: return "double-1b";
        case CaseKind::DE1c: return "double-1c";
        case CaseKind::DE1d: return "double-1d";
        case CaseKind::DE2a: return "double-2a";
        case CaseKind::DE2b: return "double-2b";
        case CaseKind::DE2c: return "double-2c";
        case CaseKind::TT1: return "triple-1";
        case CaseKind::TT2a: return "triple-2a";
        case CaseKind::TT2bi: return "triple-2b-i";
        case CaseKind::TT2bii: return "triple-2b-ii";
        case CaseKind::TT2biii: return "triple-2b-iii";
        case CaseKind::TT3a: return "triple-3a";
        case CaseKind::TT3b: return "triple-3b";
        case CaseKind::TT3c: return "triple-3c";
        case CaseKind::TT4a: return "triple-4a";
        case CaseKind::TT4b: return "triple-4b";
        case CaseKind::TT4c: return "triple-4c";
        case CaseKind::FirstStep: return "first-step";
        case CaseKind::LastTwist: return "last-twist";
        case CaseKind::LastSquare2: return "last-square-2";
    }
    return "?";
}

inline std::optional<CaseKind> case_from_name(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(CaseKind::LastSquare2); ++k)
        if (case_name(static_cast<CaseKind>(k)) == s) return static_cast<CaseKind>(k);
    return std::nullopt;
}

struct CaseId {
    CaseKind kind = CaseKind::DE1a;
    int m = 0;
    int j = 0;
    // h: following edge; l: wrap index or second follower; d: edge after 2
    int h = 0, l = 0, d = 0;
    int m1 = 0, m2 = 0, m3 = 0;
    int block = 0;   // triple 1 and 2a: the tree containing j
    CaseKind sub = CaseKind::DE1a;  // triple 1: the double edge case it reduces to
    bool swap12 = false;            // double 2c with j = 2

    std::string str() const {
        std::string s = case_name(kind) + " m=" + std::to_string(m) + " j=" + std::to_string(j);
        auto add = [&](const char* n, int v) {
            if (v) s += std::string(" ") + n + "=" + std::to_string(v);
        };
        add("h", h);
        add("l", l);
        add("d", d);
        if (kind >= CaseKind::TT1 && kind <= CaseKind::TT4c)
            s += " blocks=" + std::to_string(m1) + "," + std::to_string(m2) + "," + std::to_string(m3);
        if (kind == CaseKind::TT1) s += " as " + case_name(sub);
        if (swap12) s += " swapped";
        return s;
    }
};

namespace detail {

struct EdgeEnds {
    int upper = -1, lower = -1;
};

// Ends of a regular edge: upper is the end nearer the root.
inline EdgeEnds edge_ends(const ModifiedBrauerTree& t, const LevelData& L, int j, int root) {
    int e = t.edge_of(j);
    int u = t.edges[e].u, v = t.edges[e].v;
    int up;
    if (L.phi[j] == 0) up = (u == root) ? u : v;
    else {
        int pe = t.edge_of(L.psi[j]);
        up = (t.edges[pe].u == u || t.edges[pe].v == u) ? u : v;
    }
    return {up, t.other_end(e, up)};
}

inline int label_of(const ModifiedBrauerTree& t, int e) { return t.edges[e].labels[0]; }

// Double edge case 1 data for a regular edge j (also used inside a block of
// a TripleTree). root is the vertex where j's tree hangs.
inline void regular_subcase(const ModifiedBrauerTree& t, const LevelData& L, int j, int root, CaseId& c) {
    auto en = edge_ends(t, L, j, root);
    int e = t.edge_of(j);
    int up = label_of(t, t.next_at(en.upper, e));
    bool sibling = L.phi[up] == L.phi[j] && !t.is_double(t.edge_of(up)) && !t.is_central(up);
    bool pendant = t.degree(en.lower) == 1;
    if (pendant) {
        c.sub = sibling ? CaseKind::DE1a : CaseKind::DE1b;
        if (sibling) c.l = up;
        return;
    }
    int low = label_of(t, t.next_at(en.lower, e));
    if (sibling) {
        c.sub = CaseKind::DE1c;
        c.l = up;
        c.h = low;
        return;
    }
    // h: walk down from l, always taking the edge that follows at the lower
    // end, to the last edge of that chain
    c.sub = CaseKind::DE1d;
    c.l = low;
    for (int x = low;;) {
        auto ex = edge_ends(t, L, x, root);
        if (t.degree(ex.lower) == 1) break;
        x = label_of(t, t.next_at(ex.lower, t.edge_of(x)));
        c.h = x;
    }
}

}  // namespace detail

// Classification of mu_j^+ at a standardly labeled tree (any rotation).
inline CaseId classify_case(const ModifiedBrauerTree& t, int j) {
    if (j < 1 || j > t.m) throw std::out_of_range("classify_case: label out of range");
    auto L = level_functions(t);
    const int m = t.m;
    CaseId c;
    c.m = m;
    c.j = j;
    if (t.kind == TreeKind::DoubleEdge) {
        int de = t.double_edge();
        int root = t.edges[de].u;
        if (j <= 2) {
            c.kind = CaseKind::DE2c;
            c.h = detail::label_of(t, t.next_at(root, de));
            c.swap12 = j == 2;
            return c;
        }
        auto en = detail::edge_ends(t, L, j, root);
        bool pendant = t.degree(en.lower) == 1;
        if (j == 3) {
            if (pendant) {
                c.kind = CaseKind::DE2a;
                return c;
            }
            c.kind = CaseKind::DE2b;
            c.h = detail::label_of(t, t.next_at(en.lower, t.edge_of(3)));
            c.l = m + 1;
            for (int k = 4; k <= m; ++k)
                if (L.phi[k] == 0) {
                    c.l = k;
                    break;
                }
            return c;
        }
        detail::regular_subcase(t, L, j, root, c);
        c.kind = c.sub;
        return c;
    }
    c.m1 = L.sizes[0];
    c.m2 = L.sizes[1];
    c.m3 = L.sizes[2];
    const int e1 = t.edge_of(1), e2 = t.edge_of(2), em = t.edge_of(m);
    const int rootY = t.common_vertex(em, e2), rootZ = t.common_vertex(e2, e1), rootX = t.common_vertex(e1, em);
    if (j == 1) {
        if (c.m2 == 0) c.kind = CaseKind::TT3a;
        else {
            c.kind = CaseKind::TT4a;
            c.h = detail::label_of(t, t.next_at(rootZ, e1));
        }
        return c;
    }
    if (j == 2) {
        if (c.m1 == 0) c.kind = CaseKind::TT3b;
        else {
            c.kind = CaseKind::TT4b;
            c.d = detail::label_of(t, t.next_at(rootY, e2));
        }
        return c;
    }
    if (j == m) {
        if (c.m3 == 0) c.kind = CaseKind::TT3c;
        else {
            c.kind = CaseKind::TT4c;
            c.l = detail::label_of(t, t.next_at(rootX, em));
        }
        return c;
    }
    c.block = L.block[j];
    const int root = c.block == 1 ? rootY : c.block == 2 ? rootZ : rootX;
    auto en = detail::edge_ends(t, L, j, root);
    const int je = t.edge_of(j);
    int up = detail::label_of(t, t.next_at(en.upper, je));
    if (!t.is_central(up)) {
        detail::regular_subcase(t, L, j, root, c);
        c.kind = CaseKind::TT1;
        return c;
    }
    if (t.degree(en.lower) == 1) {
        c.kind = CaseKind::TT2a;
        return c;
    }
    c.h = detail::label_of(t, t.next_at(en.lower, je));
    if (c.block == 3) c.kind = CaseKind::TT2bi;
    else if (c.block == 2) c.kind = CaseKind::TT2bii;
    else {
        c.kind = CaseKind::TT2biii;
        c.l = c.m1 + 2;
        for (int k = 4; k <= c.m1 + 2; ++k)
            if (L.phi[k] == 0) {
                c.l = k - 1;
                break;
            }
    }
    return c;
}

namespace detail {

// sigma_a^e sigma_{a-1}^e ... sigma_b^e; empty when a < b
inline void desc(GWord& w, int a, int b, int e = 1) {
    for (int i = a; i >= b; --i) w.s(i, e);
}
// sigma_a^e sigma_{a+1}^e ... sigma_b^e; empty when a > b
inline void asc(GWord& w, int a, int b, int e = 1) {
    for (int i = a; i <= b; ++i) w.s(i, e);
}

inline GWord de_case1_word(CaseKind k, int j, int h, int l) {
    GWord w;
    switch (k) {
        case CaseKind::DE1a: break;
        case CaseKind::DE1b: w.s(j); break;
        case CaseKind::DE1c: asc(w, j + 1, h, -1); break;
        case CaseKind::DE1d:
            desc(w, h, l + 1);
            asc(w, j, l - 1, -1);
            desc(w, l, j);
            break;
        default: throw std::logic_error("de_case1_word: not a first-kind case");
    }
    return w;
}

}  // namespace detail

// Known misprints in the table. The only one found: the shift of triple 4c,
// which the replay puts one degree higher.
enum class WordSource { Corrected, Printed };

// The twist word of a case.
inline GWord case_twist_word(const CaseId& c, WordSource src = WordSource::Corrected) {
    const int m = c.m;
    if (m < 4) throw std::invalid_argument("case_twist_word: m must be at least 4");
    auto block = [&](int k) { return wrap_block(m).power(k); };
    GWord w;
    using detail::asc;
    using detail::desc;
    switch (c.kind) {
        case CaseKind::DE1a:
        case CaseKind::DE1b:
        case CaseKind::DE1c:
        case CaseKind::DE1d: return detail::de_case1_word(c.kind, c.j, c.h, c.l);
        case CaseKind::TT1: return detail::de_case1_word(c.sub, c.j, c.h, c.l);
        case CaseKind::DE2a: return f_word(m, 1);
        case CaseKind::DE2b:
            asc(w, m - c.l + 5, m - c.l + c.h + 1, -1);
            w.append(block(c.l - 3)).sh(-2 * (c.l - 3));
            return w;
        case CaseKind::DE2c:
            desc(w, m, 4);
            w.s(3).s(1);
            asc(w, 4, c.h, -1);
            w.sh(-1);
            return c.swap12 ? w.swapped12() : w;
        case CaseKind::TT2a:
            if (c.block != 1) return w;
            w.s(m).s(m);
            desc(w, m - 1, 4);
            w.s(3).s(1).s(2).s(3).sh(-2);
            return w;
        case CaseKind::TT2bi: asc(w, c.m1 + c.m2 + 4, c.h, -1); return w;
        case CaseKind::TT2bii: asc(w, c.m1 + 4, c.h, -1); return w;
        case CaseKind::TT2biii:
            asc(w, m - c.l + 3, m - c.l + c.h - 1, -1);
            desc(w, m, m - c.l + 3);
            w.append(block(c.l - 2)).sh(-2 * (c.l - 2));
            return w;
        case CaseKind::TT3a:
            asc(w, 3, m - c.m1, -1);
            w.append(block(c.m1)).sh(-2 * c.m1 + 1);
            return w;
        case CaseKind::TT3b:
        case CaseKind::LastSquare2:
            w.s(1, -1).s(3, -1).s(1, -1);
            asc(w, 4, m, -1);
            w.sh(2);
            return w;
        case CaseKind::TT3c:
            w.s(2).append(block(m - 3)).sh(-2 * (m - 3));
            return w;
        case CaseKind::TT4a:
            w.s(2);
            desc(w, c.m2 + 2, 3);
            w.s(2, -1);
            asc(w, 4, c.h - c.m1, -1);
            desc(w, m, 3);
            w.s(2);
            asc(w, 4, m - c.m1, -1);
            w.append(block(c.m1)).sh(-2 * c.m1 - 1);
            return w;
        case CaseKind::TT4b:
            w.s(1);
            desc(w, c.m1 + 2, 3);
            w.s(1, -1);
            asc(w, 4, c.d, -1);
            return w;
        case CaseKind::TT4c:
            w.s(2).s(1).append(block(c.l - 2)).sh(src == WordSource::Printed ? -2 * c.l + 2 : -2 * c.l + 3);
            return w;
        case CaseKind::FirstStep: return c.j == 3 ? f_word(m, 1) : w;
        case CaseKind::LastTwist: w.s(c.j); return w;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Direct replay of one step.

template <class F>
struct CaseReplay {
    ModifiedBrauerTree target;          // mu_j^+(G) with inherited labels
    LabelPermutation rho;               // chosen standard labeling of target
    int rotation = 0;
    TiltingComplex<F> result;           // relabeled so that label i is H(P_i)
};

// (standard sequence of G')^-1 ∘ mu_j^+ ∘ (standard sequence of G) on Lambda,
// with the standard labeling of G' given by rotation.
template <class F>
CaseReplay<F> replay_case(const PathAlgebra<F>& A, const ModifiedBrauerTree& G, int j, int rotation,
                          MutationOptions opt = {}) {
    CaseReplay<F> r;
    auto T = apply_mutations(TiltingComplex<F>::regular(A), standard_sequence(G), opt);
    T = silt_mutate(T, j, +1, opt);
    r.target = mutate_tree(G, j, +1);
    r.rotation = rotation;
    r.rho = standard_labeling_rotated(r.target, rotation);
    auto S = relabel(r.target, r.rho.inverse());
    auto back = standard_sequence(S).inverse().relabeled(r.rho);
    r.result = apply_mutations(T, back, opt).relabeled(r.rho.inverse());
    return r;
}

// A case word pinned down exactly: tau letters are added on either side so
// that the labeled evaluation agrees with the replay summand by summand.
struct CaseMatch {
    CaseId id;
    GWord word;    // exact word, taus included
    GWord table;   // the word from the table
    int rotation = 0;
};

template <class F>
std::optional<CaseMatch> match_case(const TwistFrame<F>& fr, const ModifiedBrauerTree& G, int j, int rotation,
                                    const CaseId& id, WordSource src = WordSource::Corrected) {
    CaseMatch cm;
    cm.id = id;
    cm.table = case_twist_word(cm.id, src);
    cm.rotation = rotation;
    auto ev = eval_gword(fr, cm.table).T;
    auto rp = replay_case(fr.algebra(), G, j, rotation, fr.options()).result;
    auto sw = LabelPermutation::transposition(G.m, 1, 2);
    auto tw = twist_by(swap12(fr.algebra()), ev);
    GWord t;
    t.t();
    const std::pair<TiltingComplex<F>, GWord> variants[] = {
        {ev, cm.table},
        {ev.relabeled(sw), GWord(t).append(cm.table)},
        {tw, GWord(cm.table).append(t)},
        {tw.relabeled(sw), GWord(t).append(cm.table).append(t)},
    };
    for (const auto& [X, w] : variants)
        if (same_summands(X, rp)) {
            cm.word = w;
            return cm;
        }
    return std::nullopt;
}

template <class F>
std::optional<CaseMatch> match_case(const TwistFrame<F>& fr, const ModifiedBrauerTree& G, int j, int rotation,
                                    WordSource src = WordSource::Corrected) {
    return match_case(fr, G, j, rotation, classify_case(G, j), src);
}

// The pieces at the ends of a decomposition, as cases in their own right.
inline CaseId boundary_case(CaseKind k, int m, int j) {
    if (k != CaseKind::FirstStep && k != CaseKind::LastTwist && k != CaseKind::LastSquare2)
        throw std::invalid_argument("boundary_case: not a boundary piece");
    CaseId c;
    c.kind = k;
    c.m = m;
    c.j = j;
    return c;
}

struct CaseCheck {
    CaseId id;
    bool ok = false;
    int rotation = -1;
    std::string word;
    std::string detail;
};

// Compares the table word with the replay in pic mode. Where the target is a
// TripleTree the three standard labelings are tried and the matching one is
// reported.
template <class F>
CaseCheck check_case(const TwistFrame<F>& fr, const ModifiedBrauerTree& G, int j, WordSource src = WordSource::Corrected) {
    CaseCheck out;
    out.id = classify_case(G, j);
    out.word = case_twist_word(out.id, src).str();
    auto target = mutate_tree(G, j, +1);
    for (int s = 0; s < num_standard_labelings(target); ++s)
        if (auto cm = match_case(fr, G, j, s, src)) {
            out.ok = true;
            out.rotation = s;
            return out;
        }
    auto ev = eval_gword(fr, case_twist_word(out.id, src));
    std::string why;
    pic_equal(ev.T, replay_case(fr.algebra(), G, j, 0, fr.options()).result, PicMode::Pic, &why);
    out.detail = why;
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition of a mutation word into twists.
//
// Invariant after each step: with S the replayed complex, G its tree, sigma
// the chosen standard labeling of G and E the equivalence of the word so far,
// S[sigma(i)] = E(ST[i]) where ST is the standard sequence of the
// standardized G replayed on Lambda. A + step composes E with the case
// equivalence on the right, which puts its word on the left.

struct Decomposition {
    GWord word;
    LabelPermutation final_labels;  // sigma at the end
    std::vector<CaseId> steps;
    MutationWord path;  // the + word actually decomposed
};

// T >= U: Hom(T, U[k]) = 0 for k > 0. Only the summands of T listed are checked.
template <class F>
bool silting_geq(const PathAlgebra<F>& A, const std::vector<ProjComplex<F>>& T, const std::vector<ProjComplex<F>>& U) {
    for (const auto& X : T)
        for (const auto& Y : U) {
            if (X.terms.empty() || Y.terms.empty()) continue;
            for (int k = std::max(1, Y.lo() - X.hi()); k <= Y.hi() - X.lo(); ++k)
                if (hom_K_dim(A, X, Y, k) != 0) return false;
        }
    return true;
}

// A left mutation path from Lambda to U[n] with U[n] in degrees <= 0:
// greedily mutate at any summand outside add U[n] as long as the result
// stays above U[n]. Returns the path and pi with path(Lambda)[l] = U[n][pi(l)].
template <class F>
std::pair<MutationWord, LabelPermutation> left_mutation_path(const TiltingComplex<F>& U, int& n, MutationOptions opt = {},
                                                             int max_steps = 400) {
    const auto& A = U.algebra();
    const int m = U.m();
    n = std::numeric_limits<int>::min();
    for (const auto& X : U.summands()) n = std::max(n, X.hi());
    const auto Us = U.shifted(n).summands();
    auto V = TiltingComplex<F>::regular(A);
    MutationWord path;
    auto in_U = [&](const ProjComplex<F>& X) -> int {
        for (int l = 1; l <= m; ++l)
            if (is_isomorphic(A, X, Us[l - 1]).iso) return l;
        return 0;
    };
    for (int steps = 0;; ++steps) {
        std::vector<int> where(m + 1, 0);
        bool done = true;
        for (int l = 1; l <= m; ++l) {
            where[l] = in_U(V.summand(l));
            if (!where[l]) done = false;
        }
        if (done) {
            LabelPermutation pi = LabelPermutation::identity(m);
            for (int l = 1; l <= m; ++l) pi.img[l] = where[l];
            std::vector<int> seen(where.begin() + 1, where.end());
            std::sort(seen.begin(), seen.end());
            if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw std::logic_error("left_mutation_path: summands repeat");
            return {path, pi};
        }
        if (steps == max_steps) throw std::runtime_error("left_mutation_path: no path within the step bound");
        bool moved = false;
        for (int j = 1; j <= m && !moved; ++j) {
            if (where[j]) continue;
            auto W = silt_mutate(V, j, +1, opt);
            if (!silting_geq(A, {W.summand(j)}, Us)) continue;
            V = W;
            path.push(j, +1);
            moved = true;
        }
        if (!moved) throw std::logic_error("left_mutation_path: stuck above the target");
    }
}

namespace detail {

template <class F>
Decomposition decompose_plus(const TwistFrame<F>& fr, const MutationWord& w) {
    const int m = fr.m();
    ModifiedBrauerTree G = gamma_tree(m);
    LabelPermutation sigma = LabelPermutation::identity(m);
    Decomposition out;
    for (const auto& st : w.steps) {
        if (st.label < 1 || st.label > m) throw std::out_of_range("decompose: label out of range");
        if (st.dir < 0) throw std::logic_error("decompose_plus: minus step");
        auto Gs = relabel(G, sigma.inverse());
        int js = sigma.inverse()(st.label);
        auto target = mutate_tree(Gs, js, +1);
        // several labelings may fit; the shortest word wins. Leaving the
        // star, the first-step piece is tried as well.
        std::vector<CaseId> ids{classify_case(Gs, js)};
        if (same_labeled(Gs, gamma_tree(m))) ids.insert(ids.begin(), boundary_case(CaseKind::FirstStep, m, js));
        std::optional<CaseMatch> cm;
        for (const auto& id : ids)
            for (int r = 0; r < num_standard_labelings(target); ++r)
                if (auto c = match_case(fr, Gs, js, r, id); c && (!cm || c->word.letters.size() < cm->word.letters.size()))
                    cm = c;
        if (!cm) throw std::runtime_error("decompose: no case word matches at step " + std::to_string(st.label) + "+ (" +
                                          classify_case(Gs, js).str() + ")");
        out.word = GWord(cm->word).append(out.word);
        out.steps.push_back(cm->id);
        sigma = sigma * standard_labeling_rotated(target, cm->rotation);
        G = mutate_tree(G, st.label, +1);
    }
    if (!same_shape(G, gamma_tree(m))) throw std::invalid_argument("decompose: the word does not return to Lambda");
    out.word.sh(w.shift);
    out.final_labels = sigma;
    out.path = w;
    return out;
}

}  // namespace detail

// Words with - steps are first replaced by a left mutation path reaching the
// same tilting complex up to shift and labels.
template <class F>
Decomposition decompose(const TwistFrame<F>& fr, const MutationWord& w, bool verify = true) {
    const int m = fr.m();
    for (const auto& st : w.steps)
        if (st.label < 1 || st.label > m) throw std::out_of_range("decompose: label out of range");
    ModifiedBrauerTree G = gamma_tree(m);
    bool plus = true;
    for (const auto& st : w.steps) {
        G = mutate_tree(G, st.label, st.dir);
        plus = plus && st.dir > 0;
    }
    if (!same_shape(G, gamma_tree(m))) throw std::invalid_argument("decompose: the word does not return to Lambda");
    std::optional<TiltingComplex<F>> S;
    auto replay = [&]() -> const TiltingComplex<F>& {
        if (!S) S = apply_mutations(TiltingComplex<F>::regular(fr.algebra()), w, fr.options());
        return *S;
    };
    Decomposition out;
    if (plus) {
        out = detail::decompose_plus(fr, w);
    } else {
        int n = 0;
        auto [path, pi] = left_mutation_path(replay(), n, fr.options());
        out = detail::decompose_plus(fr, path);
        out.word.sh(-n);
        out.final_labels = pi * out.final_labels;
    }
    out.word = out.word.reduced();
    if (verify) {
        auto E = eval_gword(fr, out.word);
        std::string why;
        if (!pic_equal(E.T, replay().relabeled(out.final_labels.inverse()), PicMode::Pic0, &why))
            throw std::runtime_error("decompose: verification failed: " + why);
    }
    return out;
}

}  // namespace dpic
