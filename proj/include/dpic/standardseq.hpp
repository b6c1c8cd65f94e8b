#pragma once
#include <array>
#include <stdexcept>
#include <vector>

#include "dpic/algebra.hpp"
#include "dpic/complex.hpp"
#include "dpic/tree.hpp"

namespace dpic {

// Levels of a standardly labeled tree: phi = distance of an edge from its
// root (0 on root edges), psi = the adjacent edge one level closer.
// block[i] = 0 for the double edge / central triangle, else 1..3 (triple
// blocks) or 1 (regular edges of a double edge tree).
struct LevelData {
    TreeKind kind = TreeKind::DoubleEdge;
    int m = 0;
    std::vector<int> phi, psi, block;
    std::array<int, 3> sizes{0, 0, 0};
};

// Any of the standard labelings counts (three for a TripleTree).
inline bool is_standard(const ModifiedBrauerTree& t) {
    if (t.kind == TreeKind::Plain) return false;
    for (int s = 0; s < num_standard_labelings(t); ++s)
        if (standard_labeling_rotated(t, s).is_identity()) return true;
    return false;
}

inline LevelData level_functions(const ModifiedBrauerTree& t) {
    if (!is_standard(t)) throw std::invalid_argument("level_functions: tree is not standardly labeled");
    LevelData L;
    L.kind = t.kind;
    L.m = t.m;
    L.phi.assign(t.m + 1, 0);
    L.psi.assign(t.m + 1, 0);
    L.block.assign(t.m + 1, 0);
    auto walk = [&](int root, int blk, const std::vector<int>& skip) {
        // edges at the root other than the skipped ones start at level 0
        std::vector<std::pair<int, int>> stack;  // (edge, vertex away from root)
        for (int e : t.rot[root]) {
            if (std::find(skip.begin(), skip.end(), e) != skip.end()) continue;
            int l = t.edges[e].labels[0];
            L.phi[l] = 0;
            L.block[l] = blk;
            stack.push_back({e, t.other_end(e, root)});
        }
        while (!stack.empty()) {
            auto [e, w] = stack.back();
            stack.pop_back();
            int pl = t.edges[e].labels[0];
            for (int f : t.rot[w]) {
                if (f == e) continue;
                int l = t.edges[f].labels[0];
                L.phi[l] = L.phi[pl] + 1;
                L.psi[l] = pl;
                L.block[l] = blk;
                stack.push_back({f, t.other_end(f, w)});
            }
        }
    };
    if (t.kind == TreeKind::DoubleEdge) {
        int d = t.double_edge();
        walk(t.edges[d].u, 1, {d});
        L.block[1] = L.block[2] = 0;
        L.sizes = {t.m - 2, 0, 0};
        return L;
    }
    // central (a,b,c) = (2,1,m): G1 at the root of (m,2), G2 at (2,1), G3 at (1,m)
    int e1 = t.edge_of(1), e2 = t.edge_of(2), em = t.edge_of(t.m);
    walk(t.common_vertex(em, e2), 1, {em, e2});
    walk(t.common_vertex(e2, e1), 2, {e2, e1});
    walk(t.common_vertex(e1, em), 3, {e1, em});
    L.sizes = triple_block_sizes(t);
    return L;
}

// Application order. Double edge trees: labels ascending, label i repeated
// phi(i) times. Triple trees: mu_2, then theta, then the three blocks.
inline MutationWord standard_sequence(const ModifiedBrauerTree& t) {
    auto L = level_functions(t);
    MutationWord w;
    auto blocks = [&](int lo, int hi, int blk) {
        for (int i = lo; i <= hi; ++i)
            if (L.block[i] == blk) w.push(i, +1, L.phi[i]);
    };
    if (t.kind == TreeKind::DoubleEdge) {
        blocks(3, t.m, 1);
        return w;
    }
    const int m1 = L.sizes[0], m2 = L.sizes[1];
    w.push(2, +1);
    for (int k = 3; k <= m1 + 2; ++k) w.push(k, +1, 2);
    for (int k = m1 + 3; k <= m1 + m2 + 2; ++k) w.push(k, +1);
    blocks(3, m1 + 2, 1);
    blocks(m1 + 3, m1 + m2 + 2, 2);
    blocks(m1 + m2 + 3, t.m - 1, 3);
    return w;
}

namespace detail {

// The only basis element of Hom(P_i, P_j), which must be one-dimensional.
template <class F>
Vec<F> unique_map(const PathAlgebra<F>& A, int i, int j) {
    if (A.dim(i, j) != 1) throw std::logic_error("closed form: Hom(P" + std::to_string(i) + ", P" + std::to_string(j) + ") is not one-dimensional");
    return Vec<F>{F(1)};
}

inline std::string beta_path(int k, const char* tail) {
    std::string s;
    for (int i = k; i >= 4; --i) s += "beta" + std::to_string(i) + " ";
    return s + tail;
}

}  // namespace detail

template <class F>
ProjComplex<F> q_complex(const PathAlgebra<F>& A, int k) {
    const int m = A.n();
    ProjComplex<F> X;
    X.terms[-2] = {k};
    X.terms[-1] = {1, 2};
    X.terms[0] = {m};
    Mat<F> d0 = zero_mat(A, {k}, {1, 2});
    d0.at(0, 0) = A.element(detail::beta_path(k, "alpha1"));
    for (auto& x : d0.at(0, 0)) x = -x;
    d0.at(1, 0) = A.element(detail::beta_path(k, "alpha2"));
    Mat<F> d1 = zero_mat(A, {1, 2}, {m});
    d1.at(0, 0) = A.element("delta1");
    d1.at(0, 1) = A.element("delta2");
    X.d[-2] = d0;
    X.d[-1] = d1;
    return X;
}

template <class F>
ProjComplex<F> l_complex(const PathAlgebra<F>& A, int t) {
    return shift(two_term(A, t, 1, A.element(detail::beta_path(t, "alpha1"))), 1);
}

// Summands of the standard tilting complex, over the star algebra.
template <class F>
std::vector<ProjComplex<F>> standard_complex(const ModifiedBrauerTree& t, const PathAlgebra<F>& A) {
    auto L = level_functions(t);
    const int m = t.m;
    if (A.n() != m) throw std::invalid_argument("standard_complex: algebra size mismatch");
    std::vector<ProjComplex<F>> out(m);
    auto down = [&](int i, int extra) {
        return shift(two_term(A, i, L.psi[i], detail::unique_map(A, i, L.psi[i])), L.phi[i] + extra);
    };
    if (t.kind == TreeKind::DoubleEdge) {
        out[0] = stalk(A, 1);
        out[1] = stalk(A, 2);
        for (int i = 3; i <= m; ++i) out[i - 1] = L.phi[i] == 0 ? stalk(A, i) : down(i, 0);
        return out;
    }
    out[0] = stalk(A, 1);
    out[1] = shift(two_term(A, 2, m, A.element("delta2")), 1);
    out[m - 1] = stalk(A, m);
    for (int i = 3; i < m; ++i) {
        switch (L.block[i]) {
            case 1: out[i - 1] = L.phi[i] == 0 ? q_complex(A, i) : down(i, 2); break;
            case 2: out[i - 1] = L.phi[i] == 0 ? l_complex(A, i) : down(i, 1); break;
            case 3: out[i - 1] = L.phi[i] == 0 ? stalk(A, i) : down(i, 0); break;
            default: throw std::logic_error("standard_complex: label outside the blocks");
        }
    }
    return out;
}

}  // namespace dpic
