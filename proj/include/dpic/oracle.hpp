#pragma once
#include <algorithm>
#include <functional>
#include <vector>

#include "dpic/algebra.hpp"

// Brute-force dimensions of a bound quiver algebra, written without any of
// the machinery in algebra.hpp: every path up to a length bound is listed,
// the two-sided ideal is spanned by p*r*q for all relations r and all paths
// p, q, and each corner is reduced by plain Gaussian elimination.

namespace dpic::oracle {

struct PathDims {
    int bound = 0;
    bool stable = false;                   // bound and bound + 1 agree
    std::vector<std::vector<int>> dim;     // [i][j] = dim of paths i -> j modulo the ideal
};

namespace detail {

struct Walk {
    int src, dst;
    std::vector<int> arrows;
};

template <class F>
std::vector<Walk> all_walks(const QuiverPresentation<F>& P, int L) {
    std::vector<Walk> out;
    for (int v = 1; v <= P.n; ++v) out.push_back({v, v, {}});
    std::size_t lo = 0;
    for (int len = 1; len <= L; ++len) {
        std::size_t hi = out.size();
        for (std::size_t k = lo; k < hi; ++k)
            for (int a = 0; a < static_cast<int>(P.arrows.size()); ++a) {
                if (P.arrows[a].src != out[k].dst) continue;
                Walk w = out[k];
                w.arrows.push_back(a);
                w.dst = P.arrows[a].dst;
                out.push_back(std::move(w));
            }
        lo = hi;
    }
    return out;
}

template <class F>
int rank_of(std::vector<std::vector<F>> rows, int cols) {
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int k = r; k < static_cast<int>(rows.size()); ++k)
            if (!is_zero(rows[k][c])) {
                piv = k;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[r]);
        for (int k = 0; k < static_cast<int>(rows.size()); ++k) {
            if (k == r || is_zero(rows[k][c])) continue;
            F f = rows[k][c] / rows[r][c];
            for (int x = c; x < cols; ++x) rows[k][x] -= f * rows[r][x];
        }
        ++r;
    }
    return r;
}

template <class F>
std::vector<std::vector<int>> dims_at(const QuiverPresentation<F>& P, int L) {
    const int n = P.n;
    auto walks = all_walks(P, L);
    std::vector<std::vector<int>> dim(n + 1, std::vector<int>(n + 1, 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            std::map<std::vector<int>, int> col;
            for (const auto& w : walks)
                if (w.src == i && w.dst == j && !(w.arrows.empty() && i != j)) col.emplace(w.arrows, 0);
            int c = 0;
            for (auto& [k, v] : col) v = c++;
            std::vector<std::vector<F>> rows;
            for (const auto& r : P.relations) {
                int a = P.arrows[r.terms.front().second.front()].src;
                int b = P.arrows[r.terms.front().second.back()].dst;
                for (const auto& p : walks) {
                    if (p.src != i || p.dst != a) continue;
                    for (const auto& q : walks) {
                        if (q.src != b || q.dst != j) continue;
                        std::vector<F> row(c, F(0));
                        bool any = false;
                        for (const auto& [coef, t] : r.terms) {
                            std::vector<int> full = p.arrows;
                            full.insert(full.end(), t.begin(), t.end());
                            full.insert(full.end(), q.arrows.begin(), q.arrows.end());
                            if (static_cast<int>(full.size()) > L) continue;
                            row[col.at(full)] += coef;
                            any = true;
                        }
                        if (any) rows.push_back(std::move(row));
                    }
                }
            }
            dim[i][j] = c - rank_of(std::move(rows), c);
        }
    return dim;
}

template <class F>
int longest_cycle(const QuiverPresentation<F>& P) {
    int best = 0;
    std::vector<char> on(P.n + 1, 0);
    std::function<void(int, int, int)> go = [&](int start, int v, int len) {
        for (const auto& a : P.arrows) {
            if (a.src != v) continue;
            if (a.dst == start) best = std::max(best, len + 1);
            else if (!on[a.dst] && a.dst > start) {
                on[a.dst] = 1;
                go(start, a.dst, len + 1);
                on[a.dst] = 0;
            }
        }
    };
    for (int s = 1; s <= P.n; ++s) go(s, s, 0);
    return best;
}

}  // namespace detail

// Nonzero paths lie on a single cycle, so the longest cycle plus one bounds
// them; the bound is accepted when one more step changes nothing.
template <class F>
PathDims path_dims(const QuiverPresentation<F>& P, int bound = 0) {
    PathDims out;
    out.bound = bound > 0 ? bound : detail::longest_cycle(P) + 1;
    out.dim = detail::dims_at(P, out.bound);
    out.stable = detail::dims_at(P, out.bound + 1) == out.dim;
    return out;
}

}  // namespace dpic::oracle
