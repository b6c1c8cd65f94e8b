#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpic/field.hpp"
#include "dpic/linalg.hpp"
#include "dpic/tree.hpp"

namespace dpic {

// An arrow is a morphism P_src -> P_dst; a path lists arrows in the order
// they are applied.
struct Arrow {
    std::string name;
    int src = 0, dst = 0;
};

using ArrowPath = std::vector<int>;

template <class F>
struct Relation {
    std::vector<std::pair<F, ArrowPath>> terms;
};

template <class F>
struct QuiverPresentation {
    int n = 0;  // vertices 1..n
    std::vector<Arrow> arrows;
    std::vector<Relation<F>> relations;
    std::map<std::string, ArrowPath> aliases;
    int longest_cycle = 0;

    int arrow_index(const std::string& name) const {
        for (int a = 0; a < static_cast<int>(arrows.size()); ++a)
            if (arrows[a].name == name) return a;
        return -1;
    }
    int add_arrow(const std::string& name, int s, int t) {
        arrows.push_back({name, s, t});
        return static_cast<int>(arrows.size()) - 1;
    }

    // Names separated by spaces; each is an arrow name or an alias.
    ArrowPath parse_path(const std::string& text) const {
        ArrowPath p;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (auto it = aliases.find(tok); it != aliases.end()) {
                p.insert(p.end(), it->second.begin(), it->second.end());
                continue;
            }
            int a = arrow_index(tok);
            if (a < 0) throw std::invalid_argument("unknown arrow: " + tok);
            p.push_back(a);
        }
        return p;
    }

    std::vector<std::string> check() const {
        std::vector<std::string> out;
        for (const auto& a : arrows)
            if (a.src < 1 || a.src > n || a.dst < 1 || a.dst > n) out.push_back("arrow " + a.name + " out of range");
        for (const auto& r : relations) {
            int s = -1, t = -1;
            for (const auto& [c, p] : r.terms) {
                if (p.empty()) {
                    out.push_back("relation with an idempotent term");
                    continue;
                }
                for (std::size_t i = 0; i + 1 < p.size(); ++i)
                    if (arrows[p[i]].dst != arrows[p[i + 1]].src) out.push_back("relation term is not a path");
                int ps = arrows[p.front()].src, pt = arrows[p.back()].dst;
                if (s < 0) s = ps, t = pt;
                else if (s != ps || t != pt) out.push_back("relation terms are not parallel");
            }
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Multiplication data shared by path algebras and endomorphism algebras:
// Hom(P_i, P_j) has dimension dim[i][j]; compose(i,j,k) gives g∘f for
// f : i -> j, g : j -> k as coordinates in Hom(i,k).

template <class F>
struct AlgebraTable {
    int n = 0;
    std::vector<std::vector<int>> dim;              // [i][j], 1-based
    std::vector<Vec<F>> unit;                       // identity of Hom(i,i)
    std::vector<std::vector<Vec<F>>> table;         // flattened (i,j,k) -> [p*dim(j,k)+q] -> Hom(i,k)

    std::size_t key(int i, int j, int k) const { return (static_cast<std::size_t>(i) * (n + 1) + j) * (n + 1) + k; }

    void init(int nn) {
        n = nn;
        dim.assign(n + 1, std::vector<int>(n + 1, 0));
        unit.assign(n + 1, {});
        table.assign(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1), {});
    }

    const Vec<F>& basis_product(int i, int j, int k, int p, int q) const {
        return table[key(i, j, k)][static_cast<std::size_t>(p) * dim[j][k] + q];
    }

    // g∘f : first f then g
    Vec<F> compose(int i, int j, int k, const Vec<F>& f, const Vec<F>& g) const {
        Vec<F> out(dim[i][k], F(0));
        if (out.empty()) return out;
        const auto& tb = table[key(i, j, k)];
        for (int p = 0; p < dim[i][j]; ++p) {
            if (is_zero(f[p])) continue;
            for (int q = 0; q < dim[j][k]; ++q) {
                if (is_zero(g[q])) continue;
                F c = f[p] * g[q];
                const auto& v = tb[static_cast<std::size_t>(p) * dim[j][k] + q];
                for (int r = 0; r < dim[i][k]; ++r)
                    if (!is_zero(v[r])) out[r] += c * v[r];
            }
        }
        return out;
    }

    std::vector<std::vector<int>> cartan() const {
        std::vector<std::vector<int>> c(n + 1, std::vector<int>(n + 1, 0));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) c[i][j] = dim[i][j];
        return c;
    }
    int total_dim() const {
        int s = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) s += dim[i][j];
        return s;
    }
};

struct BasisPath {
    int src = 0, dst = 0;
    ArrowPath arrows;
};

template <class F>
class PathAlgebra {
public:
    QuiverPresentation<F> pres;
    AlgebraTable<F> tab;
    std::vector<std::vector<std::vector<BasisPath>>> hom;  // [i][j] basis paths i -> j
    std::vector<Vec<F>> socle;                            // socle element of Hom(i,i)
    int bound = 0;                                        // length bound used

    int n() const { return pres.n; }
    int dim(int i, int j) const { return tab.dim[i][j]; }
    const std::vector<std::vector<int>>& cartan_ref() const { return tab.dim; }
    std::vector<std::vector<int>> cartan() const { return tab.cartan(); }
    int total_dim() const { return tab.total_dim(); }

    Vec<F> zero(int i, int j) const { return Vec<F>(dim(i, j), F(0)); }
    Vec<F> identity(int i) const { return tab.unit[i]; }

    // Normal form of a path (arrows in application order) from i to j.
    Vec<F> path_element(const ArrowPath& p) const {
        if (p.empty()) throw std::invalid_argument("path_element: empty path has no endpoints");
        int i = pres.arrows[p.front()].src, j = pres.arrows[p.back()].dst;
        for (std::size_t a = 0; a + 1 < p.size(); ++a)
            if (pres.arrows[p[a]].dst != pres.arrows[p[a + 1]].src) throw std::invalid_argument("not a path");
        auto it = nf_.find(p);
        if (it == nf_.end()) return zero(i, j);
        return it->second;
    }
    Vec<F> element(const std::string& names) const { return path_element(pres.parse_path(names)); }
    std::pair<int, int> endpoints(const std::string& names) const {
        auto p = pres.parse_path(names);
        return {pres.arrows[p.front()].src, pres.arrows[p.back()].dst};
    }

    Vec<F> compose(int i, int j, int k, const Vec<F>& f, const Vec<F>& g) const { return tab.compose(i, j, k, f, g); }

    std::string describe(int i, int j, const Vec<F>& v) const {
        std::string s;
        for (int p = 0; p < dim(i, j); ++p) {
            if (is_zero(v[p])) continue;
            if (!s.empty()) s += " + ";
            s += to_string(v[p]) + "*" + path_name(hom[i][j][p]);
        }
        return s.empty() ? "0" : s;
    }
    std::string path_name(const BasisPath& b) const {
        if (b.arrows.empty()) return "e" + std::to_string(b.src);
        std::string s;
        for (int a : b.arrows) s += (s.empty() ? "" : ".") + pres.arrows[a].name;
        return s;
    }

    // Invertible iff the identity coordinate is nonzero (local corners).
    bool invertible(int i, int j, const Vec<F>& v) const {
        if (i != j) return false;
        return !is_zero(v[unit_pos_[i]]);
    }
    int unit_pos(int i) const { return unit_pos_[i]; }

    std::map<ArrowPath, Vec<F>> nf_;  // normal forms of all tracked paths
    std::vector<int> unit_pos_;
};

// ---------------------------------------------------------------------------
// Basis computation.

namespace detail {

template <class F>
using SparseRow = std::map<int, F>;  // column -> coefficient

inline bool path_less(const ArrowPath& a, const ArrowPath& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

inline int longest_simple_cycle(int n, const std::vector<Arrow>& arrows) {
    std::vector<std::vector<int>> out(n + 1);
    for (const auto& a : arrows) out[a.src].push_back(a.dst);
    int best = 0;
    std::vector<char> on(n + 1, 0);
    std::function<void(int, int, int)> dfs = [&](int start, int v, int len) {
        for (int w : out[v]) {
            if (w == start) best = std::max(best, len + 1);
            else if (!on[w] && w > start) {
                on[w] = 1;
                dfs(start, w, len + 1);
                on[w] = 0;
            }
        }
    };
    for (int s = 1; s <= n; ++s) {
        on[s] = 1;
        dfs(s, s, 0);
        on[s] = 0;
    }
    return best;
}

template <class F>
struct BasisAttempt {
    bool ok = false;
    PathAlgebra<F> alg;
};

template <class F>
BasisAttempt<F> basis_with_bound(const QuiverPresentation<F>& pres, int L) {
    BasisAttempt<F> res;
    const int n = pres.n;
    // monomial relations
    std::set<ArrowPath> monomials;
    std::vector<const Relation<F>*> general;
    for (const auto& r : pres.relations) {
        if (r.terms.size() == 1) monomials.insert(r.terms[0].second);
        else general.push_back(&r);
    }
    std::size_t max_mono = 0;
    for (const auto& mo : monomials) max_mono = std::max(max_mono, mo.size());
    auto ends_with_monomial = [&](const ArrowPath& p) {
        for (std::size_t len = 1; len <= std::min(max_mono, p.size()); ++len) {
            ArrowPath suf(p.end() - len, p.end());
            if (monomials.count(suf)) return true;
        }
        return false;
    };

    // monomial-free paths of length 1..L, extended one arrow at a time
    std::vector<std::vector<int>> out_arrows(n + 1);
    for (int a = 0; a < static_cast<int>(pres.arrows.size()); ++a) out_arrows[pres.arrows[a].src].push_back(a);
    std::vector<ArrowPath> paths;
    std::vector<ArrowPath> frontier;
    for (int a = 0; a < static_cast<int>(pres.arrows.size()); ++a) {
        ArrowPath p{a};
        if (!ends_with_monomial(p)) frontier.push_back(p);
    }
    for (int len = 1; len <= L && !frontier.empty(); ++len) {
        std::vector<ArrowPath> nxt;
        for (auto& p : frontier) {
            paths.push_back(p);
            if (len == L) continue;
            for (int a : out_arrows[pres.arrows[p.back()].dst]) {
                ArrowPath q = p;
                q.push_back(a);
                if (!ends_with_monomial(q)) nxt.push_back(std::move(q));
            }
        }
        frontier = std::move(nxt);
    }
    std::sort(paths.begin(), paths.end(), path_less);
    std::map<ArrowPath, int> col;
    for (int c = 0; c < static_cast<int>(paths.size()); ++c) col[paths[c]] = c;

    // paths by source and by target (including "empty" handled separately)
    std::vector<std::vector<int>> by_src(n + 1), by_dst(n + 1);
    for (int c = 0; c < static_cast<int>(paths.size()); ++c) {
        by_src[pres.arrows[paths[c].front()].src].push_back(c);
        by_dst[pres.arrows[paths[c].back()].dst].push_back(c);
    }

    // semi-echelon of ideal rows keyed by leading (largest) column
    std::map<int, SparseRow<F>> pivots;
    auto insert_row = [&](SparseRow<F> row) {
        while (!row.empty()) {
            auto top = std::prev(row.end());
            int c = top->first;
            if (is_zero(top->second)) {
                row.erase(top);
                continue;
            }
            auto pv = pivots.find(c);
            if (pv == pivots.end()) {
                F inv = F(1) / top->second;
                for (auto& [k, v] : row) v *= inv;
                pivots.emplace(c, std::move(row));
                return;
            }
            F f = top->second;
            for (const auto& [k, v] : pv->second) {
                auto it = row.find(k);
                if (it == row.end()) row.emplace(k, -f * v);
                else {
                    it->second -= f * v;
                    if (is_zero(it->second)) row.erase(it);
                }
            }
        }
    };

    for (const auto* r : general) {
        const int s = pres.arrows[r->terms[0].second.front()].src;
        const int t = pres.arrows[r->terms[0].second.back()].dst;
        std::size_t minlen = L + 1;
        for (const auto& [c, p] : r->terms) minlen = std::min(minlen, p.size());
        std::vector<int> pre{-1}, post{-1};
        for (int c : by_dst[s]) pre.push_back(c);
        for (int c : by_src[t]) post.push_back(c);
        for (int pc : pre) {
            std::size_t lp = pc < 0 ? 0 : paths[pc].size();
            if (lp + minlen > static_cast<std::size_t>(L)) continue;
            for (int qc : post) {
                std::size_t lq = qc < 0 ? 0 : paths[qc].size();
                if (lp + minlen + lq > static_cast<std::size_t>(L)) continue;
                SparseRow<F> row;
                for (const auto& [c, p] : r->terms) {
                    ArrowPath full;
                    if (pc >= 0) full = paths[pc];
                    full.insert(full.end(), p.begin(), p.end());
                    if (qc >= 0) full.insert(full.end(), paths[qc].begin(), paths[qc].end());
                    auto it = col.find(full);
                    if (it == col.end()) continue;  // contains a monomial or exceeds the bound
                    row[it->second] += c;
                }
                for (auto it = row.begin(); it != row.end();)
                    if (is_zero(it->second)) it = row.erase(it);
                    else ++it;
                if (!row.empty()) insert_row(std::move(row));
            }
        }
    }

    // normal forms: increasing column order, pivots rewritten into smaller columns
    std::vector<SparseRow<F>> nf(paths.size());
    for (int c = 0; c < static_cast<int>(paths.size()); ++c) {
        auto pv = pivots.find(c);
        if (pv == pivots.end()) {
            nf[c][c] = F(1);
            continue;
        }
        SparseRow<F> v;
        for (const auto& [k, a] : pv->second) {
            if (k == c) continue;
            for (const auto& [b, x] : nf[k]) v[b] -= a * x;
        }
        for (auto it = v.begin(); it != v.end();)
            if (is_zero(it->second)) it = v.erase(it);
            else ++it;
        nf[c] = std::move(v);
    }

    // guard: every path of length L must vanish
    for (int c = 0; c < static_cast<int>(paths.size()); ++c)
        if (static_cast<int>(paths[c].size()) == L && !nf[c].empty()) return res;

    PathAlgebra<F> A;
    A.pres = pres;
    A.bound = L;
    A.hom.assign(n + 1, std::vector<std::vector<BasisPath>>(n + 1));
    std::vector<int> basis_pos(paths.size(), -1);
    for (int i = 1; i <= n; ++i) A.hom[i][i].push_back({i, i, {}});
    for (int c = 0; c < static_cast<int>(paths.size()); ++c) {
        if (pivots.count(c)) continue;
        int s = pres.arrows[paths[c].front()].src, t = pres.arrows[paths[c].back()].dst;
        basis_pos[c] = static_cast<int>(A.hom[s][t].size());
        A.hom[s][t].push_back({s, t, paths[c]});
    }
    A.tab.init(n);
    A.unit_pos_.assign(n + 1, 0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) A.tab.dim[i][j] = static_cast<int>(A.hom[i][j].size());
    for (int i = 1; i <= n; ++i) {
        A.tab.unit[i] = Vec<F>(A.tab.dim[i][i], F(0));
        A.tab.unit[i][0] = F(1);
    }
    auto to_vec = [&](const SparseRow<F>& v, int s, int t) {
        Vec<F> out(A.tab.dim[s][t], F(0));
        for (const auto& [b, x] : v) out[basis_pos[b]] += x;
        return out;
    };
    for (int c = 0; c < static_cast<int>(paths.size()); ++c) {
        int s = pres.arrows[paths[c].front()].src, t = pres.arrows[paths[c].back()].dst;
        A.nf_[paths[c]] = to_vec(nf[c], s, t);
    }
    auto product = [&](const BasisPath& f, const BasisPath& g) -> Vec<F> {
        int s = f.src, t = g.dst;
        if (f.arrows.empty()) {
            Vec<F> out(A.tab.dim[s][t], F(0));
            if (g.arrows.empty()) out[0] = F(1);
            else out = A.nf_.at(g.arrows);
            return out;
        }
        if (g.arrows.empty()) return A.nf_.at(f.arrows);
        ArrowPath full = f.arrows;
        full.insert(full.end(), g.arrows.begin(), g.arrows.end());
        auto it = A.nf_.find(full);
        if (it == A.nf_.end()) return Vec<F>(A.tab.dim[s][t], F(0));
        return it->second;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                int dij = A.tab.dim[i][j], djk = A.tab.dim[j][k];
                if (!dij || !djk) continue;
                auto& tb = A.tab.table[A.tab.key(i, j, k)];
                tb.resize(static_cast<std::size_t>(dij) * djk);
                for (int p = 0; p < dij; ++p)
                    for (int q = 0; q < djk; ++q) tb[static_cast<std::size_t>(p) * djk + q] = product(A.hom[i][j][p], A.hom[j][k][q]);
            }
    // socle of each corner: elements killed by every arrow on both sides
    A.socle.assign(n + 1, {});
    for (int i = 1; i <= n; ++i) {
        int d = A.tab.dim[i][i];
        std::vector<Vec<F>> eqs;
        for (const auto& ar : pres.arrows) {
            if (ar.src == i) {
                auto e = A.path_element({static_cast<int>(&ar - &pres.arrows[0])});
                // x then arrow
                for (int r = 0; r < A.tab.dim[i][ar.dst]; ++r) {
                    Vec<F> row(d, F(0));
                    for (int p = 0; p < d; ++p) {
                        Vec<F> x(d, F(0));
                        x[p] = F(1);
                        row[p] = A.compose(i, i, ar.dst, x, e)[r];
                    }
                    eqs.push_back(row);
                }
            }
            if (ar.dst == i) {
                auto e = A.path_element({static_cast<int>(&ar - &pres.arrows[0])});
                for (int r = 0; r < A.tab.dim[ar.src][i]; ++r) {
                    Vec<F> row(d, F(0));
                    for (int p = 0; p < d; ++p) {
                        Vec<F> x(d, F(0));
                        x[p] = F(1);
                        row[p] = A.compose(ar.src, i, i, e, x)[r];
                    }
                    eqs.push_back(row);
                }
            }
        }
        auto ns = nullspace(eqs, d);
        A.socle[i] = ns.size() == 1 ? ns[0] : Vec<F>{};
    }
    res.ok = true;
    res.alg = std::move(A);
    return res;
}

}  // namespace detail

template <class F>
PathAlgebra<F> compute_basis(const QuiverPresentation<F>& pres, int bound = 0) {
    auto diag = pres.check();
    if (!diag.empty()) throw std::invalid_argument("compute_basis: " + diag.front());
    int L = bound > 0 ? bound : std::max(pres.longest_cycle, detail::longest_simple_cycle(pres.n, pres.arrows)) + 2;
    auto r = detail::basis_with_bound(pres, L);
    if (r.ok) return std::move(r.alg);
    if (bound > 0) throw std::runtime_error("compute_basis: paths of the given length bound do not vanish");
    r = detail::basis_with_bound(pres, 2 * L);
    if (r.ok) return std::move(r.alg);
    throw std::runtime_error("compute_basis: length bound exceeded; presentation is not finite-dimensional");
}

// ---------------------------------------------------------------------------
// Presentations from trees.

namespace detail {

// arrows between consecutive slots at every vertex of degree >= 2
template <class F>
struct TreeQuiver {
    QuiverPresentation<F> pres;
    std::map<std::pair<int, int>, int> arrow_of;  // (src label, dst label) -> arrow
    std::map<int, int> vertex_of_arrow;           // arrow -> tree vertex
};

template <class F>
TreeQuiver<F> tree_quiver(const ModifiedBrauerTree& t) {
    TreeQuiver<F> q;
    q.pres.n = t.m;
    for (int w = 0; w < t.num_vertices(); ++w) {
        if (t.degree(w) < 2) continue;
        for (int e : t.rot[w]) {
            int f = t.next_at(w, e);
            for (int a : t.edges[e].labels)
                for (int b : t.edges[f].labels) {
                    int id = q.pres.add_arrow("a" + std::to_string(a) + "_" + std::to_string(b), a, b);
                    q.arrow_of[{a, b}] = id;
                    q.vertex_of_arrow[id] = w;
                }
        }
    }
    return q;
}

// All paths of the given length using only arrows at tree vertex w, from label s.
template <class F>
void walks_at(const TreeQuiver<F>& q, int w, int s, int len, ArrowPath& cur, std::vector<ArrowPath>& out) {
    if (len == 0) {
        out.push_back(cur);
        return;
    }
    for (int a = 0; a < static_cast<int>(q.pres.arrows.size()); ++a) {
        if (q.pres.arrows[a].src != s || q.vertex_of_arrow.at(a) != w) continue;
        cur.push_back(a);
        walks_at(q, w, q.pres.arrows[a].dst, len - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

template <class F>
QuiverPresentation<F> build_presentation(const ModifiedBrauerTree& t);

namespace detail {

template <class F>
void add_named_aliases(QuiverPresentation<F>& p, const ModifiedBrauerTree& t);

}

// Plain and DoubleEdge trees. Relations: the two cycles at each edge with
// two non-leaf ends agree; consecutive arrows from different vertices
// compose to zero; a cycle followed by one more arrow vanishes (this covers
// the substituted formal loops at leaves); at the double edge the two sheets
// commute and crossing from one sheet to the other around the root is zero.
template <class F>
QuiverPresentation<F> triple_presentation(const ModifiedBrauerTree& t);

template <class F>
QuiverPresentation<F> build_presentation(const ModifiedBrauerTree& t) {
    if (t.kind == TreeKind::TripleTree) return triple_presentation<F>(t);
    auto diag = validate_tree(t);
    if (!diag.empty()) throw std::invalid_argument("build_presentation: " + diag.front());
    auto q = detail::tree_quiver<F>(t);
    auto& P = q.pres;
    auto mono = [&](ArrowPath p) { P.relations.push_back({{{F(1), std::move(p)}}}); };

    if (t.m == 1) {
        int a = P.add_arrow("loop1", 1, 1);
        mono({a, a});
        P.longest_cycle = 1;
        return P;
    }

    const int d = t.double_edge();
    const int X = d >= 0 ? t.edges[d].u : -1;

    // cycle at vertex w starting from label l (via the lower label of the double edge)
    auto cycle_at = [&](int w, int l) {
        ArrowPath c;
        int deg = t.degree(w);
        int cur = l;
        for (int s = 0; s < deg; ++s) {
            int e = t.edge_of(cur);
            int f = t.next_at(w, e);
            int nxt = t.edges[f].labels[0];
            c.push_back(q.arrow_of.at({cur, nxt}));
            cur = nxt;
        }
        if (cur != l) {
            // returning into the double edge through the other sheet
            c.back() = q.arrow_of.at({P.arrows[c.back()].src, l});
        }
        return c;
    };

    int longest = 0;
    for (int w = 0; w < t.num_vertices(); ++w) longest = std::max(longest, t.degree(w));
    P.longest_cycle = longest;

    // (1) equal cycles for regular labels with two non-leaf ends
    for (int l = 1; l <= t.m; ++l) {
        int e = t.edge_of(l);
        if (t.is_double(e)) continue;
        int u = t.edges[e].u, v = t.edges[e].v;
        if (t.degree(u) < 2 || t.degree(v) < 2) continue;
        P.relations.push_back({{{F(1), cycle_at(u, l)}, {F(-1), cycle_at(v, l)}}});
    }
    // (2) consecutive arrows at different vertices
    for (int a = 0; a < static_cast<int>(P.arrows.size()); ++a)
        for (int b = 0; b < static_cast<int>(P.arrows.size()); ++b)
            if (P.arrows[a].dst == P.arrows[b].src && q.vertex_of_arrow[a] != q.vertex_of_arrow[b]) mono({a, b});
    // (3) cycle plus one arrow, at every vertex and starting label
    for (int w = 0; w < t.num_vertices(); ++w) {
        if (t.degree(w) < 2) continue;
        for (int e : t.rot[w])
            for (int l : t.edges[e].labels) {
                std::vector<ArrowPath> walks;
                ArrowPath cur;
                detail::walks_at(q, w, l, t.degree(w) + 1, cur, walks);
                for (auto& p : walks) mono(p);
            }
    }
    // (4) the double edge: sheets commute; crossing sheets is zero
    if (d >= 0) {
        int l1 = t.edges[d].labels[0], l2 = t.edges[d].labels[1];
        int x1 = t.edges[t.prev_at(X, d)].labels[0];
        int x2 = t.edges[t.next_at(X, d)].labels[0];
        P.relations.push_back({{{F(1), ArrowPath{q.arrow_of.at({x1, l1}), q.arrow_of.at({l1, x2})}},
                                {F(-1), ArrowPath{q.arrow_of.at({x1, l2}), q.arrow_of.at({l2, x2})}}}});
        for (auto [s, e] : {std::pair{l1, l2}, std::pair{l2, l1}}) {
            ArrowPath c = cycle_at(X, s);
            c.back() = q.arrow_of.at({P.arrows[c.back()].src, e});
            mono(c);
        }
    }
    detail::add_named_aliases(P, t);
    return P;
}

namespace detail {

// Conventional names for the star and the line.
template <class F>
void add_named_aliases(QuiverPresentation<F>& p, const ModifiedBrauerTree& t) {
    auto arrow = [&](int a, int b) -> int {
        std::string nm = "a" + std::to_string(a) + "_" + std::to_string(b);
        return p.arrow_index(nm);
    };
    const int m = t.m;
    if (same_labeled(t, gamma_tree(m))) {
        p.aliases["alpha1"] = {arrow(3, 1)};
        p.aliases["alpha2"] = {arrow(3, 2)};
        p.aliases["delta1"] = {arrow(1, m)};
        p.aliases["delta2"] = {arrow(2, m)};
        for (int i = 4; i <= m; ++i) p.aliases["beta" + std::to_string(i)] = {arrow(i, i - 1)};
    }
    if (same_labeled(t, line_tree(m))) {
        p.aliases["gp1"] = {arrow(1, 3)};
        p.aliases["gp2"] = {arrow(2, 3)};
        p.aliases["g1"] = {arrow(3, 1)};
        p.aliases["g2"] = {arrow(3, 2)};
        for (int k = 3; k < m; ++k) {
            p.aliases["gp" + std::to_string(k)] = {arrow(k, k + 1)};
            p.aliases["g" + std::to_string(k)] = {arrow(k + 1, k)};
        }
    }
}

}  // namespace detail

// Triple trees. Every vertex of degree >= 2 carries the cycle of its
// rotation, except a root holding only its two central edges, which carries
// just the central arrow. The central triangle carries the cycle of the three
// central arrows; at a root with regular edges the central arrow is shared
// with that root's cycle. Relations:
//   two arrows in a row not consecutive on a common cycle: zero;
//   three arrows in a row whose pairs lie on cycles but not the triple: zero;
//   all cycles through a vertex agree;
//   at a shared arrow the two complementary paths agree;
//   a cycle followed by any arrow: zero.
template <class F>
QuiverPresentation<F> triple_presentation(const ModifiedBrauerTree& t) {
    auto diag = validate_tree(t);
    if (!diag.empty()) throw std::invalid_argument("build_presentation: " + diag.front());
    QuiverPresentation<F> P;
    P.n = t.m;
    std::map<std::pair<int, int>, int> arrow_of;
    auto arrow = [&](int a, int b) {
        auto it = arrow_of.find({a, b});
        if (it != arrow_of.end()) return it->second;
        int id = P.add_arrow("a" + std::to_string(a) + "_" + std::to_string(b), a, b);
        arrow_of[{a, b}] = id;
        return id;
    };
    std::vector<ArrowPath> cycles;
    std::vector<std::pair<int, int>> shared;  // (root cycle, central arrow)
    for (int w = 0; w < t.num_vertices(); ++w) {
        if (t.degree(w) < 2) continue;
        if (t.is_root(w) && t.degree(w) == 2) continue;
        ArrowPath c;
        for (int e : t.rot[w]) c.push_back(arrow(t.edges[e].labels[0], t.edges[t.next_at(w, e)].labels[0]));
        cycles.push_back(c);
    }
    const int a = t.central[0], b = t.central[1], c = t.central[2];
    ArrowPath central{arrow(a, b), arrow(b, c), arrow(c, a)};
    cycles.push_back(central);
    const int nc = static_cast<int>(cycles.size());
    for (int k = 0; k + 1 < nc; ++k)
        for (int x : cycles[k])
            for (int y : central)
                if (x == y) shared.push_back({k, x});

    auto rotate_from = [&](const ArrowPath& cyc, int pos) {
        ArrowPath r;
        for (std::size_t i = 0; i < cyc.size(); ++i) r.push_back(cyc[(pos + i) % cyc.size()]);
        return r;
    };
    auto on_cycle = [&](const ArrowPath& p) {
        for (const auto& cyc : cycles)
            for (std::size_t s = 0; s < cyc.size(); ++s) {
                bool ok = true;
                for (std::size_t i = 0; i < p.size() && ok; ++i) ok = cyc[(s + i) % cyc.size()] == p[i];
                if (ok) return true;
            }
        return false;
    };
    auto mono = [&](ArrowPath p) { P.relations.push_back({{{F(1), std::move(p)}}}); };
    const int na = static_cast<int>(P.arrows.size());
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < na; ++y) {
            if (P.arrows[x].dst != P.arrows[y].src) continue;
            if (!on_cycle({x, y})) {
                mono({x, y});
                continue;
            }
            for (int z = 0; z < na; ++z)
                if (P.arrows[y].dst == P.arrows[z].src && on_cycle({y, z}) && !on_cycle({x, y, z})) mono({x, y, z});
        }
    // cycles through each vertex
    for (int v = 1; v <= t.m; ++v) {
        std::vector<ArrowPath> at;
        for (const auto& cyc : cycles)
            for (std::size_t s = 0; s < cyc.size(); ++s)
                if (P.arrows[cyc[s]].src == v) at.push_back(rotate_from(cyc, static_cast<int>(s)));
        for (std::size_t k = 1; k < at.size(); ++k) P.relations.push_back({{{F(1), at[0]}, {F(-1), at[k]}}});
        for (const auto& cyc : at)
            for (int x = 0; x < na; ++x)
                if (P.arrows[x].src == v) {
                    ArrowPath p = cyc;
                    p.push_back(x);
                    mono(p);
                }
    }
    // complementary paths at a shared arrow
    for (auto [k, x] : shared) {
        auto comp = [&](const ArrowPath& cyc) {
            std::size_t pos = std::find(cyc.begin(), cyc.end(), x) - cyc.begin();
            ArrowPath r = rotate_from(cyc, static_cast<int>(pos + 1));
            r.pop_back();
            return r;
        };
        P.relations.push_back({{{F(1), comp(cycles[k])}, {F(-1), comp(central)}}});
    }
    int longest = 0;
    for (const auto& cyc : cycles) longest = std::max(longest, static_cast<int>(cyc.size()));
    P.longest_cycle = longest;
    return P;
}

template <class F>
PathAlgebra<F> lambda_algebra(int m) {
    return compute_basis(build_presentation<F>(gamma_tree(m)));
}

template <class F>
PathAlgebra<F> r_algebra(int m) {
    return compute_basis(build_presentation<F>(line_tree(m)));
}

// ---------------------------------------------------------------------------
// Presentation extraction from an algebra table: arrows from rad/rad^2,
// relations from the kernel of the evaluation of paths.

template <class F>
struct ExtractedPresentation {
    QuiverPresentation<F> pres;
    std::vector<std::vector<int>> arrow_count;  // [i][j] number of arrows i -> j
};

template <class F>
ExtractedPresentation<F> extract_presentation(const AlgebraTable<F>& E) {
    const int n = E.n;
    ExtractedPresentation<F> out;
    out.pres.n = n;
    out.arrow_count.assign(n + 1, std::vector<int>(n + 1, 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && E.dim[i][j] > 0 && E.dim[j][i] > 0 && E.dim[i][i] > 0) {
                // basicness is checked by the caller through pairwise non-isomorphism
            }
    // radical, pair by pair
    std::vector<std::vector<std::vector<Vec<F>>>> rad(n + 1, std::vector<std::vector<Vec<F>>>(n + 1));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            int d = E.dim[i][j];
            if (i != j) {
                for (int p = 0; p < d; ++p) {
                    Vec<F> v(d, F(0));
                    v[p] = F(1);
                    rad[i][j].push_back(v);
                }
                continue;
            }
            // trace of left multiplication is a multiple of the augmentation
            Vec<F> tr(d, F(0));
            for (int p = 0; p < d; ++p) {
                F s(0);
                for (int q = 0; q < d; ++q) s += E.basis_product(i, i, i, q, p)[q];
                tr[p] = s;
            }
            rad[i][j] = nullspace(std::vector<Vec<F>>{tr}, d);
        }
    // rad^2 and arrows
    std::vector<std::vector<std::vector<Vec<F>>>> arrows(n + 1, std::vector<std::vector<Vec<F>>>(n + 1));
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) {
            int d = E.dim[i][k];
            if (!d) continue;
            Echelon<F> sq(d);
            for (int j = 1; j <= n; ++j)
                for (const auto& f : rad[i][j])
                    for (const auto& g : rad[j][k]) sq.add(E.compose(i, j, k, f, g));
            for (const auto& r : rad[i][k])
                if (sq.add(r)) arrows[i][k].push_back(r);
        }
    std::vector<Vec<F>> arrow_value;
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k)
            for (std::size_t a = 0; a < arrows[i][k].size(); ++a) {
                out.pres.add_arrow("x" + std::to_string(i) + "_" + std::to_string(k) + (a ? "_" + std::to_string(a) : ""), i, k);
                arrow_value.push_back(arrows[i][k][a]);
                ++out.arrow_count[i][k];
            }
    // evaluate paths by increasing length until everything vanishes
    struct Eval {
        ArrowPath p;
        Vec<F> v;
    };
    std::vector<Eval> layer;
    for (int a = 0; a < static_cast<int>(out.pres.arrows.size()); ++a) layer.push_back({{a}, arrow_value[a]});
    std::map<std::pair<int, int>, std::vector<Eval>> all;
    int len = 0;
    while (!layer.empty()) {
        ++len;
        if (len > 4 * n + 8) throw std::runtime_error("extract_presentation: radical is not nilpotent");
        std::vector<Eval> next;
        for (auto& ev : layer) {
            int s = out.pres.arrows[ev.p.front()].src, t = out.pres.arrows[ev.p.back()].dst;
            all[{s, t}].push_back(ev);
            if (vec_is_zero(ev.v)) continue;  // extensions of a zero path are zero
            for (int a = 0; a < static_cast<int>(out.pres.arrows.size()); ++a) {
                if (out.pres.arrows[a].src != t) continue;
                Eval e2{ev.p, E.compose(s, t, out.pres.arrows[a].dst, ev.v, arrow_value[a])};
                e2.p.push_back(a);
                next.push_back(std::move(e2));
            }
        }
        layer = std::move(next);
    }
    out.pres.longest_cycle = len;
    // relations: kernel of evaluation per pair, shortest combinations first
    for (auto& [st, evs] : all) {
        std::sort(evs.begin(), evs.end(), [](const Eval& a, const Eval& b) { return detail::path_less(a.p, b.p); });
        int d = E.dim[st.first][st.second];
        // zero paths whose proper prefixes are nonzero become monomials
        for (const auto& ev : evs)
            if (vec_is_zero(ev.v)) {
                ArrowPath pre(ev.p.begin(), ev.p.end() - 1), suf(ev.p.begin() + 1, ev.p.end());
                bool pre_zero = false, suf_zero = false;
                if (!pre.empty())
                    for (const auto& e2 : all[{out.pres.arrows[pre.front()].src, out.pres.arrows[pre.back()].dst}])
                        if (e2.p == pre && vec_is_zero(e2.v)) pre_zero = true;
                if (!suf.empty())
                    for (const auto& e2 : all[{out.pres.arrows[suf.front()].src, out.pres.arrows[suf.back()].dst}])
                        if (e2.p == suf && vec_is_zero(e2.v)) suf_zero = true;
                if (!pre_zero && !suf_zero) out.pres.relations.push_back({{{F(1), ev.p}}});
            }
        // linear dependencies among nonzero paths
        Echelon<F> ech(d, true);
        std::vector<const Eval*> gens;
        for (const auto& ev : evs) {
            if (vec_is_zero(ev.v)) continue;
            auto c = ech.coordinates(ev.v);
            if (c) {
                Relation<F> r;
                r.terms.push_back({F(1), ev.p});
                for (std::size_t g = 0; g < gens.size(); ++g)
                    if (!is_zero((*c)[g])) r.terms.push_back({-(*c)[g], gens[g]->p});
                out.pres.relations.push_back(std::move(r));
            } else {
                ech.add(ev.v);
                gens.push_back(&ev);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Automorphisms fixing or permuting vertices, sending arrows to scalar
// multiples of arrows.

template <class F>
struct AlgebraAutomorphism {
    std::vector<int> vertex;                     // vertex[i] = image vertex (1-based)
    std::vector<std::pair<F, int>> arrow_image;  // per arrow: scalar and target arrow

    static AlgebraAutomorphism identity(const PathAlgebra<F>& A) {
        AlgebraAutomorphism g;
        g.vertex.resize(A.n() + 1);
        for (int i = 0; i <= A.n(); ++i) g.vertex[i] = i;
        for (int a = 0; a < static_cast<int>(A.pres.arrows.size()); ++a) g.arrow_image.push_back({F(1), a});
        return g;
    }

    // image of a coordinate vector in Hom(i,j)
    Vec<F> apply(const PathAlgebra<F>& A, int i, int j, const Vec<F>& x) const {
        int ii = vertex[i], jj = vertex[j];
        Vec<F> out(A.dim(ii, jj), F(0));
        for (int p = 0; p < A.dim(i, j); ++p) {
            if (is_zero(x[p])) continue;
            const auto& b = A.hom[i][j][p];
            if (b.arrows.empty()) {
                out[A.unit_pos(ii)] += x[p];
                continue;
            }
            F c(1);
            ArrowPath q;
            for (int a : b.arrows) {
                c *= arrow_image[a].first;
                q.push_back(arrow_image[a].second);
            }
            axpy(out, x[p] * c, A.path_element(q));
        }
        return out;
    }

    // relations map into the ideal: every relation's image vanishes
    bool valid(const PathAlgebra<F>& A) const {
        for (const auto& r : A.pres.relations) {
            int s = A.pres.arrows[r.terms[0].second.front()].src, t = A.pres.arrows[r.terms[0].second.back()].dst;
            Vec<F> sum(A.dim(vertex[s], vertex[t]), F(0));
            for (const auto& [c, p] : r.terms) {
                F k = c;
                ArrowPath q;
                for (int a : p) {
                    k *= arrow_image[a].first;
                    q.push_back(arrow_image[a].second);
                }
                axpy(sum, k, A.path_element(q));
            }
            if (!vec_is_zero(sum)) return false;
        }
        return true;
    }
};

// f_a on the star algebra: alpha1, alpha2 scaled by a.
template <class F>
AlgebraAutomorphism<F> scalar_twist_lambda(const PathAlgebra<F>& A, const F& a) {
    auto g = AlgebraAutomorphism<F>::identity(A);
    for (const char* nm : {"alpha1", "alpha2"}) g.arrow_image[A.pres.aliases.at(nm)[0]].first = a;
    return g;
}

// The swap of e1 and e2 (on the star and on the line).
template <class F>
AlgebraAutomorphism<F> swap12(const PathAlgebra<F>& A) {
    auto g = AlgebraAutomorphism<F>::identity(A);
    std::swap(g.vertex[1], g.vertex[2]);
    for (int a = 0; a < static_cast<int>(A.pres.arrows.size()); ++a) {
        const auto& ar = A.pres.arrows[a];
        auto sw = [](int v) { return v == 1 ? 2 : v == 2 ? 1 : v; };
        int s = sw(ar.src), t = sw(ar.dst);
        for (int b = 0; b < static_cast<int>(A.pres.arrows.size()); ++b)
            if (A.pres.arrows[b].src == s && A.pres.arrows[b].dst == t) g.arrow_image[a] = {F(1), b};
    }
    return g;
}

// g_a on the line algebra. Every 2-cycle has to pick up the same factor, so
// all of gp1 .. gp(m-1) are scaled by a; scaling gp1, gp2, gp3 alone breaks
// gp4 g4 = g3 gp3 once m >= 5.
template <class F>
AlgebraAutomorphism<F> scalar_twist_line(const PathAlgebra<F>& A, const F& a) {
    auto g = AlgebraAutomorphism<F>::identity(A);
    for (int k = 1; k < A.n(); ++k) g.arrow_image[A.pres.aliases.at("gp" + std::to_string(k))[0]].first = a;
    return g;
}

}  // namespace dpic
