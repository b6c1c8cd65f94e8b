#pragma once
#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace dpic {

enum class TreeKind { Plain, DoubleEdge, TripleTree };

inline std::string kind_name(TreeKind k) {
    switch (k) {
        case TreeKind::Plain: return "plain";
        case TreeKind::DoubleEdge: return "double_edge";
        case TreeKind::TripleTree: return "triple_tree";
    }
    return "?";
}

// Bijection of {1..m}; p(i) = image of i.
struct LabelPermutation {
    std::vector<int> img;  // img[0] unused

    LabelPermutation() = default;
    explicit LabelPermutation(int m) : img(m + 1) {
        for (int i = 0; i <= m; ++i) img[i] = i;
    }
    static LabelPermutation identity(int m) { return LabelPermutation(m); }
    static LabelPermutation transposition(int m, int a, int b) {
        LabelPermutation p(m);
        std::swap(p.img[a], p.img[b]);
        return p;
    }

    int size() const { return static_cast<int>(img.size()) - 1; }
    int operator()(int i) const { return img.at(i); }

    LabelPermutation inverse() const {
        LabelPermutation q(size());
        for (int i = 1; i <= size(); ++i) q.img[img[i]] = i;
        return q;
    }
    // (p * q)(i) = p(q(i))
    friend LabelPermutation operator*(const LabelPermutation& p, const LabelPermutation& q) {
        LabelPermutation r(p.size());
        for (int i = 1; i <= p.size(); ++i) r.img[i] = p(q(i));
        return r;
    }
    friend bool operator==(const LabelPermutation& a, const LabelPermutation& b) { return a.img == b.img; }
    bool is_identity() const { return *this == identity(size()); }

    bool valid() const {
        std::vector<char> seen(img.size(), 0);
        for (int i = 1; i <= size(); ++i) {
            if (img[i] < 1 || img[i] > size() || seen[img[i]]) return false;
            seen[img[i]] = 1;
        }
        return true;
    }
};

struct MutationStep {
    int label = 0;
    int dir = +1;  // +1 left mutation, -1 right mutation
    friend bool operator==(const MutationStep& a, const MutationStep& b) {
        return a.label == b.label && a.dir == b.dir;
    }
};

// Steps are stored in application order: steps[0] is applied first.
struct MutationWord {
    std::vector<MutationStep> steps;
    int shift = 0;

    void push(int label, int dir, int times = 1) {
        for (int t = 0; t < times; ++t) steps.push_back({label, dir});
    }
    MutationWord inverse() const {
        MutationWord w;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) w.steps.push_back({it->label, -it->dir});
        w.shift = -shift;
        return w;
    }
    MutationWord relabeled(const LabelPermutation& p) const {
        MutationWord w = *this;
        for (auto& s : w.steps) s.label = p(s.label);
        return w;
    }
    bool empty() const { return steps.empty() && shift == 0; }
    friend bool operator==(const MutationWord& a, const MutationWord& b) {
        return a.steps == b.steps && a.shift == b.shift;
    }

    std::string str() const {
        std::string s;
        for (const auto& st : steps) {
            if (!s.empty()) s += ' ';
            s += std::to_string(st.label) + (st.dir > 0 ? "+" : "-");
        }
        if (shift != 0) {
            if (!s.empty()) s += ' ';
            s += "[" + std::to_string(shift) + "]";
        }
        return s;
    }

    // Tokens "4+", "3-", optional "[n]" shift annotations.
    static MutationWord parse(const std::string& text) {
        MutationWord w;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok.front() == '[') {
                if (tok.back() != ']') throw std::invalid_argument("bad shift token: " + tok);
                w.shift += std::stoi(tok.substr(1, tok.size() - 2));
                continue;
            }
            char d = tok.back();
            if (d != '+' && d != '-') throw std::invalid_argument("bad mutation token: " + tok);
            std::size_t used = 0;
            int label = std::stoi(tok.substr(0, tok.size() - 1), &used);
            if (used != tok.size() - 1 || label < 1) throw std::invalid_argument("bad mutation token: " + tok);
            w.steps.push_back({label, d == '+' ? +1 : -1});
        }
        return w;
    }
};

struct TreeEdge {
    int u = -1, v = -1;       // endpoints; for the double edge u is the root, v the leaf
    std::vector<int> labels;  // one label, or two (sorted) for the double edge
};

// A modified Brauer tree. rot[v] lists the edges at v so that the edge
// following x at v is the entry after x (cyclically). For a TripleTree the
// central labels (a, b, c) satisfy: at the common root of (a,b) a is followed
// by b, at (b,c) b by c and at (c,a) c by a.
struct ModifiedBrauerTree {
    TreeKind kind = TreeKind::Plain;
    int m = 0;
    std::vector<TreeEdge> edges;
    std::vector<std::vector<int>> rot;
    std::array<int, 3> central{0, 0, 0};

    int num_vertices() const { return static_cast<int>(rot.size()); }

    int edge_of(int label) const {
        for (int e = 0; e < static_cast<int>(edges.size()); ++e)
            for (int l : edges[e].labels)
                if (l == label) return e;
        throw std::out_of_range("unknown edge label " + std::to_string(label));
    }
    bool is_double(int e) const { return edges[e].labels.size() == 2; }
    int double_edge() const {
        for (int e = 0; e < static_cast<int>(edges.size()); ++e)
            if (is_double(e)) return e;
        return -1;
    }
    int other_end(int e, int w) const { return edges[e].u == w ? edges[e].v : edges[e].u; }
    int degree(int w) const { return static_cast<int>(rot[w].size()); }

    int pos_in(int w, int e) const {
        const auto& r = rot[w];
        for (int i = 0; i < static_cast<int>(r.size()); ++i)
            if (r[i] == e) return i;
        return -1;
    }
    int next_at(int w, int e) const {
        const auto& r = rot[w];
        int i = pos_in(w, e);
        return r[(i + 1) % r.size()];
    }
    int prev_at(int w, int e) const {
        const auto& r = rot[w];
        int i = pos_in(w, e);
        return r[(i + r.size() - 1) % r.size()];
    }

    bool is_central(int label) const {
        return kind == TreeKind::TripleTree &&
               (label == central[0] || label == central[1] || label == central[2]);
    }
    // Common vertex of two central edges.
    int common_vertex(int e1, int e2) const {
        const auto& a = edges[e1];
        const auto& b = edges[e2];
        if (a.u == b.u || a.u == b.v) return a.u;
        if (a.v == b.u || a.v == b.v) return a.v;
        return -1;
    }
    // For a central label at position i of (a,b,c): its central successor.
    int central_next(int label) const {
        for (int i = 0; i < 3; ++i)
            if (central[i] == label) return central[(i + 1) % 3];
        throw std::logic_error("not central");
    }
    int central_prev(int label) const {
        for (int i = 0; i < 3; ++i)
            if (central[i] == label) return central[(i + 2) % 3];
        throw std::logic_error("not central");
    }
    // Roots ordered (X, Y, Z) = common vertices of (b,c), (c,a), (a,b).
    std::array<int, 3> roots() const {
        int ea = edge_of(central[0]), eb = edge_of(central[1]), ec = edge_of(central[2]);
        return {common_vertex(eb, ec), common_vertex(ec, ea), common_vertex(ea, eb)};
    }
    bool is_root(int w) const {
        if (kind != TreeKind::TripleTree) return false;
        auto r = roots();
        return w == r[0] || w == r[1] || w == r[2];
    }
};

inline bool operator==(const TreeEdge& a, const TreeEdge& b) {
    return a.u == b.u && a.v == b.v && a.labels == b.labels;
}

// ---------------------------------------------------------------------------
// Constructors for the named trees.

// The star with m-2 regular edges and a pendant double edge. Around the
// center: 3 is followed by the double edge, the double edge by m, and i by i-1.
inline ModifiedBrauerTree gamma_tree(int m) {
    if (m < 4) throw std::invalid_argument("gamma_tree needs m >= 4");
    ModifiedBrauerTree t;
    t.kind = TreeKind::DoubleEdge;
    t.m = m;
    t.rot.assign(m, {});
    t.edges.push_back({0, 1, {1, 2}});
    t.rot[1] = {0};
    for (int l = 3; l <= m; ++l) {
        int leaf = l - 1;
        t.edges.push_back({0, leaf, {l}});
        t.rot[leaf] = {static_cast<int>(t.edges.size()) - 1};
    }
    auto e = [&](int l) { return t.edge_of(l); };
    t.rot[0].push_back(e(3));
    t.rot[0].push_back(e(1));
    for (int l = m; l >= 4; --l) t.rot[0].push_back(e(l));
    return t;
}

// The line with the double edge at one end; edges 3..m along the line.
inline ModifiedBrauerTree line_tree(int m) {
    if (m < 4) throw std::invalid_argument("line_tree needs m >= 4");
    ModifiedBrauerTree t;
    t.kind = TreeKind::DoubleEdge;
    t.m = m;
    // vertex 0 = root, 1 = outer end of the double edge, 2.. along the line
    t.rot.assign(m, {});
    t.edges.push_back({0, 1, {1, 2}});
    t.rot[1] = {0};
    for (int l = 3; l <= m; ++l) t.edges.push_back({l - 1 == 2 ? 0 : l - 2, l - 1, {l}});
    t.rot[0] = {t.edge_of(3), 0};
    for (int l = 3; l <= m; ++l) {
        int far = l - 1;
        if (l < m) t.rot[far] = {t.edge_of(l), t.edge_of(l + 1)};
        else t.rot[far] = {t.edge_of(l)};
    }
    return t;
}

// ---------------------------------------------------------------------------
// Validation.

inline std::vector<std::string> validate_tree(const ModifiedBrauerTree& t) {
    std::vector<std::string> out;
    const int nv = t.num_vertices();
    const int ne = static_cast<int>(t.edges.size());
    std::vector<int> count(t.m + 1, 0);
    bool label_range = true;
    int doubles = 0;
    for (const auto& e : t.edges) {
        if (e.labels.empty() || e.labels.size() > 2) out.push_back("edge with invalid label count");
        if (e.labels.size() == 2) ++doubles;
        for (int l : e.labels) {
            if (l < 1 || l > t.m) label_range = false;
            else ++count[l];
        }
        if (e.u < 0 || e.u >= nv || e.v < 0 || e.v >= nv || e.u == e.v) out.push_back("edge with invalid endpoints");
    }
    bool bij = label_range;
    for (int l = 1; l <= t.m; ++l)
        if (count[l] != 1) bij = false;
    if (!bij) out.push_back("labels not bijective");
    if (!out.empty()) return out;

    // rotations list exactly the incident edges, once each
    std::vector<std::vector<int>> inc(nv);
    for (int e = 0; e < ne; ++e) {
        inc[t.edges[e].u].push_back(e);
        inc[t.edges[e].v].push_back(e);
    }
    for (int w = 0; w < nv; ++w) {
        auto a = inc[w], b = t.rot[w];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) out.push_back("rotation at vertex " + std::to_string(w) + " does not match incidences");
        if (t.rot[w].empty()) out.push_back("isolated vertex " + std::to_string(w));
    }
    if (!out.empty()) return out;

    // connectivity
    std::vector<char> seen(nv, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        for (int e : t.rot[w]) {
            int o = t.other_end(e, w);
            if (!seen[o]) {
                seen[o] = 1;
                stack.push_back(o);
            }
        }
    }
    if (std::count(seen.begin(), seen.end(), 0)) out.push_back("not connected");

    switch (t.kind) {
        case TreeKind::Plain:
            if (doubles) out.push_back("plain tree carries a double edge");
            if (ne != nv - 1) out.push_back("not a tree");
            break;
        case TreeKind::DoubleEdge: {
            if (doubles != 1) out.push_back("double edge count is not one");
            if (ne != nv - 1) out.push_back("not a tree");
            int d = t.double_edge();
            if (d >= 0) {
                if (t.degree(t.edges[d].v) != 1) out.push_back("double edge is not pendant at its outer end");
                if (t.degree(t.edges[d].u) < 2) out.push_back("double edge root has no regular edge");
            }
            break;
        }
        case TreeKind::TripleTree: {
            if (doubles) out.push_back("triple tree carries a double edge");
            if (ne != nv) out.push_back("edge count does not match one central cycle");
            std::set<int> cl(t.central.begin(), t.central.end());
            if (cl.size() != 3) {
                out.push_back("central labels not distinct");
                break;
            }
            for (int l : t.central)
                if (l < 1 || l > t.m) {
                    out.push_back("central label out of range");
                    return out;
                }
            auto r = t.roots();
            if (r[0] < 0 || r[1] < 0 || r[2] < 0 || r[0] == r[1] || r[1] == r[2] || r[0] == r[2]) {
                out.push_back("central edges do not form a triangle");
                break;
            }
            // at root X (b,c): b followed by c; Y (c,a); Z (a,b)
            const int a = t.edge_of(t.central[0]), b = t.edge_of(t.central[1]), c = t.edge_of(t.central[2]);
            const std::array<std::pair<int, int>, 3> pairs{{{b, c}, {c, a}, {a, b}}};
            for (int i = 0; i < 3; ++i) {
                int w = r[i];
                if (t.next_at(w, pairs[i].first) != pairs[i].second)
                    out.push_back("central half-edges not adjacent in pattern at root " + std::to_string(w));
            }
            // removing the triangle leaves a forest: check acyclicity
            // (ne == nv with one triangle and connected implies this)
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Followers.

// Labels of the edges immediately following j; the double edge contributes
// both of its labels.
inline std::vector<int> following_edges(const ModifiedBrauerTree& t, int j) {
    const int e = t.edge_of(j);
    std::vector<int> out;
    auto add_edge = [&](int f) {
        for (int l : t.edges[f].labels) out.push_back(l);
    };
    if (t.kind == TreeKind::TripleTree && t.is_central(j)) {
        const int s = t.central_next(j);
        out.push_back(s);
        // the root where j comes second: next entry there is a tree edge or wraps
        const int es = t.edge_of(s);
        const int r1 = t.common_vertex(e, es);
        const int r2 = t.other_end(e, r1);
        if (t.degree(r2) > 2) add_edge(t.next_at(r2, e));
        return out;
    }
    if (t.is_double(e)) {
        add_edge(t.next_at(t.edges[e].u, e));
        return out;
    }
    for (int w : {t.edges[e].u, t.edges[e].v}) {
        if (t.degree(w) < 2) continue;
        add_edge(t.next_at(w, e));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Predecessors: the dual notion (edges that j immediately follows).
inline std::vector<int> preceding_edges(const ModifiedBrauerTree& t, int j);

// ---------------------------------------------------------------------------
// Mutation.

namespace detail {

inline void remove_from(std::vector<int>& r, int e) { r.erase(std::find(r.begin(), r.end(), e)); }

inline void insert_after(std::vector<int>& r, int k, int e) {
    auto it = std::find(r.begin(), r.end(), k);
    r.insert(it + 1, e);
}

inline void set_end(TreeEdge& ed, int from, int to) {
    if (ed.u == from) ed.u = to;
    else ed.v = to;
}

// Renumber vertices/edges to drop unused ones.
inline void compact(ModifiedBrauerTree& t) {
    std::vector<int> vmap(t.rot.size(), -1);
    std::vector<std::vector<int>> rot;
    for (int w = 0; w < static_cast<int>(t.rot.size()); ++w)
        if (!t.rot[w].empty()) {
            vmap[w] = static_cast<int>(rot.size());
            rot.push_back(t.rot[w]);
        }
    std::vector<int> emap(t.edges.size(), -1);
    std::vector<TreeEdge> edges;
    for (int e = 0; e < static_cast<int>(t.edges.size()); ++e)
        if (!t.edges[e].labels.empty()) {
            emap[e] = static_cast<int>(edges.size());
            TreeEdge ed = t.edges[e];
            ed.u = vmap[ed.u];
            ed.v = vmap[ed.v];
            edges.push_back(ed);
        }
    for (auto& r : rot)
        for (auto& e : r) e = emap[e];
    t.rot = std::move(rot);
    t.edges = std::move(edges);
}

inline ModifiedBrauerTree mirror(const ModifiedBrauerTree& t) {
    ModifiedBrauerTree s = t;
    for (auto& r : s.rot) std::reverse(r.begin(), r.end());
    if (s.kind == TreeKind::TripleTree) s.central = {t.central[0], t.central[2], t.central[1]};
    return s;
}

// Slide the end of edge e at vertex w along edge k (which follows e at w).
inline void slide(ModifiedBrauerTree& t, int e, int w, int k) {
    int far = t.other_end(k, w);
    remove_from(t.rot[w], e);
    insert_after(t.rot[far], k, e);
    set_end(t.edges[e], w, far);
}

inline ModifiedBrauerTree mutate_left(const ModifiedBrauerTree& t0, int j) {
    ModifiedBrauerTree t = t0;
    const int e = t.edge_of(j);

    if (t.kind == TreeKind::DoubleEdge && t.is_double(e)) {
        // the double edge splits; j slides along the edge following it
        const int X = t.edges[e].u, Xp = t.edges[e].v;
        const int k = t.next_at(X, e);
        const int Y = t.other_end(k, X);
        const int o = t.edges[e].labels[0] == j ? t.edges[e].labels[1] : t.edges[e].labels[0];
        t.edges[e].labels = {o};
        t.edges.push_back({Xp, Y, {j}});
        const int ej = static_cast<int>(t.edges.size()) - 1;
        insert_after(t.rot[Y], k, ej);
        t.rot[Xp] = {ej, e};
        t.kind = TreeKind::TripleTree;
        t.central = {j, o, t.edges[k].labels[0]};
        return t;
    }

    if (t.kind == TreeKind::TripleTree && t.is_central(j)) {
        const int s = t.central_next(j), p = t.central_prev(j);
        const int es = t.edge_of(s), ep = t.edge_of(p);
        const int R1 = t.common_vertex(e, es);
        const int R2 = t.common_vertex(e, ep);
        const int R3 = t.common_vertex(es, ep);
        if (t.degree(R2) > 2) {
            const int x = t.next_at(R2, e);
            const int W = t.other_end(x, R2);
            remove_from(t.rot[R1], e);
            insert_after(t.rot[R3], es, e);
            remove_from(t.rot[R2], e);
            insert_after(t.rot[W], x, e);
            t.edges[e].u = R3;
            t.edges[e].v = W;
            t.central = {j, p, t.edges[x].labels[0]};
            return t;
        }
        // empty tree behind j: j and p become a pendant double edge at R3
        remove_from(t.rot[R1], e);
        auto& r3 = t.rot[R3];
        auto it = std::find(r3.begin(), r3.end(), ep);
        (void)it;
        t.edges[ep].labels = {std::min(j, p), std::max(j, p)};
        t.edges[ep].u = R3;
        t.edges[ep].v = R2;
        t.rot[R2] = {ep};
        t.edges[e].labels.clear();
        t.kind = TreeKind::DoubleEdge;
        t.central = {0, 0, 0};
        compact(t);
        return t;
    }

    // regular edge: each end slides along its follower
    int ends[2] = {t.edges[e].u, t.edges[e].v};
    int fol[2] = {-1, -1};
    for (int i = 0; i < 2; ++i)
        if (t.degree(ends[i]) > 1) fol[i] = t.next_at(ends[i], e);
    for (int i = 0; i < 2; ++i) {
        if (fol[i] < 0) continue;
        if (t.is_double(fol[i])) {
            // slide around the double edge: move just past it at the same vertex
            remove_from(t.rot[ends[i]], e);
            insert_after(t.rot[ends[i]], fol[i], e);
            continue;
        }
        slide(t, e, ends[i], fol[i]);
    }
    return t;
}

}  // namespace detail

inline std::vector<int> preceding_edges(const ModifiedBrauerTree& t, int j) {
    return following_edges(detail::mirror(t), j);
}

inline ModifiedBrauerTree mutate_tree(const ModifiedBrauerTree& t, int j, int dir) {
    auto diag = validate_tree(t);
    if (!diag.empty()) throw std::invalid_argument("mutate_tree: invalid tree: " + diag.front());
    if (j < 1 || j > t.m) throw std::out_of_range("mutate_tree: unknown label " + std::to_string(j));
    if (dir > 0) return detail::mutate_left(t, j);
    return detail::mirror(detail::mutate_left(detail::mirror(t), j));
}

inline ModifiedBrauerTree apply_word(ModifiedBrauerTree t, const MutationWord& w) {
    for (const auto& s : w.steps) t = mutate_tree(t, s.label, s.dir);
    return t;
}

// Edge labels renamed by p: label l becomes p(l).
inline ModifiedBrauerTree relabel(const ModifiedBrauerTree& t, const LabelPermutation& p) {
    ModifiedBrauerTree s = t;
    for (auto& e : s.edges) {
        for (auto& l : e.labels) l = p(l);
        std::sort(e.labels.begin(), e.labels.end());
    }
    for (auto& l : s.central) l = l ? p(l) : 0;
    return s;
}

// ---------------------------------------------------------------------------
// Canonical forms. Traversal: from an anchor slot at a vertex, visit the other
// edges in preceding order (prev of anchor, prev of that, ...), recursively.

namespace detail {

inline std::string encode_from(const ModifiedBrauerTree& t, int w, int anchor, bool labels) {
    std::string s = "(";
    const auto& r = t.rot[w];
    int n = static_cast<int>(r.size());
    int i = t.pos_in(w, anchor);
    for (int step = 1; step < n; ++step) {
        int e = r[(i - step + n * 4) % n];
        if (labels) s += std::to_string(t.edges[e].labels[0]);
        s += encode_from(t, t.other_end(e, w), e, labels);
    }
    return s + ")";
}

// Each root's trees listed from the edge preceding the first central edge.
inline std::string encode_root(const ModifiedBrauerTree& t, int w, int first_central, int second_central, bool labels) {
    std::string s = "(";
    const auto& r = t.rot[w];
    int n = static_cast<int>(r.size());
    int i = t.pos_in(w, first_central);
    for (int step = 1; step < n; ++step) {
        int e = r[(i - step + n * 4) % n];
        if (e == second_central) break;
        if (labels) s += std::to_string(t.edges[e].labels[0]);
        s += encode_from(t, t.other_end(e, w), e, labels);
    }
    return s + ")";
}

inline std::string encode(const ModifiedBrauerTree& t, bool labels) {
    switch (t.kind) {
        case TreeKind::DoubleEdge: {
            int d = t.double_edge();
            std::string s = "D";
            if (labels) s += std::to_string(t.edges[d].labels[0]) + "," + std::to_string(t.edges[d].labels[1]);
            return s + encode_from(t, t.edges[d].u, d, labels);
        }
        case TreeKind::TripleTree: {
            std::array<int, 3> ce{t.edge_of(t.central[0]), t.edge_of(t.central[1]), t.edge_of(t.central[2])};
            auto r = t.roots();
            // root X carries (b,c), Y (c,a), Z (a,b); list per root in cyclic order
            std::array<std::string, 3> parts;
            std::array<std::pair<int, int>, 3> pr{{{ce[1], ce[2]}, {ce[2], ce[0]}, {ce[0], ce[1]}}};
            for (int i = 0; i < 3; ++i) parts[i] = encode_root(t, r[i], pr[i].first, pr[i].second, labels);
            std::string best;
            for (int s = 0; s < 3; ++s) {
                std::string cand = "T";
                for (int q = 0; q < 3; ++q) {
                    if (labels) cand += std::to_string(t.central[(s + q) % 3]) + ":";
                    cand += parts[(s + q) % 3];
                }
                if (labels) return cand;  // labels pin the rotation choice below
                if (best.empty() || cand < best) best = cand;
            }
            return best;
        }
        case TreeKind::Plain: {
            std::string best;
            for (int w = 0; w < t.num_vertices(); ++w)
                for (int e : t.rot[w]) {
                    std::string cand = "P";
                    if (labels) cand += std::to_string(t.edges[e].labels[0]);
                    cand += encode_from(t, t.other_end(e, w), e, labels) + encode_from(t, w, e, labels);
                    if (best.empty() || cand < best) best = cand;
                }
            return best;
        }
    }
    return "";
}

}  // namespace detail

// Unlabeled shape key; equal keys iff the shapes are isomorphic as planar
// trees with the double edge / central triangle as anchor.
inline std::string shape_key(const ModifiedBrauerTree& t) { return detail::encode(t, false); }

// Labeled key: equal iff the trees agree as labeled rotation systems.
inline std::string labeled_key(const ModifiedBrauerTree& t) {
    if (t.kind == TreeKind::TripleTree) {
        // rotate (a,b,c) so that the smallest central label comes first
        ModifiedBrauerTree s = t;
        while (s.central[0] != *std::min_element(s.central.begin(), s.central.end()))
            s.central = {s.central[1], s.central[2], s.central[0]};
        return detail::encode(s, true);
    }
    return detail::encode(t, true);
}

inline bool same_labeled(const ModifiedBrauerTree& a, const ModifiedBrauerTree& b) {
    return a.kind == b.kind && a.m == b.m && labeled_key(a) == labeled_key(b);
}
inline bool same_shape(const ModifiedBrauerTree& a, const ModifiedBrauerTree& b) {
    return a.kind == b.kind && a.m == b.m && shape_key(a) == shape_key(b);
}

// ---------------------------------------------------------------------------
// Standard labeling: sigma with sigma(standard label) = current label.

struct TripleBlocks {
    // roots of the blocks G1, G2, G3 and their sizes
    std::array<int, 3> root{-1, -1, -1};
    std::array<int, 3> size{0, 0, 0};
};

namespace detail {

inline void dfs_labels(const ModifiedBrauerTree& t, int w, int anchor, int stop, std::vector<int>& order) {
    const auto& r = t.rot[w];
    int n = static_cast<int>(r.size());
    int i = t.pos_in(w, anchor);
    for (int step = 1; step < n; ++step) {
        int e = r[(i - step + n * 4) % n];
        if (e == stop) break;
        order.push_back(e);
        dfs_labels(t, t.other_end(e, w), e, -1, order);
    }
}

}  // namespace detail

// For a TripleTree in standard position the central labels are (a,b,c) =
// (2,1,m); the tree at the (c,a) root is G1, at (a,b) G2, at (b,c) G3.
// A TripleTree has three standard labelings, one per cyclic rotation of its
// central triangle; rotation s puts central[s] in the role of a.
inline LabelPermutation standard_labeling_rotated(const ModifiedBrauerTree& t, int s) {
    LabelPermutation sigma(t.m);
    if (t.kind == TreeKind::DoubleEdge) {
        std::vector<int> order;
        int d = t.double_edge();
        detail::dfs_labels(t, t.edges[d].u, d, -1, order);
        sigma.img[1] = t.edges[d].labels[0];
        sigma.img[2] = t.edges[d].labels[1];
        for (int i = 0; i < static_cast<int>(order.size()); ++i) sigma.img[3 + i] = t.edges[order[i]].labels[0];
        return sigma;
    }
    if (t.kind != TreeKind::TripleTree) throw std::invalid_argument("standard_labeling: plain trees have no standard labeling");
    if (s < 0 || s > 2) throw std::out_of_range("standard_labeling: rotation must be 0, 1 or 2");
    std::array<int, 3> ce{t.edge_of(t.central[0]), t.edge_of(t.central[1]), t.edge_of(t.central[2])};
    auto r = t.roots();
    int a = ce[s], b = ce[(s + 1) % 3], c = ce[(s + 2) % 3];
    int X = r[s % 3], Y = r[(1 + s) % 3], Z = r[(2 + s) % 3];
    std::vector<int> g1, g2, g3;
    detail::dfs_labels(t, Y, c, a, g1);
    detail::dfs_labels(t, Z, a, b, g2);
    detail::dfs_labels(t, X, b, c, g3);
    sigma.img[2] = t.edges[a].labels[0];
    sigma.img[1] = t.edges[b].labels[0];
    sigma.img[t.m] = t.edges[c].labels[0];
    int next = 3;
    for (auto* g : {&g1, &g2, &g3})
        for (int e : *g) sigma.img[next++] = t.edges[e].labels[0];
    return sigma;
}

inline int num_standard_labelings(const ModifiedBrauerTree& t) { return t.kind == TreeKind::TripleTree ? 3 : 1; }

// The default choice: for a TripleTree the rotation whose blocks give the
// smallest shape encoding, so that the labeling depends on the shape only.
inline LabelPermutation standard_labeling(const ModifiedBrauerTree& t) {
    if (t.kind != TreeKind::TripleTree) return standard_labeling_rotated(t, 0);
    std::array<int, 3> ce{t.edge_of(t.central[0]), t.edge_of(t.central[1]), t.edge_of(t.central[2])};
    auto r = t.roots();
    std::string best;
    int best_s = 0;
    for (int s = 0; s < 3; ++s) {
        int a = ce[s], b = ce[(s + 1) % 3], c = ce[(s + 2) % 3];
        int X = r[s % 3], Y = r[(1 + s) % 3], Z = r[(2 + s) % 3];
        std::string key = detail::encode_root(t, Y, c, a, false) + detail::encode_root(t, Z, a, b, false) +
                          detail::encode_root(t, X, b, c, false);
        if (best.empty() || key < best) {
            best = key;
            best_s = s;
        }
    }
    return standard_labeling_rotated(t, best_s);
}

inline ModifiedBrauerTree standardize(const ModifiedBrauerTree& t) {
    return relabel(t, standard_labeling(t).inverse());
}

// Block sizes m1, m2, m3 of a standardly labeled TripleTree.
inline std::array<int, 3> triple_block_sizes(const ModifiedBrauerTree& t0) {
    ModifiedBrauerTree t = t0;
    for (int k = 0; k < 3 && t.central[0] != 2; ++k) t.central = {t.central[1], t.central[2], t.central[0]};
    if (t.central[0] != 2 || t.central[1] != 1 || t.central[2] != t.m)
        throw std::invalid_argument("triple_block_sizes: central labels are not (2,1,m)");
    std::array<int, 3> ce{t.edge_of(t.central[0]), t.edge_of(t.central[1]), t.edge_of(t.central[2])};
    auto r = t.roots();
    std::vector<int> g1, g2, g3;
    detail::dfs_labels(t, r[1], ce[2], ce[0], g1);
    detail::dfs_labels(t, r[2], ce[0], ce[1], g2);
    detail::dfs_labels(t, r[0], ce[1], ce[2], g3);
    return {static_cast<int>(g1.size()), static_cast<int>(g2.size()), static_cast<int>(g3.size())};
}

inline bool is_gamma_shape(const ModifiedBrauerTree& t) {
    return t.kind == TreeKind::DoubleEdge && same_shape(t, gamma_tree(t.m));
}

// ---------------------------------------------------------------------------
// Enumeration of shapes reachable by mutation from the star.

inline std::vector<ModifiedBrauerTree> enumerate_shapes(int m) {
    std::vector<ModifiedBrauerTree> out;
    std::set<std::string> seen;
    std::vector<ModifiedBrauerTree> queue{gamma_tree(m)};
    seen.insert(shape_key(queue[0]));
    for (std::size_t q = 0; q < queue.size(); ++q) {
        auto t = queue[q];
        out.push_back(standardize(t));
        for (int j = 1; j <= m; ++j)
            for (int dir : {+1, -1}) {
                auto s = mutate_tree(t, j, dir);
                if (seen.insert(shape_key(s)).second) queue.push_back(s);
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization.

inline std::string edge_token(const ModifiedBrauerTree& t, int e) {
    const auto& l = t.edges[e].labels;
    if (l.size() == 2) return "D:" + std::to_string(l[0]) + "," + std::to_string(l[1]);
    return std::to_string(l[0]);
}

// Vertices are named by discovery order from the anchor so equal trees
// serialize identically.
inline std::string tree_to_text(const ModifiedBrauerTree& t) {
    // discovery order
    std::vector<int> order;
    std::vector<int> name(t.num_vertices(), -1);
    int start = 0;
    if (t.kind == TreeKind::DoubleEdge) start = t.edges[t.double_edge()].u;
    if (t.kind == TreeKind::TripleTree) start = t.roots()[0];
    std::vector<int> queue{start};
    name[start] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int w = queue[q];
        for (int e : t.rot[w]) {
            int o = t.other_end(e, w);
            if (name[o] < 0) {
                name[o] = static_cast<int>(queue.size());
                queue.push_back(o);
            }
        }
    }
    nlohmann::ordered_json j;
    j["kind"] = kind_name(t.kind);
    j["m"] = t.m;
    nlohmann::ordered_json rots = nlohmann::ordered_json::object();
    for (int w : queue) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (int e : t.rot[w]) {
            if (t.is_double(e)) list.push_back(edge_token(t, e));
            else list.push_back(t.edges[e].labels[0]);
        }
        rots["v" + std::to_string(name[w])] = list;
    }
    j["rotations"] = rots;
    if (t.kind == TreeKind::TripleTree) {
        auto r = t.roots();
        j["triple"] = {{"roots", {"v" + std::to_string(name[r[0]]), "v" + std::to_string(name[r[1]]),
                                  "v" + std::to_string(name[r[2]])}},
                       {"central", {t.central[0], t.central[1], t.central[2]}}};
    }
    return j.dump(2) + "\n";
}

inline ModifiedBrauerTree tree_from_text(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ModifiedBrauerTree t;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "plain") t.kind = TreeKind::Plain;
    else if (kind == "double_edge") t.kind = TreeKind::DoubleEdge;
    else if (kind == "triple_tree") t.kind = TreeKind::TripleTree;
    else throw std::invalid_argument("unknown tree kind: " + kind);
    t.m = j.at("m").get<int>();
    std::map<std::string, int> vid;
    std::vector<std::vector<std::string>> tokens;
    for (auto it = j.at("rotations").begin(); it != j.at("rotations").end(); ++it) {
        vid[it.key()] = static_cast<int>(tokens.size());
        std::vector<std::string> toks;
        for (const auto& x : it.value()) toks.push_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<int>()));
        tokens.push_back(toks);
    }
    std::map<std::string, int> edge_id;
    std::map<std::string, std::vector<int>> ends;
    t.rot.assign(tokens.size(), {});
    for (int w = 0; w < static_cast<int>(tokens.size()); ++w)
        for (const auto& tok : tokens[w]) {
            if (!edge_id.count(tok)) {
                TreeEdge e;
                if (tok.rfind("D:", 0) == 0) {
                    auto comma = tok.find(',');
                    if (comma == std::string::npos) throw std::invalid_argument("bad double edge token: " + tok);
                    e.labels = {std::stoi(tok.substr(2, comma - 2)), std::stoi(tok.substr(comma + 1))};
                    std::sort(e.labels.begin(), e.labels.end());
                } else {
                    e.labels = {std::stoi(tok)};
                }
                edge_id[tok] = static_cast<int>(t.edges.size());
                t.edges.push_back(e);
            }
            ends[tok].push_back(w);
            t.rot[w].push_back(edge_id[tok]);
        }
    for (auto& [tok, ws] : ends) {
        if (ws.size() != 2) throw std::invalid_argument("edge " + tok + " does not have two ends");
        auto& e = t.edges[edge_id[tok]];
        e.u = ws[0];
        e.v = ws[1];
        if (e.labels.size() == 2 && t.rot[e.u].size() == 1) std::swap(e.u, e.v);
    }
    if (t.kind == TreeKind::TripleTree) {
        auto c = j.at("triple").at("central");
        t.central = {c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<int>()};
    }
    return t;
}

inline std::string tree_to_dot(const ModifiedBrauerTree& t) {
    std::ostringstream o;
    o << "graph tree {\n  node [shape=point];\n";
    for (int w = 0; w < t.num_vertices(); ++w) o << "  v" << w << ";\n";
    for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
        const auto& ed = t.edges[e];
        if (ed.labels.size() == 2) {
            o << "  v" << ed.u << " -- v" << ed.v << " [label=\"" << ed.labels[0] << "\"];\n";
            o << "  v" << ed.u << " -- v" << ed.v << " [label=\"" << ed.labels[1] << "\"];\n";
        } else {
            bool c = t.is_central(ed.labels[0]);
            o << "  v" << ed.u << " -- v" << ed.v << " [label=\"" << ed.labels[0] << "\"" << (c ? ", penwidth=3" : "")
              << "];\n";
        }
    }
    if (t.kind == TreeKind::TripleTree) {
        auto r = t.roots();
        o << "  tri [shape=triangle, style=filled, label=\"\"];\n";
        for (int w : r) o << "  tri -- v" << w << " [style=dotted];\n";
    }
    o << "}\n";
    return o.str();
}

// Random valid tree: a random mutation walk from the star.
inline ModifiedBrauerTree random_tree(int m, std::mt19937_64& rng, int steps = 40) {
    auto t = gamma_tree(m);
    std::uniform_int_distribution<int> lab(1, m);
    for (int s = 0; s < steps; ++s) t = mutate_tree(t, lab(rng), (rng() & 1) ? +1 : -1);
    return t;
}

}  // namespace dpic
