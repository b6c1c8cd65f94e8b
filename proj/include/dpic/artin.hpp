#pragma once
#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpic/field.hpp"
#include "dpic/twists.hpp"

namespace dpic {

// W(D_m) as signed permutations with an even number of sign changes.
// img[i] = +-j means e_i -> +-e_j.
class SignedPermutation {
public:
    SignedPermutation() = default;
    explicit SignedPermutation(int m) : img_(m + 1) {
        for (int i = 0; i <= m; ++i) img_[i] = i;
    }
    explicit SignedPermutation(std::vector<int> img) : img_(std::move(img)) {
        const int m = size();
        std::vector<char> seen(m + 1, 0);
        int neg = 0;
        for (int i = 1; i <= m; ++i) {
            int a = std::abs(img_[i]);
            if (a < 1 || a > m || seen[a]) throw std::invalid_argument("SignedPermutation: not a permutation");
            seen[a] = 1;
            if (img_[i] < 0) ++neg;
        }
        if (neg % 2) throw std::invalid_argument("SignedPermutation: odd number of sign changes");
    }

    static SignedPermutation identity(int m) { return SignedPermutation(m); }

    // sigma_1: e1 -> -e2, e2 -> -e1; sigma_2: e1 <-> e2; sigma_i: e_{i-1} <-> e_i.
    static SignedPermutation generator(int m, int i) {
        if (i < 1 || i > m) throw std::out_of_range("SignedPermutation: generator index");
        SignedPermutation s(m);
        if (i == 1) {
            s.img_[1] = -2;
            s.img_[2] = -1;
        } else if (i == 2) {
            s.img_[1] = 2;
            s.img_[2] = 1;
        } else {
            s.img_[i - 1] = i;
            s.img_[i] = i - 1;
        }
        return s;
    }

    // -identity for m even; for m odd e1 keeps its sign.
    static SignedPermutation longest(int m) {
        SignedPermutation w(m);
        for (int i = 1; i <= m; ++i) w.img_[i] = -i;
        if (m % 2) w.img_[1] = 1;
        return w;
    }

    int size() const { return static_cast<int>(img_.size()) - 1; }
    int operator()(int i) const { return i > 0 ? img_.at(i) : -img_.at(-i); }

    // (p * q)(x) = p(q(x))
    friend SignedPermutation operator*(const SignedPermutation& p, const SignedPermutation& q) {
        SignedPermutation r(p.size());
        for (int i = 1; i <= p.size(); ++i) r.img_[i] = p(q(i));
        return r;
    }
    SignedPermutation inverse() const {
        SignedPermutation r(size());
        for (int i = 1; i <= size(); ++i) {
            int a = img_[i];
            r.img_[std::abs(a)] = a > 0 ? i : -i;
        }
        return r;
    }
    friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) { return a.img_ == b.img_; }
    friend bool operator<(const SignedPermutation& a, const SignedPermutation& b) { return a.img_ < b.img_; }
    bool is_identity() const { return *this == identity(size()); }

    // type D inversions of the window of w^{-1}; l(w) = l(w^{-1})
    int length() const {
        const auto w = inverse();
        int l = 0;
        for (int i = 1; i <= size(); ++i)
            for (int j = i + 1; j <= size(); ++j) {
                if (w(i) > w(j)) ++l;
                if (w(i) + w(j) < 0) ++l;
            }
        return l;
    }

    // s_i is a right descent when l(w s_i) < l(w), a left descent when l(s_i w) < l(w).
    bool right_descent(int i) const { return (*this * generator(size(), i)).length() < length(); }
    bool left_descent(int i) const { return (generator(size(), i) * *this).length() < length(); }
    std::vector<int> right_descents() const {
        std::vector<int> d;
        for (int i = 1; i <= size(); ++i)
            if (right_descent(i)) d.push_back(i);
        return d;
    }
    std::vector<int> left_descents() const {
        std::vector<int> d;
        for (int i = 1; i <= size(); ++i)
            if (left_descent(i)) d.push_back(i);
        return d;
    }

    // Reduced word, smallest left descent first.
    std::vector<int> reduced_word() const {
        std::vector<int> out;
        SignedPermutation w = *this;
        while (!w.is_identity()) {
            int i = w.left_descents().front();
            out.push_back(i);
            w = generator(size(), i) * w;
        }
        return out;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 1; i <= size(); ++i) s += (i > 1 ? " " : "") + std::to_string(img_[i]);
        return s + "]";
    }

private:
    std::vector<int> img_;
};

inline SignedPermutation coxeter_product(int m, const std::vector<int>& word) {
    SignedPermutation w = SignedPermutation::identity(m);
    for (int i : word) w = w * SignedPermutation::generator(m, i);
    return w;
}

// ---------------------------------------------------------------------------
// Garside normal form Delta^p x_1 ... x_l in B_{D_m}. Simple elements are
// elements of W(D_m) (their positive lifts); each x_i is neither e nor w0 and
// every pair is left-weighted: R(x_i) contains L(x_{i+1}).

struct GreedyNormalForm {
    int m = 0;
    int p = 0;
    std::vector<SignedPermutation> factors;

    friend bool operator==(const GreedyNormalForm& a, const GreedyNormalForm& b) {
        return a.m == b.m && a.p == b.p && a.factors == b.factors;
    }
    bool is_identity() const { return p == 0 && factors.empty(); }

    std::string str() const {
        std::string s = "D^" + std::to_string(p);
        for (const auto& x : factors) {
            s += " [";
            bool first = true;
            for (int i : x.reduced_word()) {
                s += (first ? "s" : " s") + std::to_string(i);
                first = false;
            }
            s += "]";
        }
        return s;
    }
};

namespace detail {

// delta(x) = w0 x w0
inline SignedPermutation delta_conj(const SignedPermutation& x) {
    const auto w0 = SignedPermutation::longest(x.size());
    return w0 * x * w0;
}

// Make (a, b) left-weighted by moving left descents of b not in R(a) over.
inline bool left_weight(SignedPermutation& a, SignedPermutation& b) {
    bool changed = false;
    const int m = a.size();
    for (;;) {
        int mv = 0;
        for (int i = 1; i <= m && !mv; ++i)
            if (b.left_descent(i) && !a.right_descent(i)) mv = i;
        if (!mv) return changed;
        const auto s = SignedPermutation::generator(m, mv);
        a = a * s;
        b = s * b;
        changed = true;
    }
}

inline void normalize(GreedyNormalForm& nf) {
    const int m = nf.m;
    const auto w0 = SignedPermutation::longest(m);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = nf.factors.size(); i-- > 1;)
            if (left_weight(nf.factors[i - 1], nf.factors[i])) changed = true;
        // leading w0 factors become Delta; identities drop out
        std::vector<SignedPermutation> kept;
        bool lead = true;
        for (const auto& x : nf.factors) {
            if (x.is_identity()) {
                changed = true;
                continue;
            }
            if (lead && x == w0) {
                ++nf.p;
                changed = true;
                continue;
            }
            lead = false;
            kept.push_back(x);
        }
        nf.factors = std::move(kept);
    }
}

}  // namespace detail

inline GreedyNormalForm nf_identity(int m) {
    if (m < 4) throw std::invalid_argument("B_{D_m} needs m >= 4");
    GreedyNormalForm nf;
    nf.m = m;
    return nf;
}

// nf * Delta^q
inline GreedyNormalForm nf_times_delta(GreedyNormalForm nf, int q) {
    if (q % 2)
        for (auto& x : nf.factors) x = detail::delta_conj(x);
    nf.p += q;
    return nf;
}

// nf * x for a simple element x
inline GreedyNormalForm nf_times_simple(GreedyNormalForm nf, const SignedPermutation& x) {
    nf.factors.push_back(x);
    detail::normalize(nf);
    return nf;
}

inline GreedyNormalForm nf_times_letter(GreedyNormalForm nf, int i, int e) {
    const int m = nf.m;
    const auto s = SignedPermutation::generator(m, i);
    const auto w0 = SignedPermutation::longest(m);
    for (int r = 0; r < std::abs(e); ++r) {
        if (e > 0) {
            nf = nf_times_simple(std::move(nf), s);
        } else {
            // s^{-1} = Delta^{-1} (w0 s)
            nf = nf_times_simple(nf_times_delta(std::move(nf), -1), w0 * s);
        }
    }
    return nf;
}

inline GreedyNormalForm nf_multiply(const GreedyNormalForm& a, const GreedyNormalForm& b) {
    if (a.m != b.m) throw std::invalid_argument("nf_multiply: different m");
    auto r = nf_times_delta(a, b.p);
    for (const auto& x : b.factors) r = nf_times_simple(std::move(r), x);
    return r;
}

// (Delta^p x_1..x_l)^{-1} = x_l^{-1} .. x_1^{-1} Delta^{-p}, x^{-1} = Delta^{-1} (w0 x^{-1}).
inline GreedyNormalForm nf_invert(const GreedyNormalForm& a) {
    const auto w0 = SignedPermutation::longest(a.m);
    auto r = nf_identity(a.m);
    for (auto it = a.factors.rbegin(); it != a.factors.rend(); ++it)
        r = nf_times_simple(nf_times_delta(std::move(r), -1), w0 * it->inverse());
    return nf_times_delta(std::move(r), -a.p);
}

inline bool nf_equal(const GreedyNormalForm& a, const GreedyNormalForm& b) { return a == b; }

// Braid words: sigma letters only.
inline GreedyNormalForm greedy_nf(int m, const GWord& w) {
    auto nf = nf_identity(m);
    for (const auto& l : w.letters) {
        if (l.kind != GLetter::Sigma) throw std::invalid_argument("greedy_nf: braid words take sigma letters only");
        if (l.index < 1 || l.index > m) throw std::out_of_range("greedy_nf: sigma index out of range");
        nf = nf_times_letter(std::move(nf), l.index, l.exp);
    }
    return nf;
}

// Defining relators of B_{D_m} as words equal to the identity.
inline std::vector<GWord> braid_relators(int m) {
    auto adjacent = [](int i, int j) {
        if (i > j) std::swap(i, j);
        if (i == 1 || i == 2) return j == 3;
        return j == i + 1;
    };
    std::vector<GWord> out;
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            GWord w;
            if (adjacent(i, j))
                w.s(i).s(j).s(i).s(j, -1).s(i, -1).s(j, -1);
            else
                w.s(i).s(j).s(i, -1).s(j, -1);
            out.push_back(w);
        }
    return out;
}

// ---------------------------------------------------------------------------
// G_m: tau^b t kappa_a s^d. Delta is converted into central letters using
// the record of greedy_nf(c^{m-1}) computed once per m.

struct DeltaRecord {
    int m = 0;
    GreedyNormalForm c_power;  // greedy_nf(c^{m-1})
    bool delta_central = false;  // Delta commutes with every sigma
    bool delta_swaps12 = false;  // Delta sigma_1 Delta^{-1} = sigma_2, others fixed
    bool w0_is_minus_one = false;
    bool usable = false;  // c^{m-1} = Delta exactly
    std::string diagnostics;
};

// c = sigma_1 sigma_2 ... sigma_m. For m even any ordering gives c^{m-1} = Delta;
// for m odd some orderings only give a conjugate of Delta.
inline GWord artin_coxeter_word(int m) { return coxeter_word(m); }

inline DeltaRecord derive_delta_record(int m) {
    DeltaRecord r;
    r.m = m;
    r.c_power = greedy_nf(m, artin_coxeter_word(m).power(m - 1));
    const auto w0 = SignedPermutation::longest(m);
    r.w0_is_minus_one = true;
    for (int i = 1; i <= m; ++i)
        if (w0(i) != -i) r.w0_is_minus_one = false;
    bool central = true, swaps = true;
    GreedyNormalForm D = nf_identity(m);
    D.p = 1;
    for (int i = 1; i <= m; ++i) {
        auto conj = nf_multiply(nf_multiply(D, greedy_nf(m, GWord().s(i))), nf_invert(D));
        int swapped = i <= 2 ? 3 - i : i;
        if (!(conj == greedy_nf(m, GWord().s(i)))) central = false;
        if (!(conj == greedy_nf(m, GWord().s(swapped)))) swaps = false;
    }
    r.delta_central = central;
    r.delta_swaps12 = swaps;
    std::ostringstream d;
    d << "m=" << m << " nf(c^(m-1)) = " << r.c_power.str() << "; Delta " << (central ? "central" : swaps ? "swaps s1,s2" : "neither")
      << "; w0 " << (r.w0_is_minus_one ? "= -1" : "!= -1");
    // The quotient relation gives Delta = kappa_{-1} s^{2m-3} (m even) or
    // tau kappa_{-1} s^{2m-3} (m odd) once c^{m-1} = Delta; its tau part must
    // match how Delta conjugates.
    const bool parity_ok = (m % 2 == 0) ? central : swaps;
    r.usable = r.c_power.p == 1 && r.c_power.factors.empty() && parity_ok;
    if (!r.usable) d << "; unresolved: c^(m-1) is not Delta with the expected conjugation";
    r.diagnostics = d.str();
    return r;
}

inline const DeltaRecord& delta_record(int m) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const DeltaRecord>> table;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(m);
    if (it == table.end()) it = table.emplace(m, std::make_shared<const DeltaRecord>(derive_delta_record(m))).first;
    return *it->second;
}

struct GmNormalForm {
    int b = 0;
    GreedyNormalForm t;  // p = 0
    Rational a = 1;
    int d = 0;

    friend bool operator==(const GmNormalForm& x, const GmNormalForm& y) {
        return x.b == y.b && x.t == y.t && x.a == y.a && x.d == y.d;
    }
    std::string str() const {
        std::ostringstream o;
        o << "b=" << b << " t=" << (t.factors.empty() ? std::string("e") : t.str().substr(4)) << " a=" << a.get_str() << " d=" << d;
        return o.str();
    }
};

inline GmNormalForm gm_normal_form(int m, const GWord& w) {
    const auto& rec = delta_record(m);
    if (!rec.usable) throw std::runtime_error("gm_normal_form: " + rec.diagnostics);
    GmNormalForm out;
    // tau to the front, kappa and shift collected (central)
    int taus = 0;
    GWord braid;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        GLetter l = *it;
        switch (l.kind) {
            case GLetter::Tau: ++taus; break;
            case GLetter::Kappa:
                if (sgn(l.unit) == 0) throw std::invalid_argument("gm_normal_form: kappa needs a nonzero unit");
                out.a *= l.unit;
                break;
            case GLetter::Shift: out.d += l.exp; break;
            case GLetter::Sigma:
                if (taus % 2 && (l.index == 1 || l.index == 2)) l.index = 3 - l.index;
                braid.letters.push_back(l);
                break;
        }
    }
    std::reverse(braid.letters.begin(), braid.letters.end());
    out.b = taus % 2;
    auto nf = greedy_nf(m, braid);
    // Delta^p = (tau^{m odd} kappa_{-1} s^{2m-3})^p, and Delta sits left of the simples
    const int p = nf.p;
    nf.p = 0;
    out.t = nf;
    if (p % 2) out.a = -out.a;
    out.d += p * (2 * m - 3);
    if (m % 2) out.b = ((out.b + p) % 2 + 2) % 2;
    out.a.canonicalize();
    return out;
}

inline bool gm_equal(int m, const GWord& x, const GWord& y) { return gm_normal_form(m, x) == gm_normal_form(m, y); }

// Word spelling out a normal form: tau^b, the simples as positive words, kappa_a, s^d.
inline GWord gm_word(const GmNormalForm& nf) {
    GWord w;
    if (nf.b) w.t();
    for (const auto& x : nf.t.factors)
        for (int i : x.reduced_word()) w.s(i);
    if (nf.a != 1) w.k(nf.a);
    return w.sh(nf.d);
}

}  // namespace dpic
