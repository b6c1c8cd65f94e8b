#pragma once
#include <cstddef>
#include <optional>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dpic/field.hpp"

namespace dpic {

template <class F>
using Vec = std::vector<F>;

template <class F>
bool vec_is_zero(const Vec<F>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

template <class F>
void axpy(Vec<F>& y, const std::type_identity_t<F>& a, const Vec<F>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!is_zero(x[i])) y[i] += a * x[i];
}

// Row-reduce in place; returns pivot columns. Rows end up in reduced echelon
// form with unit pivots, zero rows dropped.
template <class F>
std::vector<int> rref(std::vector<Vec<F>>& rows, std::size_t ncols) {
    std::vector<int> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t best = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (!is_zero(rows[i][c])) {
                best = i;
                break;
            }
        if (best == rows.size()) continue;
        std::swap(rows[r], rows[best]);
        F inv = F(1) / rows[r][c];
        for (auto& x : rows[r])
            if (!is_zero(x)) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || is_zero(rows[i][c])) continue;
            F f = -rows[i][c];
            axpy(rows[i], f, rows[r]);
        }
        piv.push_back(static_cast<int>(c));
        ++r;
    }
    rows.resize(r);
    return piv;
}

// Basis of {x : A x = 0}, A given by rows of length ncols.
template <class F>
std::vector<Vec<F>> nullspace(std::vector<Vec<F>> rows, std::size_t ncols) {
    auto piv = rref(rows, ncols);
    std::vector<char> is_piv(ncols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<Vec<F>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        Vec<F> x(ncols, F(0));
        x[f] = F(1);
        for (std::size_t r = 0; r < piv.size(); ++r)
            if (!is_zero(rows[r][f])) x[piv[r]] = -rows[r][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

template <class F>
std::size_t rank_of(std::vector<Vec<F>> rows, std::size_t ncols) {
    return rref(rows, ncols).size();
}

// Incrementally maintained reduced echelon basis of a subspace. Optionally
// tracks how each row is combined from the inserted generators, which gives
// coordinates with respect to those generators.
template <class F>
class Echelon {
public:
    explicit Echelon(std::size_t dim = 0, bool track = false) : dim_(dim), track_(track), col_row_(dim, -1) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t generators() const { return ngen_; }

    // Inserts v; returns true if v was independent of what came before.
    bool add(const Vec<F>& v) {
        Vec<F> w = v;
        Vec<F> tag;
        if (track_) {
            tag.assign(ngen_ + 1, F(0));
            tag[ngen_] = F(1);
        }
        ++ngen_;
        for (auto& t : tags_) t.resize(ngen_, F(0));
        reduce_into(w, track_ ? &tag : nullptr);
        int p = -1;
        for (std::size_t c = 0; c < dim_; ++c)
            if (!is_zero(w[c])) {
                p = static_cast<int>(c);
                break;
            }
        if (p < 0) return false;
        F inv = F(1) / w[p];
        for (auto& x : w)
            if (!is_zero(x)) x *= inv;
        if (track_)
            for (auto& x : tag)
                if (!is_zero(x)) x *= inv;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (is_zero(rows_[r][p])) continue;
            F f = -rows_[r][p];
            axpy(rows_[r], f, w);
            if (track_) axpy(tags_[r], f, tag);
        }
        col_row_[p] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(w));
        piv_.push_back(p);
        if (track_) tags_.push_back(std::move(tag));
        return true;
    }

    Vec<F> reduce(const Vec<F>& v) const {
        Vec<F> w = v;
        reduce_into(w, nullptr);
        return w;
    }

    bool contains(const Vec<F>& v) const { return vec_is_zero(reduce(v)); }

    // Coefficients c with v = sum c_g * generator_g, if v lies in the span.
    // Only meaningful with tracking enabled; dependent generators get 0.
    std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
        if (!track_) throw std::logic_error("Echelon: coordinates need tracking");
        Vec<F> w = v;
        Vec<F> c(ngen_, F(0));
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const F a = w[piv_[r]];
            if (is_zero(a)) continue;
            axpy(w, -a, rows_[r]);
            axpy(c, a, tags_[r]);
        }
        if (!vec_is_zero(w)) return std::nullopt;
        return c;
    }

    const std::vector<Vec<F>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }

private:
    void reduce_into(Vec<F>& w, Vec<F>* tag) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const F a = w[piv_[r]];
            if (is_zero(a)) continue;
            axpy(w, -a, rows_[r]);
            if (tag) axpy(*tag, -a, tags_[r]);
        }
    }

    std::size_t dim_;
    bool track_;
    std::size_t ngen_ = 0;
    std::vector<Vec<F>> rows_;
    std::vector<Vec<F>> tags_;
    std::vector<int> piv_;
    std::vector<int> col_row_;
};

// Quotient Z/B where B is a subspace of Z (both given by spanning vectors).
// Keeps representatives of a complement of B inside Z and computes
// coordinates of vectors of Z in that complement.
template <class F>
class Quotient {
public:
    Quotient() = default;
    Quotient(std::size_t dim, const std::vector<Vec<F>>& sub, const std::vector<Vec<F>>& whole)
        : ech_(dim, true) {
        for (const auto& b : sub) {
            if (ech_.add(b)) kind_.push_back(-1);
            else kind_.push_back(-2);
        }
        for (const auto& z : whole) {
            if (ech_.add(z)) {
                kind_.push_back(static_cast<int>(reps_.size()));
                reps_.push_back(z);
            } else {
                kind_.push_back(-2);
            }
        }
    }

    std::size_t dim() const { return reps_.size(); }
    const std::vector<Vec<F>>& reps() const { return reps_; }

    // Coordinates of v (assumed to lie in Z) modulo B.
    Vec<F> coords(const Vec<F>& v) const {
        auto c = ech_.coordinates(v);
        if (!c) throw std::logic_error("Quotient: vector outside the ambient space");
        Vec<F> out(reps_.size(), F(0));
        for (std::size_t g = 0; g < kind_.size(); ++g)
            if (kind_[g] >= 0) out[kind_[g]] = (*c)[g];
        return out;
    }

    bool in_sub(const Vec<F>& v) const { return vec_is_zero(coords(v)); }

private:
    Echelon<F> ech_;
    std::vector<int> kind_;
    std::vector<Vec<F>> reps_;
};

}  // namespace dpic
