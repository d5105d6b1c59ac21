#pragma once

#include <cstddef>
#include <vector>

#include "pbwlab/matrix.hpp"

namespace pbwlab {

/// Subspace of k^n stored as a canonical (rref) basis; equality is structural.
template <Field K>
class Subspace {
public:
    using Elem = typename K::Elem;

    Subspace() = default;
    Subspace(K k, std::size_t ambient) : basis_(k, 0, ambient), ambient_(ambient) {}

    /// Span of the rows of m (rows need not be independent).
    static Subspace span(const Matrix<K>& m) {
        Subspace s(m.field(), m.cols());
        auto [r, rk] = rref(m);
        s.basis_ = std::move(r);
        return s;
    }

    static Subspace zero(K k, std::size_t ambient) { return Subspace(k, ambient); }
    static Subspace full(K k, std::size_t ambient) {
        Subspace s(k, ambient);
        s.basis_ = Matrix<K>::identity(k, ambient);
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<K>& basis() const { return basis_; }
    const K& field() const { return basis_.field(); }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    bool contains(const std::vector<Elem>& v) const {
        const K k = basis_.field();
        if (v.size() != ambient_) throw AmbientMismatch("contains: vector length mismatch");
        std::vector<Elem> w = v;
        reduce(w);
        for (const auto& x : w)
            if (!k.is_zero(x)) return false;
        return true;
    }

    bool contains(const Subspace& o) const {
        if (o.ambient_ != ambient_) throw AmbientMismatch("contains: ambient mismatch");
        for (std::size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    Subspace sum(const Subspace& o) const {
        if (o.ambient_ != ambient_) throw AmbientMismatch("sum: ambient mismatch");
        Matrix<K> m = basis_;
        for (std::size_t i = 0; i < o.dim(); ++i) m.append_row(o.basis_.row(i));
        if (m.rows() == 0) return Subspace(basis_.field(), ambient_);
        return span(m);
    }

    /// Zassenhaus: row-reduce [A|A; B|0]; rows with zero left half give A cap B.
    Subspace intersect(const Subspace& o) const {
        const K k = basis_.field();
        if (o.ambient_ != ambient_) throw AmbientMismatch("intersect: ambient mismatch");
        const std::size_t n = ambient_;
        Matrix<K> m(k, dim() + o.dim(), 2 * n);
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = basis_(i, j);
                m(i, n + j) = basis_(i, j);
            }
        for (std::size_t i = 0; i < o.dim(); ++i)
            for (std::size_t j = 0; j < n; ++j) m(dim() + i, j) = o.basis_(i, j);
        auto piv = rref_inplace(m);
        Matrix<K> out(k, 0, n);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            if (piv[i] < n) continue;  // left half nonzero
            std::vector<Elem> v(n);
            for (std::size_t j = 0; j < n; ++j) v[j] = m(i, n + j);
            out.append_row(v);
        }
        return span(out);
    }

    /// this viewed inside the coordinate subspace spanned by coords (result
    /// ambient = coords.size()); requires every basis vector supported there.
    Subspace restrict_to_coords(const std::vector<std::size_t>& coords) const {
        const K k = basis_.field();
        Matrix<K> m(k, dim(), coords.size());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < coords.size(); ++j) m(i, j) = basis_(i, coords[j]);
        return span(m);
    }

    /// Write v in terms of the basis rows; nullopt when v is outside.
    std::optional<std::vector<Elem>> coordinates_of(const std::vector<Elem>& v) const {
        const K k = basis_.field();
        std::vector<Elem> w = v;
        std::vector<Elem> c(dim(), k.zero());
        for (std::size_t i = 0; i < dim(); ++i) {
            std::size_t pc = pivot_col(i);
            if (k.is_zero(w[pc])) continue;
            c[i] = w[pc];
            for (std::size_t j = 0; j < ambient_; ++j)
                w[j] = k.sub(w[j], k.mul(c[i], basis_(i, j)));
        }
        for (const auto& x : w)
            if (!k.is_zero(x)) return std::nullopt;
        return c;
    }

private:
    void reduce(std::vector<Elem>& w) const {
        const K k = basis_.field();
        for (std::size_t i = 0; i < dim(); ++i) {
            std::size_t pc = pivot_col(i);
            if (k.is_zero(w[pc])) continue;
            const Elem f = w[pc];
            for (std::size_t j = pc; j < ambient_; ++j)
                w[j] = k.sub(w[j], k.mul(f, basis_(i, j)));
        }
    }

    std::size_t pivot_col(std::size_t i) const {
        const K k = basis_.field();
        for (std::size_t j = 0; j < ambient_; ++j)
            if (!k.is_zero(basis_(i, j))) return j;
        return ambient_;
    }

    Matrix<K> basis_;
    std::size_t ambient_ = 0;
};

template <Field K>
Subspace<K> kernel(const Matrix<K>& m) {
    return Subspace<K>::span(kernel_basis(m));
}

/// Image (row space is not it): span of columns' images, i.e. span of m e_j.
template <Field K>
Subspace<K> image(const Matrix<K>& m) {
    Matrix<K> t(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return Subspace<K>::span(t);
}

/// Image of a subspace under a linear map given as a matrix acting on columns.
template <Field K>
Subspace<K> apply_map(const Matrix<K>& f, const Subspace<K>& s) {
    if (f.cols() != s.ambient_dim()) throw AmbientMismatch("apply_map: shape mismatch");
    Matrix<K> m(f.field(), s.dim(), f.rows());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        auto v = f.apply(s.basis().row(i));
        for (std::size_t j = 0; j < f.rows(); ++j) m(i, j) = v[j];
    }
    return Subspace<K>::span(m);
}

}  // namespace pbwlab
