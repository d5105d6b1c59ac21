#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pbwlab/field.hpp"

namespace pbwlab {

struct AmbientMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InconsistentSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense matrix over an exact field. Row-major.
template <Field K>
class Matrix {
public:
    using Elem = typename K::Elem;

    Matrix() = default;
    Matrix(K k, std::size_t rows, std::size_t cols)
        : k_(k), rows_(rows), cols_(cols), a_(rows * cols, k.zero()) {}

    static Matrix identity(K k, std::size_t n) {
        Matrix m(k, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const K& field() const { return k_; }

    Elem& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const Elem& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!k_.eq(a_[i], o.a_[i])) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        assert(cols_ == o.rows_);
        Matrix r(k_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t l = 0; l < cols_; ++l) {
                const Elem& x = (*this)(i, l);
                if (k_.is_zero(x)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) = k_.add(r(i, j), k_.mul(x, o(l, j)));
            }
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = k_.sub(r.a_[i], o.a_[i]);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!k_.is_zero(x)) return false;
        return true;
    }

    std::vector<Elem> apply(const std::vector<Elem>& v) const {
        assert(v.size() == cols_);
        std::vector<Elem> r(rows_, k_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!k_.is_zero((*this)(i, j)))
                    r[i] = k_.add(r[i], k_.mul((*this)(i, j), v[j]));
        return r;
    }

    /// Row describing v as a 1 x cols matrix appended below.
    void append_row(const std::vector<Elem>& v) {
        assert(v.size() == cols_ || rows_ == 0);
        if (rows_ == 0) cols_ = v.size();
        a_.insert(a_.end(), v.begin(), v.end());
        ++rows_;
    }

    std::vector<Elem> row(std::size_t i) const {
        return std::vector<Elem>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

private:
    [[no_unique_address]] K k_{};
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> a_;
};

/// In-place reduced row echelon form; returns pivot column per pivot row.
template <Field K>
std::vector<std::size_t> rref_inplace(Matrix<K>& m) {
    const K k = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && k.is_zero(m(sel, c))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(r, j), m(sel, j));
        const auto piv_inv = k.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(m(r, j), piv_inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || k.is_zero(m(i, c))) continue;
            const auto f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = k.sub(m(i, j), k.mul(f, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// (rref, rank). The input is left untouched.
template <Field K>
std::pair<Matrix<K>, std::size_t> rref(const Matrix<K>& m) {
    Matrix<K> r = m;
    auto piv = rref_inplace(r);
    Matrix<K> out(m.field(), piv.size(), m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = r(i, j);
    return {std::move(out), piv.size()};
}

template <Field K>
std::size_t rank(const Matrix<K>& m) {
    Matrix<K> r = m;
    return rref_inplace(r).size();
}

/// Basis rows of { v : m v^T = 0 }, in rref.
template <Field K>
Matrix<K> kernel_basis(const Matrix<K>& m) {
    const K k = m.field();
    Matrix<K> r = m;
    auto piv = rref_inplace(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    Matrix<K> out(k, 0, m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<typename K::Elem> v(m.cols(), k.zero());
        v[c] = k.one();
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = k.neg(r(i, c));
        out.append_row(v);
    }
    rref_inplace(out);  // canonical basis
    return out;
}

/// One solution x of A x = b (rref-pivot solution: free variables zero).
/// Throws InconsistentSystem when none exists.
template <Field K>
std::vector<typename K::Elem> solve_linear(const Matrix<K>& a,
                                           const std::vector<typename K::Elem>& b) {
    const K k = a.field();
    if (b.size() != a.rows()) throw AmbientMismatch("solve_linear: rhs length mismatch");
    Matrix<K> aug(k, a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto piv = rref_inplace(aug);
    std::vector<typename K::Elem> x(a.cols(), k.zero());
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == a.cols()) throw InconsistentSystem("solve_linear: no solution");
        x[piv[i]] = aug(i, a.cols());
    }
    return x;
}

}  // namespace pbwlab
