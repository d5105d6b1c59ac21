#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "pbwlab/rep.hpp"
#include "pbwlab/skew.hpp"
#include "pbwlab/subspace.hpp"

namespace pbwlab {

/// Degreewise model of the homogeneous quadratic algebra S = T_k(V)/<R'>
/// up to a polynomial-degree cap: monomial bases (standard words), the
/// projection from tensor words, multiplication, and the G-action.
///
/// Coordinates of V^{(x)d} are word ranks; eliminations pivot on the
/// lex-largest word so the surviving basis is the set of standard words.
template <Field K>
class GradedQuotient {
public:
    using Elem = typename K::Elem;

    GradedQuotient(K k, Representation<K> rep, Subspace<K> Rprime, std::size_t cap)
        : k_(k), rep_(std::move(rep)), rprime_(std::move(Rprime)), cap_(cap) {
        n_ = rep_.dim_V;
        if (rprime_.ambient_dim() != n_ * n_)
            throw AmbientMismatch("R' must live in V (x) V");
        build();
    }

    std::size_t cap() const { return cap_; }
    std::size_t dim_V() const { return n_; }
    const Representation<K>& rep() const { return rep_; }
    const Subspace<K>& Rprime() const { return rprime_; }
    const K& field() const { return k_; }

    std::size_t dim(std::size_t d) const { return basis_words_[d].size(); }
    const Word& basis_word(std::size_t d, std::size_t i) const { return basis_words_[d][i]; }

    /// Class of a dense tensor vector (length n^d) in the monomial basis.
    /// Rows are sorted by pivot, so one pass fully reduces.
    std::vector<Elem> project(std::size_t d, std::vector<Elem> tensor) const {
        const auto& rows = ideal_rows_[d];
        for (const auto& row : rows) {
            const Elem f = tensor[row.pivot];
            if (k_.is_zero(f)) continue;
            tensor[row.pivot] = k_.zero();
            for (const auto& [c, v] : row.ents) tensor[c] = k_.sub(tensor[c], k_.mul(f, v));
        }
        std::vector<Elem> out(dim(d), k_.zero());
        for (std::size_t i = 0; i < dim(d); ++i) out[i] = tensor[word_rank(basis_words_[d][i])];
        return out;
    }

    /// Multiplication S_a x S_b -> S_{a+b} on basis elements.
    const std::vector<Elem>& mul_basis(std::size_t a, std::size_t i, std::size_t b,
                                       std::size_t j) const {
        auto key = std::make_tuple(a, b);
        auto& tab = mul_cache_[key];
        if (tab.empty()) {
            tab.resize(dim(a) * dim(b));
            for (std::size_t ii = 0; ii < dim(a); ++ii)
                for (std::size_t jj = 0; jj < dim(b); ++jj) {
                    Word w = basis_words_[a][ii];
                    const Word& w2 = basis_words_[b][jj];
                    w.insert(w.end(), w2.begin(), w2.end());
                    std::vector<Elem> t(pow_n(a + b), k_.zero());
                    t[word_rank(w)] = k_.one();
                    tab[ii * dim(b) + jj] = project(a + b, std::move(t));
                }
        }
        return tab[i * dim(b) + j];
    }

    /// Action of g on S_d in the monomial basis.
    const Matrix<K>& action(GIdx g, std::size_t d) const {
        auto key = std::make_pair(g, d);
        auto it = action_cache_.find(key);
        if (it != action_cache_.end()) return it->second;
        Matrix<K> m(k_, dim(d), dim(d));
        for (std::size_t j = 0; j < dim(d); ++j) {
            std::vector<Elem> t(pow_n(d), k_.zero());
            expand_action(g, basis_words_[d][j], t);
            auto col = project(d, std::move(t));
            for (std::size_t i = 0; i < dim(d); ++i) m(i, j) = col[i];
        }
        return action_cache_.emplace(key, std::move(m)).first->second;
    }

    std::size_t word_rank(const Word& w) const {
        std::size_t r = 0;
        for (auto l : w) r = r * n_ + l;
        return r;
    }

    std::size_t pow_n(std::size_t d) const {
        std::size_t p = 1;
        for (std::size_t i = 0; i < d; ++i) p *= n_;
        return p;
    }

private:
    struct EchelonRow {
        std::size_t pivot;
        std::vector<std::pair<std::size_t, Elem>> ents;  // excludes pivot (coeff 1)
    };

    // reduce v against rows (pivot coeff 1), in rev-lex coordinate order
    void build() {
        ideal_rows_.resize(cap_ + 1);
        basis_words_.resize(cap_ + 1);
        basis_words_[0] = {Word{}};
        if (cap_ == 0) return;
        basis_words_[1].clear();
        for (std::size_t l = 0; l < n_; ++l) basis_words_[1].push_back(Word{std::uint8_t(l)});

        // J_2 = R'
        std::vector<std::vector<Elem>> gen2;
        for (std::size_t i = 0; i < rprime_.dim(); ++i) gen2.push_back(rprime_.basis().row(i));
        std::vector<std::vector<Elem>> prev = install_degree(2, std::move(gen2));

        for (std::size_t d = 3; d <= cap_; ++d) {
            // J_d = V (x) J_{d-1} + J_{d-1} (x) V
            std::vector<std::vector<Elem>> gens;
            const std::size_t nd = pow_n(d), ndm1 = pow_n(d - 1);
            for (const auto& v : prev) {
                for (std::size_t l = 0; l < n_; ++l) {
                    std::vector<Elem> left(nd, k_.zero());
                    std::vector<Elem> right(nd, k_.zero());
                    for (std::size_t r = 0; r < ndm1; ++r) {
                        if (k_.is_zero(v[r])) continue;
                        left[l * ndm1 + r] = v[r];
                        right[r * n_ + l] = v[r];
                    }
                    gens.push_back(std::move(left));
                    gens.push_back(std::move(right));
                }
            }
            prev = install_degree(d, std::move(gens));
        }
    }

    /// Echelonize the degree-d ideal generators pivoting on lex-largest
    /// words; record rows and the surviving standard-word basis. Returns a
    /// dense basis of J_d for the next degree step.
    std::vector<std::vector<Elem>> install_degree(std::size_t d,
                                                  std::vector<std::vector<Elem>> gens) {
        const std::size_t nd = pow_n(d);
        auto rev = [nd](std::size_t c) { return nd - 1 - c; };
        std::vector<EchelonRow>& rows = ideal_rows_[d];
        std::vector<std::int64_t> pivot_of(nd, -1);
        for (auto& g : gens) {
            // reduce in rev order: scan lex-largest word first
            for (std::size_t rc = 0; rc < nd; ++rc) {
                std::size_t c = rev(rc);
                if (k_.is_zero(g[c])) continue;
                if (pivot_of[c] >= 0) {
                    const auto& row = rows[pivot_of[c]];
                    const Elem f = g[c];
                    g[c] = k_.zero();
                    for (const auto& [c2, v] : row.ents) g[c2] = k_.sub(g[c2], k_.mul(f, v));
                } else {
                    EchelonRow row;
                    row.pivot = c;
                    const Elem inv = k_.inv(g[c]);
                    for (std::size_t rc2 = rc + 1; rc2 < nd; ++rc2) {
                        std::size_t c2 = rev(rc2);
                        if (!k_.is_zero(g[c2])) row.ents.emplace_back(c2, k_.mul(g[c2], inv));
                    }
                    pivot_of[c] = std::int64_t(rows.size());
                    rows.push_back(std::move(row));
                    break;
                }
            }
        }
        // single-pass reduction in project() needs rows in pivot order
        // (lex-largest pivot word first; row tails only touch later coords)
        std::sort(rows.begin(), rows.end(),
                  [](const EchelonRow& a, const EchelonRow& b) { return a.pivot > b.pivot; });
        basis_words_[d].clear();
        for (std::size_t c = 0; c < nd; ++c)
            if (pivot_of[c] < 0) basis_words_[d].push_back(word_of_rank(d, c));
        // dense basis of J_d
        std::vector<std::vector<Elem>> basis;
        for (const auto& row : rows) {
            std::vector<Elem> v(nd, k_.zero());
            v[row.pivot] = k_.one();
            for (const auto& [c, x] : row.ents) v[c] = x;
            basis.push_back(std::move(v));
        }
        return basis;
    }

    Word word_of_rank(std::size_t d, std::size_t rank) const {
        Word w(d);
        for (std::size_t i = d; i-- > 0;) {
            w[i] = std::uint8_t(rank % n_);
            rank /= n_;
        }
        return w;
    }

    void expand_action(GIdx g, const Word& w, std::vector<Elem>& out) const {
        const auto& m = rep_.mat(g);
        std::vector<std::pair<std::size_t, Elem>> partial = {{0, k_.one()}};
        std::vector<std::pair<std::size_t, Elem>> next;
        for (auto l : w) {
            next.clear();
            for (const auto& [idx, coef] : partial)
                for (std::size_t r = 0; r < n_; ++r) {
                    if (k_.is_zero(m(r, l))) continue;
                    next.emplace_back(idx * n_ + r, k_.mul(coef, m(r, l)));
                }
            std::swap(partial, next);
        }
        for (const auto& [idx, coef] : partial) out[idx] = k_.add(out[idx], coef);
    }

    [[no_unique_address]] K k_;
    Representation<K> rep_;
    Subspace<K> rprime_;
    std::size_t cap_, n_;
    std::vector<std::vector<EchelonRow>> ideal_rows_;
    std::vector<std::vector<Word>> basis_words_;
    mutable std::map<std::tuple<std::size_t, std::size_t>, std::vector<std::vector<Elem>>> mul_cache_;
    mutable std::map<std::pair<GIdx, std::size_t>, Matrix<K>> action_cache_;
};

/// Degreewise model of A = S#G: basis of A_d is (S_d basis) x G with
/// G-degree g, and (s1|g1)(s2|g2) = s1 (^{g1} s2) | g1 g2.
template <Field K>
class SmashAlgebra {
public:
    using Elem = typename K::Elem;

    explicit SmashAlgebra(const GradedQuotient<K>* s) : s_(s) {}

    const GradedQuotient<K>& S() const { return *s_; }
    const FiniteGroup& group() const { return s_->rep().group; }
    const K& field() const { return s_->field(); }

    std::size_t dim(std::size_t d) const { return s_->dim(d) * group().order; }
    std::size_t index(std::size_t d, std::size_t s_idx, GIdx g) const {
        (void)d;
        return s_idx * group().order + g;
    }
    std::pair<std::size_t, GIdx> split(std::size_t d, std::size_t idx) const {
        (void)d;
        return {idx / group().order, GIdx(idx % group().order)};
    }
    GIdx g_degree(std::size_t d, std::size_t idx) const { return split(d, idx).second; }

    /// Product of basis elements, as a dense vector in A_{d1+d2}.
    std::vector<Elem> mul_basis(std::size_t d1, std::size_t i1, std::size_t d2,
                                std::size_t i2) const {
        const K k = field();
        auto [s1, g1] = split(d1, i1);
        auto [s2, g2] = split(d2, i2);
        GIdx g = group().mul(g1, g2);
        std::vector<Elem> out(dim(d1 + d2), k.zero());
        const auto& act = s_->action(g1, d2);
        for (std::size_t t = 0; t < s_->dim(d2); ++t) {
            if (k.is_zero(act(t, s2))) continue;
            const auto& prod = s_->mul_basis(d1, s1, d2, t);
            for (std::size_t u = 0; u < s_->dim(d1 + d2); ++u)
                if (!k.is_zero(prod[u]))
                    out[index(d1 + d2, u, g)] =
                        k.add(out[index(d1 + d2, u, g)], k.mul(act(t, s2), prod[u]));
        }
        return out;
    }

    /// Left action of a group element on A_d (conjugation-free: h . (s|g) = (^h s | h g)).
    std::vector<Elem> left_group_mul(GIdx h, std::size_t d, std::size_t idx) const {
        const K k = field();
        auto [s, g] = split(d, idx);
        std::vector<Elem> out(dim(d), k.zero());
        const auto& act = s_->action(h, d);
        GIdx hg = group().mul(h, g);
        for (std::size_t t = 0; t < s_->dim(d); ++t)
            if (!k.is_zero(act(t, s))) out[index(d, t, hg)] = act(t, s);
        return out;
    }

    /// Right multiplication by a group element: (s|g) h = (s|gh).
    std::size_t right_group_mul(std::size_t d, std::size_t idx, GIdx h) const {
        auto [s, g] = split(d, idx);
        return index(d, s, group().mul(g, h));
    }

private:
    const GradedQuotient<K>* s_;
};

}  // namespace pbwlab
