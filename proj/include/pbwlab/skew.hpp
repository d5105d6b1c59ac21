#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pbwlab/rep.hpp"

namespace pbwlab {

using Word = std::vector<std::uint8_t>;  // V-basis indices; length = tensor degree

/// Normal-form monomial of T_k(V)#G: (word in the V-basis) tensor (group element).
struct SkewMonomial {
    Word word;
    GIdx g = 0;

    std::size_t degree() const { return word.size(); }

    // total degree, then lex on the word, then group index
    friend bool operator<(const SkewMonomial& a, const SkewMonomial& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        if (a.word != b.word) return a.word < b.word;
        return a.g < b.g;
    }
    friend bool operator==(const SkewMonomial& a, const SkewMonomial& b) {
        return a.word == b.word && a.g == b.g;
    }
};

/// Exact linear combination of skew monomials; no zero coefficients stored.
template <Field K>
struct SkewElement {
    using Elem = typename K::Elem;
    std::map<SkewMonomial, Elem> terms;

    bool is_zero() const { return terms.empty(); }

    /// Filtered degree: top degree among terms; 0 for the zero element.
    std::size_t degree() const {
        return terms.empty() ? 0 : terms.rbegin()->first.degree();
    }

    const SkewMonomial& leading_monomial() const { return terms.rbegin()->first; }
    const Elem& leading_coeff() const { return terms.rbegin()->second; }
};

template <Field K>
void add_term(K k, SkewElement<K>& e, const SkewMonomial& m, const typename K::Elem& c) {
    if (k.is_zero(c)) return;
    auto it = e.terms.find(m);
    if (it == e.terms.end()) {
        e.terms.emplace(m, c);
    } else {
        it->second = k.add(it->second, c);
        if (k.is_zero(it->second)) e.terms.erase(it);
    }
}

/// Arithmetic context: the field, the acting group and its representation on V.
template <Field K>
class SkewContext {
public:
    using Elem = typename K::Elem;

    SkewContext(K k, Representation<K> rep) : k_(k), rep_(std::move(rep)) {}

    const K& field() const { return k_; }
    const Representation<K>& rep() const { return rep_; }
    const FiniteGroup& group() const { return rep_.group; }
    std::size_t dim_V() const { return rep_.dim_V; }

    SkewElement<K> zero() const { return {}; }

    SkewElement<K> monomial(Word w, GIdx g, Elem c) const {
        SkewElement<K> e;
        add_term(k_, e, SkewMonomial{std::move(w), g}, c);
        return e;
    }
    SkewElement<K> unit() const { return monomial({}, group().identity, k_.one()); }
    SkewElement<K> letter(std::uint8_t i) const { return monomial({i}, group().identity, k_.one()); }
    SkewElement<K> group_elt(GIdx g) const { return monomial({}, g, k_.one()); }

    SkewElement<K> add(const SkewElement<K>& a, const SkewElement<K>& b) const {
        SkewElement<K> r = a;
        for (const auto& [m, c] : b.terms) add_term(k_, r, m, c);
        return r;
    }
    SkewElement<K> sub(const SkewElement<K>& a, const SkewElement<K>& b) const {
        SkewElement<K> r = a;
        for (const auto& [m, c] : b.terms) add_term(k_, r, m, k_.neg(c));
        return r;
    }
    SkewElement<K> scale(const SkewElement<K>& a, const Elem& c) const {
        SkewElement<K> r;
        for (const auto& [m, x] : a.terms) add_term(k_, r, m, k_.mul(x, c));
        return r;
    }

    /// ^g w expanded over the V-basis, letter by letter.
    void act_on_word(GIdx g, const Word& w,
                     std::vector<std::pair<Word, Elem>>& out) const {
        out.clear();
        out.push_back({Word{}, k_.one()});
        if (g == group().identity) {
            out[0].first = w;
            return;
        }
        const auto& m = rep_.mat(g);
        std::vector<std::pair<Word, Elem>> next;
        for (std::uint8_t letter : w) {
            next.clear();
            for (const auto& [pw, pc] : out)
                for (std::size_t r = 0; r < dim_V(); ++r) {
                    if (k_.is_zero(m(r, letter))) continue;
                    Word nw = pw;
                    nw.push_back(std::uint8_t(r));
                    next.emplace_back(std::move(nw), k_.mul(pc, m(r, letter)));
                }
            std::swap(out, next);
        }
    }

    /// (w1|g1)(w2|g2) = w1 . (^{g1} w2) | g1 g2
    SkewElement<K> multiply(const SkewElement<K>& a, const SkewElement<K>& b) const {
        SkewElement<K> r;
        std::vector<std::pair<Word, Elem>> twisted;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                act_on_word(ma.g, mb.word, twisted);
                GIdx g = group().mul(ma.g, mb.g);
                Elem c0 = k_.mul(ca, cb);
                for (const auto& [tw, tc] : twisted) {
                    Word w = ma.word;
                    w.insert(w.end(), tw.begin(), tw.end());
                    add_term(k_, r, SkewMonomial{std::move(w), g}, k_.mul(c0, tc));
                }
            }
        return r;
    }

    std::string to_string(const SkewElement<K>& e) const {
        if (e.is_zero()) return "0";
        std::string s;
        for (const auto& [m, c] : e.terms) {
            if (!s.empty()) s += " + ";
            s += k_.to_string(c) + "*";
            if (m.word.empty()) s += "1";
            for (auto l : m.word) s += "v" + std::to_string(l + 1);
            if (m.g != group().identity) s += "#g" + std::to_string(m.g);
        }
        return s;
    }

private:
    [[no_unique_address]] K k_;
    Representation<K> rep_;
};

/// Projection onto the second graded component.
template <Field K>
SkewElement<K> pi(const SkewElement<K>& x) {
    SkewElement<K> r;
    for (const auto& [m, c] : x.terms)
        if (m.degree() == 2) r.terms.emplace(m, c);
    return r;
}

/// Top-degree homogeneous part; LH(0) = 0.
template <Field K>
SkewElement<K> leading_homogeneous(const SkewElement<K>& x) {
    SkewElement<K> r;
    if (x.is_zero()) return r;
    std::size_t d = x.degree();
    for (const auto& [m, c] : x.terms)
        if (m.degree() == d) r.terms.emplace(m, c);
    return r;
}

/// Bijection between monomials of degree <= max_degree and coordinates.
/// Canonical order: degree ascending, then word lex, then group index.
class MonomialIndexer {
public:
    MonomialIndexer(std::size_t dim_V, std::size_t group_order, std::size_t max_degree)
        : n_(dim_V), ng_(group_order), maxdeg_(max_degree) {
        offsets_.resize(max_degree + 2, 0);
        std::size_t pw = 1;
        for (std::size_t d = 0; d <= max_degree; ++d) {
            offsets_[d + 1] = offsets_[d] + pw * ng_;
            pw *= n_;
        }
    }

    std::size_t dim() const { return offsets_[maxdeg_ + 1]; }
    std::size_t dim_filtered(std::size_t m) const { return offsets_[m + 1]; }
    std::size_t max_degree() const { return maxdeg_; }

    std::size_t index(const SkewMonomial& m) const {
        std::size_t wr = 0;
        for (auto l : m.word) wr = wr * n_ + l;
        return offsets_[m.degree()] + wr * ng_ + m.g;
    }

    SkewMonomial monomial(std::size_t idx) const {
        std::size_t d = 0;
        while (idx >= offsets_[d + 1]) ++d;
        std::size_t rel = idx - offsets_[d];
        GIdx g = GIdx(rel % ng_);
        std::size_t wr = rel / ng_;
        Word w(d);
        for (std::size_t i = d; i-- > 0;) {
            w[i] = std::uint8_t(wr % n_);
            wr /= n_;
        }
        return SkewMonomial{std::move(w), g};
    }

    std::size_t degree_of_index(std::size_t idx) const {
        std::size_t d = 0;
        while (idx >= offsets_[d + 1]) ++d;
        return d;
    }

private:
    std::size_t n_, ng_, maxdeg_;
    std::vector<std::size_t> offsets_;
};

template <Field K>
std::vector<typename K::Elem> to_dense(K k, const SkewElement<K>& e, const MonomialIndexer& ix) {
    std::vector<typename K::Elem> v(ix.dim(), k.zero());
    for (const auto& [m, c] : e.terms) v[ix.index(m)] = c;
    return v;
}

template <Field K>
SkewElement<K> from_dense(K k, const std::vector<typename K::Elem>& v, const MonomialIndexer& ix) {
    SkewElement<K> e;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!k.is_zero(v[i])) e.terms.emplace(ix.monomial(i), v[i]);
    return e;
}

}  // namespace pbwlab
