#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbwlab/group.hpp"
#include "pbwlab/matrix.hpp"
#include "pbwlab/subspace.hpp"

namespace pbwlab {

/// Linear representation of a finite group on V = k^dim, one matrix per element.
/// matrices[g] acts on column vectors: (^g v)_i = sum_j matrices[g](i,j) v_j.
template <Field K>
struct Representation {
    FiniteGroup group;
    std::size_t dim_V = 0;
    std::vector<Matrix<K>> matrices;

    const Matrix<K>& mat(GIdx g) const { return matrices[g]; }

    std::vector<typename K::Elem> act(GIdx g, const std::vector<typename K::Elem>& v) const {
        return matrices[g].apply(v);
    }

    static Representation trivial(K k, std::size_t dim) {
        Representation r;
        r.group = FiniteGroup::trivial();
        r.dim_V = dim;
        r.matrices = {Matrix<K>::identity(k, dim)};
        return r;
    }
};

template <Field K>
std::optional<std::string> representation_violation(const Representation<K>& r) {
    const K k = r.matrices.empty() ? K{} : r.matrices[0].field();
    if (auto v = group_violation(r.group)) return v;
    if (r.matrices.size() != r.group.order) return "need one matrix per group element";
    for (std::size_t g = 0; g < r.group.order; ++g)
        if (r.matrices[g].rows() != r.dim_V || r.matrices[g].cols() != r.dim_V)
            return "matrix for element " + std::to_string(g) + " has wrong shape";
    if (!(r.matrices[r.group.identity] == Matrix<K>::identity(k, r.dim_V)))
        return "identity element must act as the identity matrix";
    for (std::size_t g = 0; g < r.group.order; ++g)
        for (std::size_t h = 0; h < r.group.order; ++h) {
            auto prod = r.matrices[g] * r.matrices[h];
            if (!(prod == r.matrices[r.group.mul(GIdx(g), GIdx(h))]))
                return "homomorphism fails at pair (" + std::to_string(g) + "," + std::to_string(h) + ")";
        }
    // matrix(g) * matrix(g^-1) = id already implies invertibility
    return std::nullopt;
}

template <Field K>
bool validate_representation(const Representation<K>& r) {
    return !representation_violation(r).has_value();
}

/// Yetter-Drinfeld grading data on a space: a group component per basis
/// vector and an action matrix per group element.
template <Field K>
struct YDGrading {
    const FiniteGroup* group = nullptr;
    std::size_t space_dim = 0;
    std::vector<GIdx> component;      // component[b] = G-degree of basis vector b
    std::vector<Matrix<K>> action;    // action[h] on the space

    const Matrix<K>& act(GIdx h) const { return action[h]; }
};

/// h(V_g) <= V_{hgh^-1} for all h and basis vectors; reports first violation.
template <Field K>
std::optional<std::pair<GIdx, std::size_t>> yd_violation(const YDGrading<K>& yd) {
    const K k = yd.action.empty() ? K{} : yd.action[0].field();
    for (std::size_t h = 0; h < yd.group->order; ++h) {
        const auto& m = yd.action[h];
        for (std::size_t b = 0; b < yd.space_dim; ++b) {
            GIdx target = yd.group->conj(GIdx(h), yd.component[b]);
            for (std::size_t i = 0; i < yd.space_dim; ++i)
                if (!k.is_zero(m(i, b)) && yd.component[i] != target)
                    return std::make_pair(GIdx(h), b);
        }
    }
    return std::nullopt;
}

template <Field K>
bool check_yd(const YDGrading<K>& yd) {
    return !yd_violation(yd).has_value();
}

/// f  X -> Y intertwines the two actions: f . aX(g) = aY(g) . f for all g.
template <Field K>
bool is_equivariant(const Matrix<K>& f, const std::vector<Matrix<K>>& action_X,
                    const std::vector<Matrix<K>>& action_Y) {
    for (std::size_t g = 0; g < action_X.size(); ++g)
        if (!((f * action_X[g]) == (action_Y[g] * f))) return false;
    return true;
}

/// Diagonal action of g on V tensor V ... tensor V (deg factors).
template <Field K>
Matrix<K> tensor_power_action(const Representation<K>& rep, GIdx g, std::size_t deg) {
    const K k = rep.matrices[0].field();
    std::size_t n = rep.dim_V;
    std::size_t dim = 1;
    for (std::size_t i = 0; i < deg; ++i) dim *= n;
    Matrix<K> out(k, dim, dim);
    const auto& m = rep.mat(g);
    // column w (word) maps to tensor product of columns
    std::vector<std::size_t> word(deg);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t c = col;
        for (std::size_t i = deg; i-- > 0;) {
            word[i] = c % n;
            c /= n;
        }
        // expand product over letters
        std::vector<std::pair<std::size_t, typename K::Elem>> partial = {{0, k.one()}};
        for (std::size_t i = 0; i < deg; ++i) {
            std::vector<std::pair<std::size_t, typename K::Elem>> next;
            for (const auto& [idx, coef] : partial)
                for (std::size_t r = 0; r < n; ++r) {
                    if (k.is_zero(m(r, word[i]))) continue;
                    next.emplace_back(idx * n + r, k.mul(coef, m(r, word[i])));
                }
            partial = std::move(next);
        }
        for (const auto& [row, coef] : partial) out(row, col) = k.add(out(row, col), coef);
    }
    return out;
}

}  // namespace pbwlab
