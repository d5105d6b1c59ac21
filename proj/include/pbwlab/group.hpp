#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbwlab/field.hpp"

namespace pbwlab {

using GIdx = std::uint32_t;  // group element index

/// Finite group given by its full multiplication table.
struct FiniteGroup {
    std::size_t order = 1;
    std::vector<std::vector<GIdx>> mult;  // mult[a][b] = index of a*b
    GIdx identity = 0;
    std::vector<GIdx> inverse;

    GIdx mul(GIdx a, GIdx b) const { return mult[a][b]; }
    GIdx inv(GIdx a) const { return inverse[a]; }
    GIdx conj(GIdx h, GIdx g) const { return mul(mul(h, g), inv(h)); }  // h g h^-1

    static FiniteGroup trivial() {
        FiniteGroup g;
        g.order = 1;
        g.mult = {{0}};
        g.identity = 0;
        g.inverse = {0};
        return g;
    }

    static FiniteGroup cyclic(std::size_t n) {
        FiniteGroup g;
        g.order = n;
        g.mult.assign(n, std::vector<GIdx>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) g.mult[a][b] = GIdx((a + b) % n);
        g.identity = 0;
        g.inverse.resize(n);
        for (std::size_t a = 0; a < n; ++a) g.inverse[a] = GIdx((n - a) % n);
        return g;
    }

    /// Derive identity/inverses from a bare table; nullopt if none exist.
    static std::optional<FiniteGroup> from_table(std::vector<std::vector<GIdx>> table);
};

/// Exhaustive check of the group axioms; on failure returns a description
/// of the first violated axiom.
inline std::optional<std::string> group_violation(const FiniteGroup& g) {
    const std::size_t n = g.order;
    if (n == 0) return "group order must be positive";
    if (g.mult.size() != n) return "mult table has wrong number of rows";
    for (std::size_t a = 0; a < n; ++a) {
        if (g.mult[a].size() != n) return "mult table row " + std::to_string(a) + " has wrong length";
        for (std::size_t b = 0; b < n; ++b)
            if (g.mult[a][b] >= n) return "mult table entry out of range";
    }
    if (g.identity >= n) return "identity index out of range";
    for (std::size_t a = 0; a < n; ++a) {
        if (g.mul(g.identity, GIdx(a)) != a)
            return "e*a != a for a=" + std::to_string(a);
        if (g.mul(GIdx(a), g.identity) != a)
            return "a*e != a for a=" + std::to_string(a);
    }
    if (g.inverse.size() != n) return "inverse table has wrong length";
    for (std::size_t a = 0; a < n; ++a) {
        if (g.inverse[a] >= n) return "inverse index out of range";
        if (g.mul(GIdx(a), g.inverse[a]) != g.identity || g.mul(g.inverse[a], GIdx(a)) != g.identity)
            return "inverse wrong for a=" + std::to_string(a);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (g.mul(g.mul(GIdx(a), GIdx(b)), GIdx(c)) != g.mul(GIdx(a), g.mul(GIdx(b), GIdx(c))))
                    return "associativity fails at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")";
    return std::nullopt;
}

inline bool validate_group(const FiniteGroup& g) { return !group_violation(g).has_value(); }

inline std::optional<FiniteGroup> FiniteGroup::from_table(std::vector<std::vector<GIdx>> table) {
    FiniteGroup g;
    g.order = table.size();
    g.mult = std::move(table);
    std::size_t n = g.order;
    // find a two-sided identity
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n; ++a)
            if (g.mult[e][a] != a || g.mult[a][e] != a) { ok = false; break; }
        if (ok) { g.identity = GIdx(e); found = true; }
    }
    if (!found) return std::nullopt;
    g.inverse.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        bool has = false;
        for (std::size_t b = 0; b < n; ++b)
            if (g.mult[a][b] == g.identity && g.mult[b][a] == g.identity) {
                g.inverse[a] = GIdx(b);
                has = true;
                break;
            }
        if (!has) return std::nullopt;
    }
    if (group_violation(g)) return std::nullopt;
    return g;
}

/// Element of the group algebra kG: coefficient per group element.
template <Field K>
struct GroupAlgebraElement {
    std::vector<typename K::Elem> coeffs;

    static GroupAlgebraElement zero(K k, std::size_t order) {
        return {std::vector<typename K::Elem>(order, k.zero())};
    }
    static GroupAlgebraElement basis(K k, std::size_t order, GIdx g) {
        auto e = zero(k, order);
        e.coeffs[g] = k.one();
        return e;
    }
};

template <Field K>
GroupAlgebraElement<K> ga_multiply(K k, const FiniteGroup& g, const GroupAlgebraElement<K>& a,
                                   const GroupAlgebraElement<K>& b) {
    auto r = GroupAlgebraElement<K>::zero(k, g.order);
    for (std::size_t x = 0; x < g.order; ++x) {
        if (k.is_zero(a.coeffs[x])) continue;
        for (std::size_t y = 0; y < g.order; ++y) {
            if (k.is_zero(b.coeffs[y])) continue;
            GIdx z = g.mul(GIdx(x), GIdx(y));
            r.coeffs[z] = k.add(r.coeffs[z], k.mul(a.coeffs[x], b.coeffs[y]));
        }
    }
    return r;
}

template <Field K>
GroupAlgebraElement<K> ga_add(K k, const GroupAlgebraElement<K>& a, const GroupAlgebraElement<K>& b) {
    auto r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = k.add(r.coeffs[i], b.coeffs[i]);
    return r;
}

template <Field K>
bool ga_is_zero(K k, const GroupAlgebraElement<K>& a) {
    for (const auto& c : a.coeffs)
        if (!k.is_zero(c)) return false;
    return true;
}

}  // namespace pbwlab
