#pragma once

#include <string>
#include <vector>

#include "pbwlab/presentation.hpp"
#include "pbwlab/skew.hpp"

namespace pbwlab {

struct CharTwo : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotConstantKappa : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parameter of a Drinfeld orbifold candidate H_kappa: per group element a
/// scalar-valued alternating form kC_g and a V-valued alternating map kL_g.
template <Field K>
struct KappaParam {
    using Elem = typename K::Elem;

    Representation<K> rep;
    std::vector<Matrix<K>> kC;                         // kC[g](i,j) in k
    std::vector<std::vector<std::vector<Elem>>> kL;    // kL[g][i*nv+j] = vector in V

    static KappaParam zero(K k, Representation<K> rep) {
        KappaParam kp;
        std::size_t nv = rep.dim_V, ng = rep.group.order;
        kp.kC.assign(ng, Matrix<K>(k, nv, nv));
        kp.kL.assign(ng, std::vector<std::vector<Elem>>(nv * nv, std::vector<Elem>(nv, k.zero())));
        kp.rep = std::move(rep);
        return kp;
    }

    Elem kC_at(K k, GIdx g, const std::vector<Elem>& u, const std::vector<Elem>& v) const {
        Elem s = k.zero();
        std::size_t nv = rep.dim_V;
        for (std::size_t i = 0; i < nv; ++i) {
            if (k.is_zero(u[i])) continue;
            for (std::size_t j = 0; j < nv; ++j)
                s = k.add(s, k.mul(k.mul(u[i], v[j]), kC[g](i, j)));
        }
        return s;
    }

    std::vector<Elem> kL_at(K k, GIdx g, const std::vector<Elem>& u,
                            const std::vector<Elem>& v) const {
        std::size_t nv = rep.dim_V;
        std::vector<Elem> s(nv, k.zero());
        for (std::size_t i = 0; i < nv; ++i) {
            if (k.is_zero(u[i])) continue;
            for (std::size_t j = 0; j < nv; ++j) {
                Elem c = k.mul(u[i], v[j]);
                if (k.is_zero(c)) continue;
                for (std::size_t a = 0; a < nv; ++a)
                    s[a] = k.add(s[a], k.mul(c, kL[g][i * nv + j][a]));
            }
        }
        return s;
    }

    bool kL_is_zero(K k) const {
        for (const auto& per_g : kL)
            for (const auto& vec : per_g)
                for (const auto& c : vec)
                    if (!k.is_zero(c)) return false;
        return true;
    }
};

template <Field K>
std::optional<std::string> kappa_alternating_violation(K k, const KappaParam<K>& kp) {
    std::size_t nv = kp.rep.dim_V;
    for (std::size_t g = 0; g < kp.rep.group.order; ++g)
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = 0; j < nv; ++j) {
                if (!k.eq(kp.kC[g](i, j), k.neg(kp.kC[g](j, i))))
                    return "kC not alternating at g=" + std::to_string(g);
                for (std::size_t a = 0; a < nv; ++a)
                    if (!k.eq(kp.kL[g][i * nv + j][a], k.neg(kp.kL[g][j * nv + i][a])))
                        return "kL not alternating at g=" + std::to_string(g);
            }
    return std::nullopt;
}

struct KappaWitness {
    GIdx g = 0;
    GIdx h = 0;  // only meaningful for invariance
    std::size_t i = 0, j = 0, l = 0;
};

/// Bullet 1: kappa is G-invariant.
template <Field K>
bool check_invariance(K k, const KappaParam<K>& kp, KappaWitness* w = nullptr) {
    std::size_t nv = kp.rep.dim_V, ng = kp.rep.group.order;
    std::vector<typename K::Elem> ei(nv, k.zero()), ej(nv, k.zero());
    for (std::size_t h = 0; h < ng; ++h)
        for (std::size_t g = 0; g < ng; ++g) {
            GIdx cg = kp.rep.group.conj(GIdx(h), GIdx(g));
            for (std::size_t i = 0; i < nv; ++i)
                for (std::size_t j = 0; j < nv; ++j) {
                    std::fill(ei.begin(), ei.end(), k.zero());
                    std::fill(ej.begin(), ej.end(), k.zero());
                    ei[i] = k.one();
                    ej[j] = k.one();
                    auto hi = kp.rep.act(GIdx(h), ei), hj = kp.rep.act(GIdx(h), ej);
                    if (!k.eq(kp.kC_at(k, cg, hi, hj), kp.kC[g](i, j))) {
                        if (w) *w = {GIdx(g), GIdx(h), i, j, 0};
                        return false;
                    }
                    auto lhs = kp.kL_at(k, cg, hi, hj);
                    auto rhs = kp.rep.act(GIdx(h), kp.kL[g][i * nv + j]);
                    for (std::size_t a = 0; a < nv; ++a)
                        if (!k.eq(lhs[a], rhs[a])) {
                            if (w) *w = {GIdx(g), GIdx(h), i, j, 0};
                            return false;
                        }
                }
        }
    return true;
}

namespace detail {

/// Alt_3 as the three cyclic assignments (a; b, c) of a triple.
constexpr int kCyclic[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};

}  // namespace detail

/// Bullet 2: sum over Alt_3 of kL_g(v_b, v_c)(v_a - ^g v_a) = 0 in S_k(V).
template <Field K>
bool check_condition2(K k, const KappaParam<K>& kp, KappaWitness* w = nullptr) {
    std::size_t nv = kp.rep.dim_V, ng = kp.rep.group.order;
    for (std::size_t g = 0; g < ng; ++g) {
        const auto& act = kp.rep.mat(GIdx(g));
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = 0; j < nv; ++j)
                for (std::size_t l = 0; l < nv; ++l) {
                    std::size_t tri[3] = {i, j, l};
                    // symmetric square coordinates, (a <= b) flattened a*nv+b
                    std::vector<typename K::Elem> sym(nv * nv, k.zero());
                    for (const auto& cyc : detail::kCyclic) {
                        std::size_t a = tri[cyc[0]], b = tri[cyc[1]], c = tri[cyc[2]];
                        const auto& lv = kp.kL[g][b * nv + c];
                        // (v_a - ^g v_a) as a vector
                        for (std::size_t u = 0; u < nv; ++u) {
                            auto second = u == a ? k.sub(k.one(), act(u, a)) : k.neg(act(u, a));
                            if (k.is_zero(second)) continue;
                            for (std::size_t t = 0; t < nv; ++t) {
                                if (k.is_zero(lv[t])) continue;
                                std::size_t p = std::min(t, u), qq = std::max(t, u);
                                sym[p * nv + qq] = k.add(sym[p * nv + qq], k.mul(lv[t], second));
                            }
                        }
                    }
                    for (const auto& c : sym)
                        if (!k.is_zero(c)) {
                            if (w) *w = {GIdx(g), 0, i, j, l};
                            return false;
                        }
                }
    }
    return true;
}

/// Bullet 3: the kL composed with kL double sum equals
/// factor * sum of kC_g(v_b, v_c)(v_a - ^g v_a); the paper factor is 2.
template <Field K>
bool check_condition3(K k, const KappaParam<K>& kp, KappaWitness* w = nullptr,
                      std::int64_t rhs_factor = 2) {
    std::size_t nv = kp.rep.dim_V, ng = kp.rep.group.order;
    const auto factor = k.from_int(rhs_factor);
    for (std::size_t g = 0; g < ng; ++g) {
        const auto& actg = kp.rep.mat(GIdx(g));
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = 0; j < nv; ++j)
                for (std::size_t l = 0; l < nv; ++l) {
                    std::size_t tri[3] = {i, j, l};
                    std::vector<typename K::Elem> lhs(nv, k.zero()), rhs(nv, k.zero());
                    for (const auto& cyc : detail::kCyclic) {
                        std::size_t a = tri[cyc[0]], b = tri[cyc[1]], c = tri[cyc[2]];
                        for (std::size_t h = 0; h < ng; ++h) {
                            GIdx outer = kp.rep.group.mul(GIdx(g), kp.rep.group.inv(GIdx(h)));
                            const auto& acth = kp.rep.mat(GIdx(h));
                            // v_a + ^h v_a
                            std::vector<typename K::Elem> arg(nv, k.zero());
                            for (std::size_t u = 0; u < nv; ++u)
                                arg[u] = u == a ? k.add(k.one(), acth(u, a)) : acth(u, a);
                            auto inner = kp.kL[GIdx(h)][b * nv + c];
                            auto val = kp.kL_at(k, outer, arg, inner);
                            for (std::size_t u = 0; u < nv; ++u) lhs[u] = k.add(lhs[u], val[u]);
                        }
                        const auto& kc = kp.kC[g](b, c);
                        if (!k.is_zero(kc))
                            for (std::size_t u = 0; u < nv; ++u) {
                                auto second =
                                    u == a ? k.sub(k.one(), actg(u, a)) : k.neg(actg(u, a));
                                rhs[u] = k.add(rhs[u], k.mul(k.mul(factor, kc), second));
                            }
                    }
                    for (std::size_t u = 0; u < nv; ++u)
                        if (!k.eq(lhs[u], rhs[u])) {
                            if (w) *w = {GIdx(g), 0, i, j, l};
                            return false;
                        }
                }
    }
    return true;
}

/// Bullet 4: the kC composed with kL double sum vanishes.
template <Field K>
bool check_condition4(K k, const KappaParam<K>& kp, KappaWitness* w = nullptr) {
    std::size_t nv = kp.rep.dim_V, ng = kp.rep.group.order;
    for (std::size_t g = 0; g < ng; ++g)
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = 0; j < nv; ++j)
                for (std::size_t l = 0; l < nv; ++l) {
                    std::size_t tri[3] = {i, j, l};
                    auto tot = k.zero();
                    for (const auto& cyc : detail::kCyclic) {
                        std::size_t a = tri[cyc[0]], b = tri[cyc[1]], c = tri[cyc[2]];
                        for (std::size_t h = 0; h < ng; ++h) {
                            GIdx outer = kp.rep.group.mul(GIdx(g), kp.rep.group.inv(GIdx(h)));
                            const auto& acth = kp.rep.mat(GIdx(h));
                            std::vector<typename K::Elem> arg(nv, k.zero());
                            for (std::size_t u = 0; u < nv; ++u)
                                arg[u] = u == a ? k.add(k.one(), acth(u, a)) : acth(u, a);
                            auto inner = kp.kL[GIdx(h)][b * nv + c];
                            tot = k.add(tot, kp.kC_at(k, outer, arg, inner));
                        }
                    }
                    if (!k.is_zero(tot)) {
                        if (w) *w = {GIdx(g), 0, i, j, l};
                        return false;
                    }
                }
    return true;
}

/// Both sides of bullet 3 for one (g, basis triple): the kL-composition
/// double sum and the kC sum WITHOUT the factor 2 (the caller applies it).
template <Field K>
std::pair<std::vector<typename K::Elem>, std::vector<typename K::Elem>> condition3_sides(
    K k, const KappaParam<K>& kp, GIdx g, std::size_t i, std::size_t j, std::size_t l) {
    std::size_t nv = kp.rep.dim_V, ng = kp.rep.group.order;
    std::size_t tri[3] = {i, j, l};
    std::vector<typename K::Elem> lhs(nv, k.zero()), rhs_core(nv, k.zero());
    const auto& actg = kp.rep.mat(g);
    for (const auto& cyc : detail::kCyclic) {
        std::size_t a = tri[cyc[0]], b = tri[cyc[1]], c = tri[cyc[2]];
        for (std::size_t h = 0; h < ng; ++h) {
            GIdx outer = kp.rep.group.mul(g, kp.rep.group.inv(GIdx(h)));
            const auto& acth = kp.rep.mat(GIdx(h));
            std::vector<typename K::Elem> arg(nv, k.zero());
            for (std::size_t u = 0; u < nv; ++u)
                arg[u] = u == a ? k.add(k.one(), acth(u, a)) : acth(u, a);
            auto val = kp.kL_at(k, outer, arg, kp.kL[GIdx(h)][b * nv + c]);
            for (std::size_t u = 0; u < nv; ++u) lhs[u] = k.add(lhs[u], val[u]);
        }
        const auto& kc = kp.kC[g](b, c);
        if (!k.is_zero(kc))
            for (std::size_t u = 0; u < nv; ++u) {
                auto second = u == a ? k.sub(k.one(), actg(u, a)) : k.neg(actg(u, a));
                rhs_core[u] = k.add(rhs_core[u], k.mul(kc, second));
            }
    }
    return {lhs, rhs_core};
}

struct KappaVerdict {
    bool pbw = false;
    int failed_bullet = 0;  // 1..4; 0 when PBW
    KappaWitness witness;
};

/// The Proposition's four conditions, in order, first failure wins.
template <Field K>
KappaVerdict kappa_verdict(K k, const KappaParam<K>& kp) {
    if (k.characteristic() == 2) throw CharTwo("kappa conditions assume characteristic != 2");
    if (auto why = kappa_alternating_violation(k, kp)) throw std::invalid_argument(*why);
    KappaVerdict v;
    KappaWitness w;
    if (!check_invariance(k, kp, &w)) {
        v.failed_bullet = 1;
        v.witness = w;
        return v;
    }
    if (!check_condition2(k, kp, &w)) {
        v.failed_bullet = 2;
        v.witness = w;
        return v;
    }
    if (!check_condition3(k, kp, &w)) {
        v.failed_bullet = 3;
        v.witness = w;
        return v;
    }
    if (!check_condition4(k, kp, &w)) {
        v.failed_bullet = 4;
        v.witness = w;
        return v;
    }
    v.pbw = true;
    return v;
}

/// Corollary for kL = 0: invariance plus the single Alt_3 condition
/// 0 = sum kappa_g(v_b (x) v_c)(^g v_a - v_a).
template <Field K>
KappaVerdict corollary_verdict(K k, const KappaParam<K>& kp) {
    if (k.characteristic() == 2) throw CharTwo("kappa conditions assume characteristic != 2");
    if (!kp.kL_is_zero(k)) throw NotConstantKappa("corollary applies only when kL = 0");
    KappaVerdict v;
    KappaWitness w;
    if (!check_invariance(k, kp, &w)) {
        v.failed_bullet = 1;
        v.witness = w;
        return v;
    }
    std::size_t nv = kp.rep.dim_V, ng = kp.rep.group.order;
    for (std::size_t g = 0; g < ng; ++g) {
        const auto& act = kp.rep.mat(GIdx(g));
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = 0; j < nv; ++j)
                for (std::size_t l = 0; l < nv; ++l) {
                    std::size_t tri[3] = {i, j, l};
                    std::vector<typename K::Elem> tot(nv, k.zero());
                    for (const auto& cyc : detail::kCyclic) {
                        std::size_t a = tri[cyc[0]], b = tri[cyc[1]], c = tri[cyc[2]];
                        const auto& kc = kp.kC[g](b, c);
                        if (k.is_zero(kc)) continue;
                        for (std::size_t u = 0; u < nv; ++u) {
                            // ^g v_a - v_a
                            auto second = u == a ? k.sub(act(u, a), k.one()) : act(u, a);
                            tot[u] = k.add(tot[u], k.mul(kc, second));
                        }
                    }
                    for (std::size_t u = 0; u < nv; ++u)
                        if (!k.is_zero(tot[u])) {
                            v.failed_bullet = 3;
                            v.witness = {GIdx(g), 0, i, j, l};
                            return v;
                        }
                }
    }
    v.pbw = true;
    return v;
}

/// Bridge to the Theorem: R' = span{v_i v_j - v_j v_i},
/// alpha(v_i ^ v_j) = sum_g kL_g(v_i,v_j) | g, beta(v_i ^ v_j) = sum_g kC_g(v_i,v_j) g.
template <Field K>
FilteredQuadraticPresentation<K> to_presentation(K k, const KappaParam<K>& kp) {
    KappaWitness w;
    if (!check_invariance(k, kp, &w))
        throw NotBimodule("kappa is not G-invariant; alpha/beta would not be equivariant");
    std::size_t nv = kp.rep.dim_V, ng = kp.rep.group.order;
    Matrix<K> rp(k, 0, nv * nv);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = i + 1; j < nv; ++j) {
            std::vector<typename K::Elem> v(nv * nv, k.zero());
            v[i * nv + j] = k.one();
            v[j * nv + i] = k.neg(k.one());
            rp.append_row(v);
            pairs.emplace_back(i, j);
        }
    Matrix<K> alpha(k, pairs.size(), nv * ng), beta(k, pairs.size(), ng);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [i, j] = pairs[r];
        for (std::size_t g = 0; g < ng; ++g) {
            beta(r, g) = kp.kC[g](i, j);
            for (std::size_t a = 0; a < nv; ++a) alpha(r, a * ng + g) = kp.kL[g][i * nv + j][a];
        }
    }
    HomQuadraticPresentation<K> hom{kp.rep, Subspace<K>::span(rp)};
    return {hom, std::move(alpha), std::move(beta)};
}

/// Defining relations of H_kappa for the rewriting/span oracle.
template <Field K>
std::vector<SkewElement<K>> kappa_relations(const SkewContext<K>& ctx, const KappaParam<K>& kp) {
    const K k = ctx.field();
    std::size_t nv = ctx.dim_V(), ng = ctx.group().order;
    GIdx e = ctx.group().identity;
    std::vector<SkewElement<K>> out;
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = i + 1; j < nv; ++j) {
            SkewElement<K> p;
            add_term(k, p, SkewMonomial{{std::uint8_t(i), std::uint8_t(j)}, e}, k.one());
            add_term(k, p, SkewMonomial{{std::uint8_t(j), std::uint8_t(i)}, e}, k.neg(k.one()));
            for (std::size_t g = 0; g < ng; ++g) {
                add_term(k, p, SkewMonomial{{}, GIdx(g)}, k.neg(kp.kC[g](i, j)));
                for (std::size_t a = 0; a < nv; ++a)
                    add_term(k, p, SkewMonomial{{std::uint8_t(a)}, GIdx(g)},
                             k.neg(kp.kL[g][i * nv + j][a]));
            }
            out.push_back(std::move(p));
        }
    return out;
}

}  // namespace pbwlab
