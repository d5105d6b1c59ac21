#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbwlab/graded_algebra.hpp"
#include "pbwlab/presentation.hpp"

namespace pbwlab {

/// A (kG)^e-free resolution of kG truncated at a homological cap:
/// C_i = kG (x) C_i' (x) kG with G-graded generator spaces and differentials
/// recorded on generators as sums of (left kG unit, target generator,
/// right kG unit) terms.
template <Field K>
struct GroupResolution {
    using Elem = typename K::Elem;

    struct Term {
        GIdx gl;
        std::size_t target;
        GIdx gr;
        Elem coeff;
    };

    FiniteGroup group;
    std::vector<std::vector<GIdx>> gen_gdeg;          // [i][gen] = G-degree
    std::vector<std::vector<std::vector<Term>>> diff;  // [i][gen] = terms in C_{i-1}

    std::size_t length() const { return gen_gdeg.empty() ? 0 : gen_gdeg.size() - 1; }
    std::size_t rank(std::size_t i) const { return gen_gdeg[i].size(); }
};

/// The bar resolution of kG: C_i' = kG^{(x)i}.
template <Field K>
GroupResolution<K> bar_resolution_kG(K k, const FiniteGroup& g, std::size_t len) {
    GroupResolution<K> C;
    C.group = g;
    const std::size_t ng = g.order;
    C.gen_gdeg.resize(len + 1);
    C.diff.resize(len + 1);
    std::vector<std::size_t> pw(len + 1, 1);
    for (std::size_t i = 1; i <= len; ++i) pw[i] = pw[i - 1] * ng;

    auto tuple_of = [&](std::size_t i, std::size_t idx) {
        std::vector<GIdx> t(i);
        for (std::size_t s = i; s-- > 0;) {
            t[s] = GIdx(idx % ng);
            idx /= ng;
        }
        return t;
    };
    auto index_of = [&](const std::vector<GIdx>& t) {
        std::size_t idx = 0;
        for (auto x : t) idx = idx * ng + x;
        return idx;
    };

    for (std::size_t i = 0; i <= len; ++i) {
        C.gen_gdeg[i].resize(pw[i]);
        C.diff[i].resize(pw[i]);
        for (std::size_t idx = 0; idx < pw[i]; ++idx) {
            auto t = tuple_of(i, idx);
            GIdx deg = g.identity;
            for (auto x : t) deg = g.mul(deg, x);
            C.gen_gdeg[i][idx] = deg;
            if (i == 0) continue;
            auto& terms = C.diff[i][idx];
            // first face: g1 moves into the left kG factor
            {
                std::vector<GIdx> rest(t.begin() + 1, t.end());
                terms.push_back({t[0], index_of(rest), g.identity, k.one()});
            }
            // inner faces with alternating signs
            auto sign = k.neg(k.one());
            for (std::size_t s = 0; s + 1 < i; ++s) {
                auto u = t;
                u[s] = g.mul(t[s], t[s + 1]);
                u.erase(u.begin() + s + 1);
                terms.push_back({g.identity, index_of(u), g.identity, sign});
                sign = k.neg(sign);
            }
            // last face: g_i moves into the right kG factor
            {
                std::vector<GIdx> rest(t.begin(), t.end() - 1);
                terms.push_back({g.identity, index_of(rest), t[i - 1], sign});
            }
        }
    }
    return C;
}

/// The length-len front of the 2-periodic resolution of a cyclic group of
/// prime order: ... -> kG(x)kG -v.-> kG(x)kG -u.-> kG(x)kG -> kG -> 0 with
/// u = g|1 - 1|g and v = sum g^a | g^b over a+b = p-1, and the shifted
/// Yetter-Drinfeld grading that makes the differentials grade-preserving.
template <Field K>
GroupResolution<K> periodic_resolution_cyclic(K k, std::size_t p, std::size_t len) {
    if (!is_prime_u32(std::uint32_t(p))) throw std::invalid_argument("p must be prime");
    GroupResolution<K> C;
    C.group = FiniteGroup::cyclic(p);
    C.gen_gdeg.resize(len + 1);
    C.diff.resize(len + 1);
    for (std::size_t i = 0; i <= len; ++i) {
        // even degrees graded as usual, odd degrees shifted by g
        C.gen_gdeg[i] = {i % 2 == 0 ? GIdx(0) : GIdx(1)};
        C.diff[i].resize(1);
        if (i == 0) continue;
        auto& terms = C.diff[i][0];
        if (i % 2 == 1) {
            // u. : g|1 - 1|g
            terms.push_back({GIdx(1), 0, GIdx(0), k.one()});
            terms.push_back({GIdx(0), 0, GIdx(1), k.neg(k.one())});
        } else {
            // v. : sum over a+b = p-1
            for (std::size_t a = 0; a < p; ++a)
                terms.push_back({GIdx(a), 0, GIdx(p - 1 - a), k.one()});
        }
    }
    return C;
}

/// d^2 = 0 as (kG)^e-module maps, checked symbolically on generators.
template <Field K>
bool group_resolution_d2_zero(K k, const GroupResolution<K>& C) {
    const auto& g = C.group;
    for (std::size_t i = 2; i < C.diff.size(); ++i)
        for (std::size_t j = 0; j < C.rank(i); ++j) {
            std::map<std::tuple<GIdx, std::size_t, GIdx>, typename K::Elem> acc;
            for (const auto& t1 : C.diff[i][j])
                for (const auto& t2 : C.diff[i - 1][t1.target]) {
                    auto key = std::make_tuple(g.mul(t1.gl, t2.gl), t2.target,
                                               g.mul(t2.gr, t1.gr));
                    auto it = acc.find(key);
                    auto add = k.mul(t1.coeff, t2.coeff);
                    if (it == acc.end())
                        acc.emplace(key, add);
                    else
                        it->second = k.add(it->second, add);
                }
            for (const auto& [key, c] : acc)
                if (!k.is_zero(c)) return false;
        }
    return true;
}

/// The differentials preserve the G-grading: every term gl (x) x_t (x) gr
/// of d(x_j) satisfies gl * deg(x_t) * gr = deg(x_j).
template <Field K>
bool group_resolution_grading_ok(const GroupResolution<K>& C) {
    const auto& g = C.group;
    for (std::size_t i = 1; i < C.diff.size(); ++i)
        for (std::size_t j = 0; j < C.rank(i); ++j)
            for (const auto& t : C.diff[i][j]) {
                GIdx got = g.mul(g.mul(t.gl, C.gen_gdeg[i - 1][t.target]), t.gr);
                if (got != C.gen_gdeg[i][j]) return false;
            }
    return true;
}

/// YD grading of C_i as a k-space (basis gl (x) x_j (x) gr, conjugation action).
template <Field K>
YDGrading<K> group_resolution_yd(K k, const GroupResolution<K>& C, std::size_t i) {
    const auto& g = C.group;
    const std::size_t ng = g.order, r = C.rank(i);
    YDGrading<K> yd;
    yd.group = &C.group;
    yd.space_dim = ng * r * ng;
    auto at = [&](GIdx a, std::size_t j, GIdx b) { return (a * r + j) * ng + b; };
    yd.component.resize(yd.space_dim);
    for (std::size_t a = 0; a < ng; ++a)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t b = 0; b < ng; ++b)
                yd.component[at(GIdx(a), j, GIdx(b))] =
                    g.mul(g.mul(GIdx(a), C.gen_gdeg[i][j]), GIdx(b));
    for (std::size_t h = 0; h < ng; ++h) {
        Matrix<K> m(k, yd.space_dim, yd.space_dim);
        for (std::size_t a = 0; a < ng; ++a)
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t b = 0; b < ng; ++b)
                    m(at(g.mul(GIdx(h), GIdx(a)), j, g.mul(GIdx(b), g.inv(GIdx(h)))),
                      at(GIdx(a), j, GIdx(b))) = k.one();
        yd.action.push_back(std::move(m));
    }
    return yd;
}

/// k-linear exactness of the augmented complex ... -> C_1 -> C_0 -> kG -> 0
/// in homological degrees 1..cap (C_i is finite dimensional here).
template <Field K>
bool group_resolution_exact(K k, const GroupResolution<K>& C, std::size_t cap) {
    const auto& g = C.group;
    const std::size_t ng = g.order;
    auto dim = [&](std::size_t i) { return ng * C.rank(i) * ng; };
    auto at = [&](std::size_t i, GIdx a, std::size_t j, GIdx b) {
        return (a * C.rank(i) + j) * ng + b;
    };
    // differential matrices as k-maps
    auto dmat = [&](std::size_t i) {
        Matrix<K> m(k, dim(i - 1), dim(i));
        for (std::size_t a = 0; a < ng; ++a)
            for (std::size_t j = 0; j < C.rank(i); ++j)
                for (std::size_t b = 0; b < ng; ++b) {
                    std::size_t col = at(i, GIdx(a), j, GIdx(b));
                    for (const auto& t : C.diff[i][j]) {
                        std::size_t row =
                            at(i - 1, g.mul(GIdx(a), t.gl), t.target, g.mul(t.gr, GIdx(b)));
                        m(row, col) = k.add(m(row, col), t.coeff);
                    }
                }
        return m;
    };
    // augmentation C_0 = kG^{r0 blocks} -> kG: left*right multiplication
    Matrix<K> aug(k, ng, dim(0));
    for (std::size_t a = 0; a < ng; ++a)
        for (std::size_t j = 0; j < C.rank(0); ++j)
            for (std::size_t b = 0; b < ng; ++b)
                aug(g.mul(GIdx(a), GIdx(b)), at(0, GIdx(a), j, GIdx(b))) = k.one();
    if (rank(aug) != ng) return false;
    std::size_t prev_rank = rank(aug);
    for (std::size_t i = 1; i <= cap && i < C.diff.size(); ++i) {
        auto m = dmat(i);
        std::size_t r = rank(m);
        // exact at i-1: ker(previous map) = im(this map)
        if (dim(i - 1) - prev_rank != r) return false;
        prev_rank = r;
    }
    return true;
}

/// Koszul resolution data for S: D_j = S (x) K^j(S) (x) S with the bar
/// differential's surviving first/last terms:
///   d(1 (x) y (x) 1) = sum_l v_l (x) tail_l(y) (x) 1
///                    + (-1)^j sum_l 1 (x) head_l(y) (x) v_l.
template <Field K>
struct KoszulResolutionData {
    std::vector<Subspace<K>> Kn;            // components K^0..K^len
    std::vector<std::vector<Matrix<K>>> tails;  // [j][l]: K^j -> K^{j-1}, first letter l
    std::vector<std::vector<Matrix<K>>> heads;  // [j][l]: K^j -> K^{j-1}, last letter l
    std::vector<std::vector<Matrix<K>>> action; // [j][g]: G-action on K^j

    std::size_t length() const { return Kn.empty() ? 0 : Kn.size() - 1; }
    std::size_t rank(std::size_t j) const { return Kn[j].dim(); }
};

template <Field K>
KoszulResolutionData<K> koszul_resolution(const HomQuadraticPresentation<K>& h, std::size_t len,
                                          const KoszulReport* certificate,
                                          bool assert_koszul = false) {
    if (!assert_koszul && (!certificate || !certificate->ok))
        throw NotKoszulCertified("koszul_resolution needs a koszul_check certificate");
    const K k = h.Rprime.field();
    const std::size_t nv = h.rep.dim_V;
    KoszulResolutionData<K> D;
    for (std::size_t n = 0; n <= len; ++n) D.Kn.push_back(koszul_component(h, n));
    D.tails.resize(len + 1);
    D.heads.resize(len + 1);
    D.action.resize(len + 1);
    for (std::size_t n = 1; n <= len; ++n) {
        std::size_t pow_rest = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) pow_rest *= nv;
        D.tails[n].assign(nv, Matrix<K>(k, D.Kn[n].dim(), D.Kn[n - 1].dim()));
        D.heads[n].assign(nv, Matrix<K>(k, D.Kn[n].dim(), D.Kn[n - 1].dim()));
        for (std::size_t j = 0; j < D.Kn[n].dim(); ++j) {
            auto row = D.Kn[n].basis().row(j);
            for (std::size_t l = 0; l < nv; ++l) {
                std::vector<typename K::Elem> tail(pow_rest, k.zero()), head(pow_rest, k.zero());
                for (std::size_t r = 0; r < pow_rest; ++r) {
                    tail[r] = row[l * pow_rest + r];
                    head[r] = row[r * nv + l];
                }
                if (n == 1) {
                    D.tails[n][l](j, 0) = tail[0];
                    D.heads[n][l](j, 0) = head[0];
                    continue;
                }
                auto tc = D.Kn[n - 1].coordinates_of(tail);
                auto hc = D.Kn[n - 1].coordinates_of(head);
                if (!tc || !hc) throw std::logic_error("K^n not nested in V-tensor slices");
                for (std::size_t t = 0; t < tc->size(); ++t) {
                    D.tails[n][l](j, t) = (*tc)[t];
                    D.heads[n][l](j, t) = (*hc)[t];
                }
            }
        }
    }
    for (std::size_t n = 0; n <= len; ++n) {
        for (std::size_t g = 0; g < h.rep.group.order; ++g) {
            // G acts letterwise on V^{(x)n}, restricted to K^n
            std::size_t dim = 1;
            for (std::size_t i = 0; i < n; ++i) dim *= nv;
            Matrix<K> act(k, D.Kn[n].dim(), D.Kn[n].dim());
            auto big = tensor_power_action(h.rep, GIdx(g), n);
            for (std::size_t j = 0; j < D.Kn[n].dim(); ++j) {
                auto img = big.apply(D.Kn[n].basis().row(j));
                auto coords = D.Kn[n].coordinates_of(img);
                if (!coords) throw std::logic_error("K^n not G-stable");
                for (std::size_t t = 0; t < coords->size(); ++t) act(t, j) = (*coords)[t];
            }
            D.action[n].push_back(std::move(act));
        }
    }
    return D;
}

/// Equivariance of the Koszul differentials on generators:
/// d(1 (x) ^g y (x) 1) = ^g d(1 (x) y (x) 1) inside
/// V (x) K^{n-1} (+) K^{n-1} (x) V coordinates.
template <Field K>
bool koszul_resolution_equivariant(K k, const HomQuadraticPresentation<K>& h,
                                   const KoszulResolutionData<K>& D) {
    const std::size_t nv = h.rep.dim_V, ng = h.rep.group.order;
    for (std::size_t n = 1; n <= D.length(); ++n) {
        const std::size_t r = D.rank(n), r1 = D.rank(n - 1);
        for (std::size_t g = 0; g < ng; ++g) {
            const auto& actn = D.action[n][g];
            const auto& actn1 = D.action[n - 1][g];
            const auto& onV = h.rep.mat(GIdx(g));
            for (std::size_t j = 0; j < r; ++j) {
                // d(^g y_j): tails/heads of the acted basis vector
                // ^g y_j = sum_t actn(t, j) y_t
                for (std::size_t l = 0; l < nv; ++l)
                    for (std::size_t t1 = 0; t1 < r1; ++t1) {
                        // left family coefficient of v_l (x) y'_{t1}
                        typename K::Elem lhs = k.zero(), rhs = k.zero();
                        for (std::size_t t = 0; t < r; ++t)
                            lhs = k.add(lhs, k.mul(actn(t, j), D.tails[n][l](t, t1)));
                        // ^g (v_m (x) tail_m(y_j)) = (^g v_m) (x) (^g tail_m)
                        for (std::size_t m = 0; m < nv; ++m) {
                            if (k.is_zero(onV(l, m))) continue;
                            for (std::size_t t0 = 0; t0 < r1; ++t0)
                                rhs = k.add(rhs, k.mul(onV(l, m),
                                                       k.mul(D.tails[n][m](j, t0), actn1(t1, t0))));
                        }
                        if (!k.eq(lhs, rhs)) return false;
                        // right family
                        lhs = k.zero();
                        rhs = k.zero();
                        for (std::size_t t = 0; t < r; ++t)
                            lhs = k.add(lhs, k.mul(actn(t, j), D.heads[n][l](t, t1)));
                        for (std::size_t m = 0; m < nv; ++m) {
                            if (k.is_zero(onV(l, m))) continue;
                            for (std::size_t t0 = 0; t0 < r1; ++t0)
                                rhs = k.add(rhs, k.mul(onV(l, m),
                                                       k.mul(D.heads[n][m](j, t0), actn1(t1, t0))));
                        }
                        if (!k.eq(lhs, rhs)) return false;
                    }
            }
        }
    }
    return true;
}

}  // namespace pbwlab
