#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pbwlab/graded_algebra.hpp"
#include "pbwlab/ideal_span.hpp"
#include "pbwlab/skew.hpp"

namespace pbwlab {

struct ConditionIFails : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotBimodule : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInducedOverGroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotKoszulCertified : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// S = T_k(V)/<R'> with a group acting; R' must be stable under the
/// diagonal action so that R = R' (x) kG is a kG-bimodule.
template <Field K>
struct HomQuadraticPresentation {
    Representation<K> rep;
    Subspace<K> Rprime;  // subspace of V (x) V
};

template <Field K>
bool rprime_is_g_stable(const HomQuadraticPresentation<K>& h) {
    for (std::size_t g = 0; g < h.rep.group.order; ++g) {
        auto m = tensor_power_action(h.rep, GIdx(g), 2);
        if (!h.Rprime.contains(apply_map(m, h.Rprime))) return false;
    }
    return true;
}

/// Filtered relations P = { x - alpha(x) - beta(x) : x in R' (x) kG },
/// with alpha, beta recorded on the R' basis:
///   alpha row i = alpha(R'_i) in V (x) kG (coords v*|G| + g),
///   beta  row i = beta(R'_i) in kG.
template <Field K>
struct FilteredQuadraticPresentation {
    HomQuadraticPresentation<K> hom;
    Matrix<K> alpha;
    Matrix<K> beta;
};

/// K^n(S) as a subspace of V^{(x)n}.
template <Field K>
Subspace<K> koszul_component(const HomQuadraticPresentation<K>& h, std::size_t n) {
    const K k = h.Rprime.field();
    const std::size_t nv = h.rep.dim_V;
    if (n == 0) return Subspace<K>::full(k, 1);
    if (n == 1) return Subspace<K>::full(k, nv);
    if (n == 2) return h.Rprime;
    std::size_t dim = 1;
    for (std::size_t i = 0; i < n; ++i) dim *= nv;
    std::optional<Subspace<K>> acc;
    std::size_t pow_j = 1;  // nv^j
    for (std::size_t j = 0; j + 2 <= n; ++j, pow_j *= nv) {
        std::size_t pow_rest = dim / (pow_j * nv * nv);
        // span of u (x) r (x) w over words u, w and R' basis rows r
        Matrix<K> gen(k, 0, dim);
        for (std::size_t u = 0; u < pow_j; ++u)
            for (std::size_t ri = 0; ri < h.Rprime.dim(); ++ri)
                for (std::size_t w = 0; w < pow_rest; ++w) {
                    std::vector<typename K::Elem> v(dim, k.zero());
                    for (std::size_t c = 0; c < nv * nv; ++c) {
                        const auto& x = h.Rprime.basis()(ri, c);
                        if (k.is_zero(x)) continue;
                        v[(u * nv * nv + c) * pow_rest + w] = x;
                    }
                    gen.append_row(v);
                }
        auto s = Subspace<K>::span(gen);
        acc = acc ? acc->intersect(s) : s;
    }
    return *acc;
}

/// The overlap space W = (R' (x) V)  intersect  (V (x) R') inside V^{(x)3};
/// the kG factor of (R (x)_B U) cap (U (x)_B R) is carried implicitly.
template <Field K>
Subspace<K> overlap_space(const FilteredQuadraticPresentation<K>& pres) {
    return koszul_component(pres.hom, 3);
}

struct KoszulReport {
    bool ok = false;
    std::size_t homological_cap = 0;
    std::size_t polydeg_cap = 0;
    // first failure (homological position, polynomial degree), if any
    std::optional<std::pair<std::size_t, std::size_t>> failure;
};

/// Bounded-degree exactness certificate for the one-sided Koszul complex
/// S (x) K^n(S) -> ... -> S -> k -> 0. Not a Koszulity proof: it certifies
/// no homology within the caps.
template <Field K>
KoszulReport koszul_check(const HomQuadraticPresentation<K>& h, std::size_t homological_cap,
                          std::size_t polydeg_cap) {
    const K k = h.Rprime.field();
    const std::size_t nv = h.rep.dim_V;
    KoszulReport rep;
    rep.homological_cap = homological_cap;
    rep.polydeg_cap = polydeg_cap;

    GradedQuotient<K> S(k, h.rep, h.Rprime, polydeg_cap);
    std::vector<Subspace<K>> Kn;
    for (std::size_t n = 0; n <= homological_cap + 1; ++n) Kn.push_back(koszul_component(h, n));

    // tails[n][l] = coordinates in K^{n-1} of the first-letter-l component
    // of each K^n basis vector
    std::vector<std::vector<Matrix<K>>> tails(homological_cap + 2);
    for (std::size_t n = 1; n <= homological_cap + 1; ++n) {
        std::size_t pow_rest = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) pow_rest *= nv;
        tails[n].assign(nv, Matrix<K>(k, Kn[n].dim(), Kn[n - 1].dim()));
        for (std::size_t j = 0; j < Kn[n].dim(); ++j) {
            auto row = Kn[n].basis().row(j);
            for (std::size_t l = 0; l < nv; ++l) {
                std::vector<typename K::Elem> tail(pow_rest, k.zero());
                for (std::size_t r = 0; r < pow_rest; ++r) tail[r] = row[l * pow_rest + r];
                if (n == 1) {
                    // K^0 = k; the tail is the scalar itself
                    tails[n][l](j, 0) = tail[0];
                    continue;
                }
                auto coords = Kn[n - 1].coordinates_of(tail);
                if (!coords) throw std::logic_error("K^n not nested in V (x) K^{n-1}");
                for (std::size_t t = 0; t < coords->size(); ++t) tails[n][l](j, t) = (*coords)[t];
            }
        }
    }

    // differential matrices per polynomial degree d: (S_{d-n} (x) K^n) -> (S_{d-n+1} (x) K^{n-1})
    auto diff = [&](std::size_t n, std::size_t d) -> Matrix<K> {
        const std::size_t sd = S.dim(d - n), sd1 = S.dim(d - n + 1);
        Matrix<K> m(k, sd1 * Kn[n - 1].dim(), sd * Kn[n].dim());
        for (std::size_t si = 0; si < sd; ++si)
            for (std::size_t kj = 0; kj < Kn[n].dim(); ++kj) {
                std::size_t col = si * Kn[n].dim() + kj;
                for (std::size_t l = 0; l < nv; ++l) {
                    // s * v_l in S_{d-n+1}
                    // letter l is basis element l of S_1
                    const auto& prod = S.mul_basis(d - n, si, 1, l);
                    for (std::size_t u = 0; u < sd1; ++u) {
                        if (k.is_zero(prod[u])) continue;
                        for (std::size_t t = 0; t < Kn[n - 1].dim(); ++t) {
                            const auto& c = tails[n][l](kj, t);
                            if (k.is_zero(c)) continue;
                            std::size_t row = u * Kn[n - 1].dim() + t;
                            m(row, col) = k.add(m(row, col), k.mul(prod[u], c));
                        }
                    }
                }
            }
        return m;
    };

    for (std::size_t d = 0; d <= polydeg_cap; ++d) {
        // exactness at position 0 of the augmented complex: S_d = im(S (x) V) for d >= 1
        if (d >= 1) {
            auto m1 = diff(1, d);
            if (rank(m1) != S.dim(d)) {
                rep.failure = {0, d};
                return rep;
            }
        }
        for (std::size_t n = 1; n <= homological_cap; ++n) {
            if (d < n) break;
            auto mn = diff(n, d);
            std::size_t ker = mn.cols() - rank(mn);
            std::size_t im = d >= n + 1 || Kn[n + 1].dim() == 0
                                 ? (d >= n + 1 ? rank(diff(n + 1, d)) : 0)
                                 : 0;
            if (d >= n + 1) im = rank(diff(n + 1, d));
            if (ker != im) {
                rep.failure = {n, d};
                return rep;
            }
        }
    }
    rep.ok = true;
    return rep;
}

/// Raw kG-subbimodule of F^2(T) -> (R', alpha, beta). Verifies the bimodule
/// closure, Condition (I), and that pi(rawP) is induced from a G-stable R'.
template <Field K>
FilteredQuadraticPresentation<K> normalize_relations(const SkewContext<K>& ctx,
                                                     const Subspace<K>& rawP) {
    const K k = ctx.field();
    const std::size_t nv = ctx.dim_V(), ng = ctx.group().order;
    MonomialIndexer ix(nv, ng, 2);
    if (rawP.ambient_dim() != ix.dim()) throw AmbientMismatch("rawP must live in F^2(T)");

    // kG-bimodule closure
    for (std::size_t i = 0; i < rawP.dim(); ++i) {
        auto e = from_dense(k, rawP.basis().row(i), ix);
        for (std::size_t g = 0; g < ng; ++g) {
            auto lg = to_dense(k, ctx.multiply(ctx.group_elt(GIdx(g)), e), ix);
            auto rg = to_dense(k, ctx.multiply(e, ctx.group_elt(GIdx(g))), ix);
            if (!rawP.contains(lg) || !rawP.contains(rg))
                throw NotBimodule("rawP is not closed under the kG-bimodule action");
        }
    }

    // Condition (I): rawP cap F^1 = 0
    {
        Matrix<K> f1(k, 0, ix.dim());
        for (std::size_t c = 0; c < ix.dim_filtered(1); ++c) {
            std::vector<typename K::Elem> v(ix.dim(), k.zero());
            v[c] = k.one();
            f1.append_row(v);
        }
        auto meet = rawP.intersect(Subspace<K>::span(f1));
        if (meet.dim() > 0) {
            auto w = from_dense(k, meet.basis().row(0), ix);
            throw ConditionIFails("rawP meets F^1(T): witness " + ctx.to_string(w));
        }
    }

    // R = pi(rawP), then R' = the identity-component section
    const std::size_t amb2 = nv * nv * ng;
    Matrix<K> proj(k, 0, amb2);
    for (std::size_t i = 0; i < rawP.dim(); ++i) {
        auto row = rawP.basis().row(i);
        std::vector<typename K::Elem> v(amb2, k.zero());
        for (std::size_t c = ix.dim_filtered(1); c < ix.dim_filtered(2); ++c)
            v[c - ix.dim_filtered(1)] = row[c];
        proj.append_row(v);
    }
    auto R = Subspace<K>::span(proj);

    Matrix<K> e_section(k, 0, nv * nv);
    {
        // R cap (V (x) V (x) {identity})
        Matrix<K> sel(k, 0, amb2);
        GIdx e = ctx.group().identity;
        for (std::size_t w = 0; w < nv * nv; ++w) {
            std::vector<typename K::Elem> v(amb2, k.zero());
            v[w * ng + e] = k.one();
            sel.append_row(v);
        }
        auto meet = R.intersect(Subspace<K>::span(sel));
        for (std::size_t i = 0; i < meet.dim(); ++i) {
            auto row = meet.basis().row(i);
            std::vector<typename K::Elem> v(nv * nv, k.zero());
            for (std::size_t w = 0; w < nv * nv; ++w) v[w] = row[w * ng + e];
            e_section.append_row(v);
        }
    }
    auto Rprime = Subspace<K>::span(e_section);
    if (R.dim() != Rprime.dim() * ng)
        throw NotInducedOverGroup("pi(rawP) is not R' (x) kG for any R'");

    // alpha, beta: for each R' basis row r, the unique p in rawP with
    // pi(p) = r (x) e carries alpha(r) and beta(r) as its lower parts
    Matrix<K> alpha(k, Rprime.dim(), nv * ng), beta(k, Rprime.dim(), ng);
    for (std::size_t i = 0; i < Rprime.dim(); ++i) {
        std::vector<typename K::Elem> target(ix.dim(), k.zero());
        GIdx e = ctx.group().identity;
        for (std::size_t w = 0; w < nv * nv; ++w)
            target[ix.dim_filtered(1) + w * ng + e] = Rprime.basis()(i, w);
        // solve: combination of rawP basis rows whose degree-2 part is target
        Matrix<K> sys(k, rawP.dim(), ix.dim() - ix.dim_filtered(1));
        for (std::size_t r = 0; r < rawP.dim(); ++r)
            for (std::size_t c = ix.dim_filtered(1); c < ix.dim(); ++c)
                sys(r, c - ix.dim_filtered(1)) = rawP.basis()(r, c);
        // transpose to solve columns
        Matrix<K> syst(k, sys.cols(), sys.rows());
        for (std::size_t r = 0; r < sys.rows(); ++r)
            for (std::size_t c = 0; c < sys.cols(); ++c) syst(c, r) = sys(r, c);
        std::vector<typename K::Elem> rhs(ix.dim() - ix.dim_filtered(1));
        for (std::size_t c = ix.dim_filtered(1); c < ix.dim(); ++c)
            rhs[c - ix.dim_filtered(1)] = target[c];
        auto combo = solve_linear(syst, rhs);
        std::vector<typename K::Elem> p(ix.dim(), k.zero());
        for (std::size_t r = 0; r < rawP.dim(); ++r)
            for (std::size_t c = 0; c < ix.dim(); ++c)
                p[c] = k.add(p[c], k.mul(combo[r], rawP.basis()(r, c)));
        // p = r - alpha(r) - beta(r): degree-1 block carries -alpha, degree-0 -beta
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t g = 0; g < ng; ++g)
                alpha(i, v * ng + g) = k.neg(p[ix.dim_filtered(0) + v * ng + g]);
        for (std::size_t g = 0; g < ng; ++g) beta(i, g) = k.neg(p[g]);
    }

    FilteredQuadraticPresentation<K> out{{ctx.rep(), Rprime}, std::move(alpha), std::move(beta)};
    if (!rprime_is_g_stable(out.hom))
        throw NotBimodule("pi(rawP) identity section is not G-stable");
    return out;
}

/// Generators {r_i - alpha(r_i) - beta(r_i)} of P over the kG-bimodule
/// structure; the full subbimodule is their closure.
template <Field K>
std::vector<SkewElement<K>> relation_generators(const SkewContext<K>& ctx,
                                                const FilteredQuadraticPresentation<K>& pres) {
    const K k = ctx.field();
    const std::size_t nv = ctx.dim_V(), ng = ctx.group().order;
    std::vector<SkewElement<K>> out;
    GIdx e = ctx.group().identity;
    for (std::size_t i = 0; i < pres.hom.Rprime.dim(); ++i) {
        SkewElement<K> p;
        for (std::size_t a = 0; a < nv; ++a)
            for (std::size_t b = 0; b < nv; ++b)
                add_term(k, p, SkewMonomial{{std::uint8_t(a), std::uint8_t(b)}, e},
                         pres.hom.Rprime.basis()(i, a * nv + b));
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t g = 0; g < ng; ++g)
                add_term(k, p, SkewMonomial{{std::uint8_t(v)}, GIdx(g)},
                         k.neg(pres.alpha(i, v * ng + g)));
        for (std::size_t g = 0; g < ng; ++g)
            add_term(k, p, SkewMonomial{{}, GIdx(g)}, k.neg(pres.beta(i, g)));
        out.push_back(std::move(p));
    }
    return out;
}

/// The kG-subbimodule of F^2(T) generated by the relations.
template <Field K>
Subspace<K> bimodule_span(const SkewContext<K>& ctx, const std::vector<SkewElement<K>>& gens) {
    const K k = ctx.field();
    MonomialIndexer ix(ctx.dim_V(), ctx.group().order, 2);
    Matrix<K> rows(k, 0, ix.dim());
    for (const auto& p : gens)
        for (std::size_t gl = 0; gl < ctx.group().order; ++gl)
            for (std::size_t gr = 0; gr < ctx.group().order; ++gr) {
                auto x = ctx.multiply(ctx.group_elt(GIdx(gl)),
                                      ctx.multiply(p, ctx.group_elt(GIdx(gr))));
                rows.append_row(to_dense(k, x, ix));
            }
    return Subspace<K>::span(rows);
}

/// Proposition "PBW generating relations are unique": the bimodules
/// generated by the two relation sets coincide.
template <Field K>
bool uniqueness_check(const SkewContext<K>& ctx, const FilteredQuadraticPresentation<K>& p1,
                      const FilteredQuadraticPresentation<K>& p2) {
    return bimodule_span(ctx, relation_generators(ctx, p1)) ==
           bimodule_span(ctx, relation_generators(ctx, p2));
}

enum class ConditionSign { paper, flipped_ii };  // flipped_ii is a test mutant

struct CheckerVerdict {
    bool pbw = false;
    int failed_condition = 0;          // 1 (=i), 2 (=ii), 3 (=iii); 0 when PBW
    std::size_t witness_index = 0;     // W-basis vector index
    std::string note;
};

/// Theorem conditions (i), (ii), (iii) evaluated on a basis of
/// W = (R' (x) V) cap (V (x) R'); kG-bilinearity reduces the full overlap
/// module W (x) kG to its identity component.
template <Field K>
CheckerVerdict check_conditions(const SkewContext<K>& ctx,
                                const FilteredQuadraticPresentation<K>& pres,
                                const KoszulReport* koszul, bool assert_koszul = false,
                                ConditionSign sign = ConditionSign::paper) {
    if (!assert_koszul && (!koszul || !koszul->ok))
        throw NotKoszulCertified("run koszul_check or assert Koszulity explicitly");
    const K k = ctx.field();
    const std::size_t nv = ctx.dim_V(), ng = ctx.group().order;
    const auto& Rp = pres.hom.Rprime;
    auto W = overlap_space(pres);

    // alpha of an arbitrary R' vector, per group component: A[g] rows index V
    auto alpha_of = [&](const std::vector<typename K::Elem>& r) {
        auto coords = Rp.coordinates_of(r);
        if (!coords) throw std::logic_error("vector outside R'");
        std::vector<std::vector<typename K::Elem>> out(ng,
                                                       std::vector<typename K::Elem>(nv, k.zero()));
        for (std::size_t i = 0; i < coords->size(); ++i) {
            if (k.is_zero((*coords)[i])) continue;
            for (std::size_t v = 0; v < nv; ++v)
                for (std::size_t g = 0; g < ng; ++g)
                    out[g][v] = k.add(out[g][v], k.mul((*coords)[i], pres.alpha(i, v * ng + g)));
        }
        return out;
    };
    auto beta_of = [&](const std::vector<typename K::Elem>& r) {
        auto coords = Rp.coordinates_of(r);
        if (!coords) throw std::logic_error("vector outside R'");
        std::vector<typename K::Elem> out(ng, k.zero());
        for (std::size_t i = 0; i < coords->size(); ++i)
            for (std::size_t g = 0; g < ng; ++g)
                out[g] = k.add(out[g], k.mul((*coords)[i], pres.beta(i, g)));
        return out;
    };

    CheckerVerdict verdict;
    for (std::size_t wi = 0; wi < W.dim(); ++wi) {
        auto w = W.basis().row(wi);  // dense in V^{(x)3}

        // first-two-slots components rho_l (in R') and last-two sigma_f
        std::vector<std::vector<typename K::Elem>> rho(nv), sigma(nv);
        for (std::size_t l = 0; l < nv; ++l) {
            rho[l].assign(nv * nv, k.zero());
            sigma[l].assign(nv * nv, k.zero());
        }
        for (std::size_t a = 0; a < nv; ++a)
            for (std::size_t b = 0; b < nv; ++b)
                for (std::size_t c = 0; c < nv; ++c) {
                    const auto& x = w[(a * nv + b) * nv + c];
                    if (k.is_zero(x)) continue;
                    rho[c][a * nv + b] = k.add(rho[c][a * nv + b], x);
                    sigma[a][b * nv + c] = k.add(sigma[a][b * nv + c], x);
                }

        // L(w) = (alpha (x) id - id (x) alpha)(w) in V (x) V (x) kG
        std::vector<std::vector<typename K::Elem>> L(
            ng, std::vector<typename K::Elem>(nv * nv, k.zero()));
        for (std::size_t l = 0; l < nv; ++l) {
            auto A = alpha_of(rho[l]);
            for (std::size_t g = 0; g < ng; ++g) {
                const auto& act = ctx.rep().mat(GIdx(g));
                for (std::size_t a = 0; a < nv; ++a) {
                    if (k.is_zero(A[g][a])) continue;
                    for (std::size_t m = 0; m < nv; ++m) {
                        if (k.is_zero(act(m, l))) continue;
                        L[g][a * nv + m] = k.add(L[g][a * nv + m], k.mul(A[g][a], act(m, l)));
                    }
                }
            }
        }
        for (std::size_t f = 0; f < nv; ++f) {
            auto A = alpha_of(sigma[f]);
            for (std::size_t g = 0; g < ng; ++g)
                for (std::size_t b = 0; b < nv; ++b)
                    L[g][f * nv + b] = k.sub(L[g][f * nv + b], A[g][b]);
        }

        // Condition (i): every group component of L(w) lies in R'
        for (std::size_t g = 0; g < ng; ++g) {
            if (!Rp.contains(L[g])) {
                verdict.pbw = false;
                verdict.failed_condition = 1;
                verdict.witness_index = wi;
                verdict.note = "image of alpha(x)id - id(x)alpha leaves R at group component " +
                               std::to_string(g);
                return verdict;
            }
        }

        // Condition (ii): alpha(L(w)) = -(beta (x) id - id (x) beta)(w)
        std::vector<std::vector<typename K::Elem>> lhs(ng,
                                                       std::vector<typename K::Elem>(nv, k.zero()));
        for (std::size_t g = 0; g < ng; ++g) {
            auto A = alpha_of(L[g]);
            for (std::size_t h = 0; h < ng; ++h) {
                GIdx hg = ctx.group().mul(GIdx(h), GIdx(g));
                for (std::size_t v = 0; v < nv; ++v) lhs[hg][v] = k.add(lhs[hg][v], A[h][v]);
            }
        }
        std::vector<std::vector<typename K::Elem>> rhs(ng,
                                                       std::vector<typename K::Elem>(nv, k.zero()));
        for (std::size_t l = 0; l < nv; ++l) {
            auto B = beta_of(rho[l]);
            for (std::size_t g = 0; g < ng; ++g) {
                if (k.is_zero(B[g])) continue;
                const auto& act = ctx.rep().mat(GIdx(g));
                for (std::size_t m = 0; m < nv; ++m)
                    rhs[g][m] = k.add(rhs[g][m], k.mul(B[g], act(m, l)));
            }
        }
        for (std::size_t f = 0; f < nv; ++f) {
            auto B = beta_of(sigma[f]);
            for (std::size_t g = 0; g < ng; ++g) rhs[g][f] = k.sub(rhs[g][f], B[g]);
        }
        // paper sign: lhs = -rhs
        for (std::size_t g = 0; g < ng; ++g)
            for (std::size_t v = 0; v < nv; ++v) {
                auto want = sign == ConditionSign::paper ? k.neg(rhs[g][v]) : rhs[g][v];
                if (!k.eq(lhs[g][v], want)) {
                    verdict.pbw = false;
                    verdict.failed_condition = 2;
                    verdict.witness_index = wi;
                    verdict.note = "alpha(alpha(x)id - id(x)alpha) != -(beta(x)id - id(x)beta)";
                    return verdict;
                }
            }

        // Condition (iii): beta(L(w)) = 0
        std::vector<typename K::Elem> tot(ng, k.zero());
        for (std::size_t g = 0; g < ng; ++g) {
            auto B = beta_of(L[g]);
            for (std::size_t h = 0; h < ng; ++h) {
                GIdx hg = ctx.group().mul(GIdx(h), GIdx(g));
                tot[hg] = k.add(tot[hg], B[h]);
            }
        }
        for (std::size_t g = 0; g < ng; ++g)
            if (!k.is_zero(tot[g])) {
                verdict.pbw = false;
                verdict.failed_condition = 3;
                verdict.witness_index = wi;
                verdict.note = "beta(alpha(x)id - id(x)alpha) != 0";
                return verdict;
            }
    }
    verdict.pbw = true;
    return verdict;
}

/// Equivariance of alpha and beta as kG-bimodule maps: conjugation on the
/// source R' matches conjugation on V (x) kG resp. kG.
template <Field K>
bool presentation_equivariant(const SkewContext<K>& ctx,
                              const FilteredQuadraticPresentation<K>& pres) {
    const K k = ctx.field();
    const std::size_t nv = ctx.dim_V(), ng = ctx.group().order;
    const auto& Rp = pres.hom.Rprime;
    const std::size_t r = Rp.dim();

    std::vector<Matrix<K>> src, tgtU, tgtB;
    for (std::size_t h = 0; h < ng; ++h) {
        // source: diagonal action restricted to R', in R'-basis coordinates
        auto m2 = tensor_power_action(ctx.rep(), GIdx(h), 2);
        Matrix<K> s(k, r, r);
        for (std::size_t j = 0; j < r; ++j) {
            auto img = m2.apply(Rp.basis().row(j));
            auto coords = Rp.coordinates_of(img);
            if (!coords) return false;  // R' not stable
            for (std::size_t i = 0; i < r; ++i) s(i, j) = (*coords)[i];
        }
        src.push_back(std::move(s));
        // target U = V (x) kG with h (v|g) h^-1 = (^h v | h g h^-1)
        Matrix<K> tu(k, nv * ng, nv * ng);
        const auto& act = ctx.rep().mat(GIdx(h));
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t g = 0; g < ng; ++g) {
                GIdx cg = ctx.group().conj(GIdx(h), GIdx(g));
                for (std::size_t w = 0; w < nv; ++w)
                    if (!k.is_zero(act(w, v))) tu(w * ng + cg, v * ng + g) = act(w, v);
            }
        tgtU.push_back(std::move(tu));
        // target B = kG with conjugation
        Matrix<K> tb(k, ng, ng);
        for (std::size_t g = 0; g < ng; ++g) tb(ctx.group().conj(GIdx(h), GIdx(g)), g) = k.one();
        tgtB.push_back(std::move(tb));
    }
    // alpha, beta act on row vectors; transpose to column convention
    Matrix<K> alpha_t(k, nv * ng, r), beta_t(k, ng, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t c = 0; c < nv * ng; ++c) alpha_t(c, i) = pres.alpha(i, c);
        for (std::size_t c = 0; c < ng; ++c) beta_t(c, i) = pres.beta(i, c);
    }
    return is_equivariant(alpha_t, src, tgtU) && is_equivariant(beta_t, src, tgtB);
}

}  // namespace pbwlab
