#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pbwlab/kappa.hpp"
#include "pbwlab/oracle.hpp"

using namespace pbwlab;

namespace {

QField q;

template <Field K>
Representation<K> minus_id_rep(K k, std::size_t dim) {
    Representation<K> r;
    r.group = FiniteGroup::cyclic(2);
    r.dim_V = dim;
    auto neg = Matrix<K>::identity(k, dim);
    for (std::size_t i = 0; i < dim; ++i) neg(i, i) = k.neg(k.one());
    r.matrices = {Matrix<K>::identity(k, dim), neg};
    return r;
}

/// symplectic Z/2 instance: g = -id on k^2, kC_g = omega, kL = 0
KappaParam<QField> symplectic_kappa() {
    auto kp = KappaParam<QField>::zero(q, minus_id_rep(q, 2));
    kp.kC[1](0, 1) = q.one();
    kp.kC[1](1, 0) = q.from_int(-1);
    return kp;
}

/// G trivial, dim 3, kL = bracket given by rows [x,y], [x,z], [y,z]
KappaParam<QField> bracket_kappa(std::vector<std::vector<int>> b) {
    auto kp = KappaParam<QField>::zero(q, Representation<QField>::trivial(q, 3));
    auto set = [&](std::size_t i, std::size_t j, const std::vector<int>& v) {
        for (std::size_t a = 0; a < 3; ++a) {
            kp.kL[0][i * 3 + j][a] = q.from_int(v[a]);
            kp.kL[0][j * 3 + i][a] = q.from_int(-v[a]);
        }
    };
    set(0, 1, b[0]);
    set(0, 2, b[1]);
    set(1, 2, b[2]);
    return kp;
}

template <Field K>
Representation<K> jordan_rep(K k, std::size_t p) {
    Representation<K> r;
    r.group = FiniteGroup::cyclic(p);
    r.dim_V = 2;
    Matrix<K> gmat = Matrix<K>::identity(k, 2);
    gmat(0, 1) = k.one();
    auto m = Matrix<K>::identity(k, 2);
    for (std::size_t i = 0; i < p; ++i) {
        r.matrices.push_back(m);
        m = m * gmat;
    }
    return r;
}

}  // namespace

TEST_CASE("alternating validation") {
    auto kp = symplectic_kappa();
    CHECK(!kappa_alternating_violation(q, kp));
    kp.kC[1](0, 0) = q.one();
    CHECK(kappa_alternating_violation(q, kp));
}

TEST_CASE("invariance: zero kappa, symplectic form, and a sign failure") {
    CHECK(check_invariance(q, KappaParam<QField>::zero(q, minus_id_rep(q, 2))));
    CHECK(check_invariance(q, symplectic_kappa()));

    // g = diag(1,-1), kC_g(x,y) = 1: omega(x, ^g y) = -omega(x,y), not invariant
    Representation<QField> r;
    r.group = FiniteGroup::cyclic(2);
    r.dim_V = 2;
    auto d = Matrix<QField>::identity(q, 2);
    d(1, 1) = q.from_int(-1);
    r.matrices = {Matrix<QField>::identity(q, 2), d};
    auto kp = KappaParam<QField>::zero(q, r);
    kp.kC[1](0, 1) = q.one();
    kp.kC[1](1, 0) = q.from_int(-1);
    KappaWitness w;
    CHECK(!check_invariance(q, kp, &w));
    CHECK(w.h == 1);
}

TEST_CASE("condition 2: kL = 0, trivial G, and an honest failure") {
    CHECK(check_condition2(q, symplectic_kappa()));
    CHECK(check_condition2(q, bracket_kappa({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}})));  // G trivial

    // Z/2 with g = diag(-1,-1,1), kL_g(y,z) = y: invariant but
    // sum contains kL_g(y,z)(x - ^g x) = 2xy != 0
    Representation<QField> r;
    r.group = FiniteGroup::cyclic(2);
    r.dim_V = 3;
    auto d = Matrix<QField>::identity(q, 3);
    d(0, 0) = q.from_int(-1);
    d(1, 1) = q.from_int(-1);
    r.matrices = {Matrix<QField>::identity(q, 3), d};
    auto kp = KappaParam<QField>::zero(q, r);
    kp.kL[1][1 * 3 + 2][1] = q.one();
    kp.kL[1][2 * 3 + 1][1] = q.from_int(-1);
    REQUIRE(check_invariance(q, kp));
    KappaWitness w;
    CHECK(!check_condition2(q, kp, &w));
    auto verdict = kappa_verdict(q, kp);
    CHECK(!verdict.pbw);
    CHECK(verdict.failed_bullet == 2);
}

TEST_CASE("condition 3: Jacobi identity for brackets over a trivial group") {
    // [x,y] = x satisfies Jacobi
    CHECK(check_condition3(q, bracket_kappa({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}})));
    // so(3)-type: [x,y] = z, [y,z] = x, [z,x] = y (so [x,z] = -y)
    CHECK(check_condition3(q, bracket_kappa({{0, 0, 1}, {0, -1, 0}, {1, 0, 0}})));
    // [x,y]=x, [y,z]=y, [z,x]=z violates Jacobi
    auto bad = bracket_kappa({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}});
    KappaWitness w;
    CHECK(!check_condition3(q, bad, &w));
    auto v = kappa_verdict(q, bad);
    CHECK(v.failed_bullet == 3);
}

TEST_CASE("condition 3 sides: Jacobiator value -(x+y+z) is reproduced") {
    // brute-force Jacobiator J = [[x,y],z] + [[y,z],x] + [[z,x],y] computed
    // independently, then compared with the evaluator's left side
    auto kp = bracket_kappa({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}});
    auto brk = [&](const std::vector<mpq_class>& u, const std::vector<mpq_class>& v) {
        return kp.kL_at(q, 0, u, v);
    };
    std::vector<mpq_class> x = {1, 0, 0}, y = {0, 1, 0}, z = {0, 0, 1};
    auto J = brk(brk(x, y), z);
    auto t2 = brk(brk(y, z), x);
    auto t3 = brk(brk(z, x), y);
    for (std::size_t a = 0; a < 3; ++a) J[a] = J[a] + t2[a] + t3[a];
    CHECK(J == std::vector<mpq_class>{-1, -1, -1});  // -(x+y+z)

    // the evaluator's LHS on (x,y,z) is 2 x (cyclic kL-square), which equals
    // -2 J under the bracket convention above
    auto [lhs, rhs_core] = condition3_sides(q, kp, 0, 0, 1, 2);
    for (std::size_t a = 0; a < 3; ++a) {
        CHECK(lhs[a] == -2 * J[a]);
        CHECK(rhs_core[a] == 0);
    }
}

TEST_CASE("condition 3 sides pin the paper's factor 2") {
    // Z/2 with g = -id on k^3, kC_g(x,y) = 1: the right side core is the
    // omega-contraction and the full right side must be exactly twice it
    auto kp = KappaParam<QField>::zero(q, minus_id_rep(q, 3));
    kp.kC[1](0, 1) = q.one();
    kp.kC[1](1, 0) = q.from_int(-1);
    REQUIRE(check_invariance(q, kp));
    auto [lhs, rhs_core] = condition3_sides(q, kp, 1, 0, 1, 2);
    // core = kC(x,y)(z - ^g z) = 2z; independent hand value
    CHECK(rhs_core == std::vector<mpq_class>{0, 0, 2});
    CHECK(lhs == std::vector<mpq_class>{0, 0, 0});
    // full condition fails (lhs != 2*core), and the factor-1 mutant is a
    // genuinely different predicate: it would demand lhs == core instead
    CHECK(!check_condition3(q, kp));
    CHECK(!check_condition3(q, kp, nullptr, 1));
    // kC scaled to zero makes both sides zero and the condition pass
    auto kp0 = KappaParam<QField>::zero(q, minus_id_rep(q, 3));
    CHECK(check_condition3(q, kp0));
}

TEST_CASE("condition 4: zero cases and an honest failure") {
    CHECK(check_condition4(q, symplectic_kappa()));
    CHECK(check_condition4(q, bracket_kappa({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}})));

    // G trivial, [x,y] = x and kC(z,x) = 1: cyclic sum hits kC(z,[x,y]) != 0
    auto kp = bracket_kappa({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    kp.kC[0](2, 0) = q.one();
    kp.kC[0](0, 2) = q.from_int(-1);
    KappaWitness w;
    CHECK(!check_condition4(q, kp, &w));
    auto v = kappa_verdict(q, kp);
    CHECK(v.failed_bullet == 4);

    // the oracle agrees this quotient is not PBW
    auto ctx = SkewContext<QField>(q, Representation<QField>::trivial(q, 3));
    auto ov = pbw_oracle_verdict(ctx, kappa_relations(ctx, kp), 4, 7);
    CHECK(ov.kind == OracleVerdict::Kind::NotPBW);
}

TEST_CASE("kappa_verdict: zero kappa and the symplectic instance are PBW") {
    CHECK(kappa_verdict(q, KappaParam<QField>::zero(q, minus_id_rep(q, 2))).pbw);
    CHECK(kappa_verdict(q, symplectic_kappa()).pbw);
}

TEST_CASE("char 2 is rejected loudly") {
    GFpField f2(2);
    auto kp = KappaParam<GFpField>::zero(f2, Representation<GFpField>::trivial(f2, 2));
    CHECK_THROWS_AS((void)kappa_verdict(f2, kp), CharTwo);
    CHECK_THROWS_AS((void)corollary_verdict(f2, kp), CharTwo);
}

TEST_CASE("corollary: restriction, agreement, and failures") {
    CHECK(corollary_verdict(q, symplectic_kappa()).pbw);

    auto withL = bracket_kappa({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK_THROWS_AS((void)corollary_verdict(q, withL), NotConstantKappa);

    // non-invariant kC fails bullet 1
    Representation<QField> r;
    r.group = FiniteGroup::cyclic(2);
    r.dim_V = 2;
    auto d = Matrix<QField>::identity(q, 2);
    d(1, 1) = q.from_int(-1);
    r.matrices = {Matrix<QField>::identity(q, 2), d};
    auto bad = KappaParam<QField>::zero(q, r);
    bad.kC[1](0, 1) = q.one();
    bad.kC[1](1, 0) = q.from_int(-1);
    auto v = corollary_verdict(q, bad);
    CHECK(!v.pbw);
    CHECK(v.failed_bullet == 1);
}

TEST_CASE("corollary equals the full verdict on seeded kC-only samples") {
    GFpField f3(3);
    auto rep = jordan_rep(f3, 3);
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> d(0, 2);
    for (int it = 0; it < 30; ++it) {
        auto kp = KappaParam<GFpField>::zero(f3, rep);
        for (std::size_t g = 0; g < 3; ++g) {
            auto c = f3.from_int(d(rng));
            kp.kC[g](0, 1) = c;
            kp.kC[g](1, 0) = f3.neg(c);
        }
        auto a = corollary_verdict(f3, kp);
        auto b = kappa_verdict(f3, kp);
        CHECK(a.pbw == b.pbw);
        if (!a.pbw) CHECK(a.failed_bullet == b.failed_bullet);
    }
}

TEST_CASE("to_presentation bridges to the Theorem checker") {
    // zero kappa: homogeneous presentation
    auto kp0 = KappaParam<QField>::zero(q, minus_id_rep(q, 2));
    auto p0 = to_presentation(q, kp0);
    CHECK(p0.alpha.is_zero());
    CHECK(p0.beta.is_zero());

    // symplectic: beta(x^y) = omega(x,y) g, alpha = 0
    auto kps = symplectic_kappa();
    auto ps = to_presentation(q, kps);
    CHECK(ps.alpha.is_zero());
    CHECK(ps.beta(0, 0) == 0);
    CHECK(ps.beta(0, 1) == 1);

    auto ctx = SkewContext<QField>(q, kps.rep);
    CHECK(presentation_equivariant(ctx, ps));
    auto kr = koszul_check(ps.hom, 4, 6);
    REQUIRE(kr.ok);
    CHECK(check_conditions(ctx, ps, &kr).pbw);

    // Lie bracket case: checker verdict equals the Jacobi test
    auto good = bracket_kappa({{0, 0, 1}, {0, -1, 0}, {1, 0, 0}});
    auto bad = bracket_kappa({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}});
    auto ctx3 = SkewContext<QField>(q, Representation<QField>::trivial(q, 3));
    for (auto* kp : {&good, &bad}) {
        auto pres = to_presentation(q, *kp);
        auto kr3 = koszul_check(pres.hom, 4, 6);
        REQUIRE(kr3.ok);
        auto cv = check_conditions(ctx3, pres, &kr3);
        auto kv = kappa_verdict(q, *kp);
        CHECK(cv.pbw == kv.pbw);
    }

    // non-invariant kappa propagates an equivariance failure
    Representation<QField> r;
    r.group = FiniteGroup::cyclic(2);
    r.dim_V = 2;
    auto dm = Matrix<QField>::identity(q, 2);
    dm(1, 1) = q.from_int(-1);
    r.matrices = {Matrix<QField>::identity(q, 2), dm};
    auto nbad = KappaParam<QField>::zero(q, r);
    nbad.kC[1](0, 1) = q.one();
    nbad.kC[1](1, 0) = q.from_int(-1);
    CHECK_THROWS_AS((void)to_presentation(q, nbad), NotBimodule);
}

TEST_CASE("verdict invariant under (kL, kC) -> (c kL, c^2 kC)") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int it = 0; it < 10; ++it) {
        auto kp = bracket_kappa({{d(rng), d(rng), d(rng)},
                                 {d(rng), d(rng), d(rng)},
                                 {d(rng), d(rng), d(rng)}});
        auto c0 = q.from_int(3);
        auto scaled = kp;
        for (auto& per_g : scaled.kL)
            for (auto& vec : per_g)
                for (auto& x : vec) x = q.mul(x, c0);
        for (std::size_t g = 0; g < 1; ++g)
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    scaled.kC[g](i, j) = q.mul(scaled.kC[g](i, j), q.mul(c0, c0));
        auto a = kappa_verdict(q, kp);
        auto b = kappa_verdict(q, scaled);
        CHECK(a.pbw == b.pbw);
    }
}

TEST_CASE("alternating evaluation: swapping slots negates") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> d(-3, 3);
    auto kp = symplectic_kappa();
    for (int it = 0; it < 10; ++it) {
        std::vector<mpq_class> u = {q.from_int(d(rng)), q.from_int(d(rng))};
        std::vector<mpq_class> v = {q.from_int(d(rng)), q.from_int(d(rng))};
        CHECK(kp.kC_at(q, 1, u, v) == -kp.kC_at(q, 1, v, u));
    }
}

TEST_CASE("conditions are multilinear, so basis triples suffice") {
    // independent check on random vectors: the condition-2 sum evaluated
    // directly on (u, v, w) equals the multilinear expansion over basis
    // triples of the same sum
    auto kp = bracket_kappa({{1, 0, 0}, {0, 0, -1}, {0, 1, 0}});
    auto cond2_direct = [&](const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                            const std::vector<mpq_class>& c) {
        // G trivial: (v - ^g v) = 0, so the sum is zero; use instead the
        // condition-3 left side which is nonzero: cyclic kL(2u, kL(v,w))
        std::vector<mpq_class> out(3, q.zero());
        const std::vector<mpq_class>* tri[3] = {&a, &b, &c};
        for (const auto& cyc : std::vector<std::array<int, 3>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}) {
            auto inner = kp.kL_at(q, 0, *tri[cyc[1]], *tri[cyc[2]]);
            std::vector<mpq_class> two(3);
            for (int t = 0; t < 3; ++t) two[t] = 2 * (*tri[cyc[0]])[t];
            auto val = kp.kL_at(q, 0, two, inner);
            for (int t = 0; t < 3; ++t) out[t] += val[t];
        }
        return out;
    };
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int it = 0; it < 8; ++it) {
        std::vector<mpq_class> u(3), v(3), w(3);
        for (int t = 0; t < 3; ++t) {
            u[t] = q.from_int(d(rng));
            v[t] = q.from_int(d(rng));
            w[t] = q.from_int(d(rng));
        }
        auto direct = cond2_direct(u, v, w);
        // multilinear expansion over basis triples
        std::vector<mpq_class> expanded(3, q.zero());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) {
                    mpq_class coef = u[i] * v[j] * w[l];
                    if (coef == 0) continue;
                    std::vector<mpq_class> ei(3, q.zero()), ej(3, q.zero()), el(3, q.zero());
                    ei[i] = 1;
                    ej[j] = 1;
                    el[l] = 1;
                    auto b = cond2_direct(ei, ej, el);
                    for (int t = 0; t < 3; ++t) expanded[t] += coef * b[t];
                }
        CHECK(direct == expanded);
    }
}

TEST_CASE("symplectic instance passes the oracle at max degree 4") {
    auto kps = symplectic_kappa();
    auto ctx = SkewContext<QField>(q, kps.rep);
    auto ov = pbw_oracle_verdict(ctx, kappa_relations(ctx, kps), 4, 7);
    CHECK(ov.kind == OracleVerdict::Kind::PBWUpTo);
    CHECK(ov.upto == 4);
}
