#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pbwlab/oracle.hpp"

using namespace pbwlab;

namespace {

template <Field K>
SkewContext<K> free2_context(K k) {
    return SkewContext<K>(k, Representation<K>::trivial(k, 2));
}

// P = {xy - x, yx - y}: the filtered quadratic algebra that is NOT of PBW
// type with respect to P (x = letter 0, y = letter 1)
template <Field K>
std::vector<SkewElement<K>> relations_P(const SkewContext<K>& ctx) {
    auto x = ctx.letter(0), y = ctx.letter(1);
    return {ctx.sub(ctx.multiply(x, y), x), ctx.sub(ctx.multiply(y, x), y)};
}

// P' = P + {x^2 - x, y^2 - y}: same ideal, PBW generating set
template <Field K>
std::vector<SkewElement<K>> relations_Pprime(const SkewContext<K>& ctx) {
    auto x = ctx.letter(0), y = ctx.letter(1);
    auto P = relations_P(ctx);
    P.push_back(ctx.sub(ctx.multiply(x, x), x));
    P.push_back(ctx.sub(ctx.multiply(y, y), y));
    return P;
}

}  // namespace

TEST_CASE("ideal span surfaces x^2-x from degree-3 cancellations") {
    QField q;
    auto ctx = free2_context(q);
    auto P = relations_P(ctx);

    auto fs = ideal_filtered_span(ctx, P, 2, 3);
    auto x = ctx.letter(0), y = ctx.letter(1);
    MonomialIndexer ix(2, 1, 2);
    auto x2mx = to_dense(q, ctx.sub(ctx.multiply(x, x), x), ix);
    auto y2my = to_dense(q, ctx.sub(ctx.multiply(y, y), y), ix);
    CHECK(fs.space.contains(x2mx));
    CHECK(fs.space.contains(y2my));

    // at cap 2 the span is only the generators themselves
    auto fs2 = ideal_filtered_span(ctx, P, 2, 2);
    CHECK(fs2.space.dim() == 2);
    CHECK(!fs2.space.contains(x2mx));
    CHECK(fs2.stabilized == false);
}

TEST_CASE("empty generating set spans zero") {
    QField q;
    auto ctx = free2_context(q);
    auto fs = ideal_filtered_span(ctx, {}, 3, 5);
    CHECK(fs.space.dim() == 0);
    CHECK(fs.stabilized);
}

TEST_CASE("span is monotone in the cap") {
    QField q;
    auto ctx = free2_context(q);
    auto P = relations_P(ctx);
    std::size_t prev = 0;
    for (std::size_t cap = 2; cap <= 6; ++cap) {
        auto fs = ideal_filtered_span(ctx, P, 2, cap);
        CHECK(fs.space.dim() >= prev);
        prev = fs.space.dim();
    }
}

TEST_CASE("condition (I) via span: P' meets F^1 trivially") {
    QField q;
    auto ctx = free2_context(q);
    auto fs = ideal_filtered_span(ctx, relations_Pprime(ctx), 1, 4);
    CHECK(fs.space.dim() == 0);
    CHECK(fs.stabilized);
}

TEST_CASE("cap below target degree is rejected") {
    QField q;
    auto ctx = free2_context(q);
    CHECK_THROWS_AS((void)ideal_filtered_span(ctx, relations_P(ctx), 3, 2), CapTooSmall);
}

TEST_CASE("oracle dims for the section-2 example") {
    QField q;
    auto ctx = free2_context(q);

    auto od = oracle_dims(ctx, relations_P(ctx), 4, 7);
    // T/<P> has basis {1, x, y}: filtered dims 1,3,3,3,...
    CHECK(od.filtered_dims == std::vector<std::size_t>{1, 3, 3, 3, 3});

    // homogeneous algebra T/<xy,yx> has graded dims 1,2,2,2,...
    std::vector<SkewElement<QField>> H;
    for (auto& p : relations_P(ctx)) H.push_back(pi(p));
    CHECK(homogeneous_quotient_dims(ctx, H, 4) == std::vector<std::size_t>{1, 2, 2, 2, 2});

    // the four-relation homogeneous algebra has graded dims 1,2,0,0,...
    std::vector<SkewElement<QField>> H4;
    for (auto& p : relations_Pprime(ctx)) H4.push_back(pi(p));
    CHECK(homogeneous_quotient_dims(ctx, H4, 4) == std::vector<std::size_t>{1, 2, 0, 0, 0});
}

TEST_CASE("oracle dims of the free algebra") {
    GFpField f3(3);
    Representation<GFpField> r;
    r.group = FiniteGroup::cyclic(3);
    r.dim_V = 2;
    Matrix<GFpField> gm(f3, 2, 2);
    gm(0, 0) = 1; gm(0, 1) = 1; gm(1, 1) = 1;
    r.matrices = {Matrix<GFpField>::identity(f3, 2), gm, gm * gm};
    SkewContext<GFpField> ctx(f3, std::move(r));
    auto od = oracle_dims(ctx, {}, 3, 4);
    CHECK(od.filtered_dims == std::vector<std::size_t>{3, 9, 21, 45});
}

TEST_CASE("truncated completion of P resolves the two overlaps") {
    QField q;
    auto ctx = free2_context(q);
    auto sys = truncated_completion(ctx, relations_P(ctx), 5);
    CHECK(sys.complete());
    // rules: xy->x, yx->y, x^2->x, y^2->y
    CHECK(sys.rules().size() == 4);
    CHECK(sys.normal_filtered_dims(4) == std::vector<std::size_t>{1, 3, 3, 3, 3});
}

TEST_CASE("completion of homogeneous P' matches direct span dims") {
    QField q;
    auto ctx = free2_context(q);
    std::vector<SkewElement<QField>> H4;
    for (auto& p : relations_Pprime(ctx)) H4.push_back(pi(p));
    auto sys = truncated_completion(ctx, H4, 5);
    CHECK(sys.complete());
    auto dims = sys.normal_filtered_dims(4);
    auto hom = homogeneous_quotient_dims(ctx, H4, 4);
    std::size_t acc = 0;
    for (std::size_t m = 0; m <= 4; ++m) {
        acc += hom[m];
        CHECK(dims[m] == acc);
    }
}

TEST_CASE("commutator relations: already confluent, symmetric algebra dims") {
    QField q;
    auto ctx = free2_context(q);
    auto x = ctx.letter(0), y = ctx.letter(1);
    auto comm = ctx.sub(ctx.multiply(x, y), ctx.multiply(y, x));
    auto sys = truncated_completion(ctx, {comm}, 6);
    CHECK(sys.complete());
    CHECK(sys.rules().size() == 1);
    for (std::size_t m = 0; m <= 5; ++m) CHECK(sys.normal_count(m) == m + 1);
}

TEST_CASE("Jordan block commutators over GF(p): p*(m+1) graded dims") {
    GFpField f3(3);
    Representation<GFpField> r;
    r.group = FiniteGroup::cyclic(3);
    r.dim_V = 2;
    Matrix<GFpField> gm(f3, 2, 2);
    gm(0, 0) = 1; gm(0, 1) = 1; gm(1, 1) = 1;
    r.matrices = {Matrix<GFpField>::identity(f3, 2), gm, gm * gm};
    SkewContext<GFpField> ctx(f3, std::move(r));
    auto x = ctx.letter(0), y = ctx.letter(1);
    auto comm = ctx.sub(ctx.multiply(x, y), ctx.multiply(y, x));
    auto sys = truncated_completion(ctx, {comm}, 6);
    CHECK(sys.complete());
    for (std::size_t m = 0; m <= 5; ++m) CHECK(sys.normal_count(m) == 3 * (m + 1));
}

TEST_CASE("pbw_oracle_verdict on the section-2 example") {
    QField q;
    auto ctx = free2_context(q);

    auto bad = pbw_oracle_verdict(ctx, relations_P(ctx), 4, 7);
    CHECK(bad.kind == OracleVerdict::Kind::NotPBW);
    CHECK(bad.defect_degree == 2);
    CHECK(bad.detected_at_cap == 3);

    auto good = pbw_oracle_verdict(ctx, relations_Pprime(ctx), 4, 8);
    CHECK(good.kind == OracleVerdict::Kind::PBWUpTo);
    CHECK(good.upto == 4);
    CHECK(good.completion_complete);
}

TEST_CASE("kappa = 0 commutation relations are PBW for a modular action") {
    GFpField f3(3);
    Representation<GFpField> r;
    r.group = FiniteGroup::cyclic(3);
    r.dim_V = 2;
    Matrix<GFpField> gm(f3, 2, 2);
    gm(0, 0) = 1; gm(0, 1) = 1; gm(1, 1) = 1;
    r.matrices = {Matrix<GFpField>::identity(f3, 2), gm, gm * gm};
    SkewContext<GFpField> ctx(f3, std::move(r));
    auto x = ctx.letter(0), y = ctx.letter(1);
    auto comm = ctx.sub(ctx.multiply(x, y), ctx.multiply(y, x));
    auto v = pbw_oracle_verdict(ctx, {comm}, 4, 7);
    CHECK(v.kind == OracleVerdict::Kind::PBWUpTo);
    for (std::size_t m = 0; m <= 4; ++m) {
        std::size_t monomials = 0;
        for (std::size_t j = 0; j <= m; ++j) monomials += j + 1;
        CHECK(v.oracle_dims[m] == 3 * monomials);
    }
}

TEST_CASE("non-Jacobi bracket is refuted, Jacobiator enters at cap 3") {
    // G trivial, dim V = 3, bracket [x,y]=x, [y,z]=y, [z,x]=z
    QField q;
    auto ctx = SkewContext<QField>(q, Representation<QField>::trivial(q, 3));
    auto x = ctx.letter(0), y = ctx.letter(1), z = ctx.letter(2);
    auto rel = [&](const SkewElement<QField>& a, const SkewElement<QField>& b,
                   const SkewElement<QField>& bracket) {
        return ctx.sub(ctx.sub(ctx.multiply(a, b), ctx.multiply(b, a)), bracket);
    };
    std::vector<SkewElement<QField>> P = {rel(x, y, x), rel(y, z, y), rel(z, x, z)};
    auto v = pbw_oracle_verdict(ctx, P, 4, 7);
    CHECK(v.kind == OracleVerdict::Kind::NotPBW);
    CHECK(v.defect_degree == 1);
    CHECK(v.detected_at_cap == 3);

    // the ideal contains the Jacobiator -(x+y+z) in filtered degree 1
    auto fs = ideal_filtered_span(ctx, P, 1, 3);
    MonomialIndexer ix(3, 1, 1);
    auto jac = to_dense(q, ctx.scale(ctx.add(ctx.add(x, y), z), q.from_int(-1)), ix);
    CHECK(fs.space.contains(jac));
}

TEST_CASE("so(3)-type bracket satisfies Jacobi and stays PBW") {
    QField q;
    auto ctx = SkewContext<QField>(q, Representation<QField>::trivial(q, 3));
    auto x = ctx.letter(0), y = ctx.letter(1), z = ctx.letter(2);
    auto rel = [&](const SkewElement<QField>& a, const SkewElement<QField>& b,
                   const SkewElement<QField>& bracket) {
        return ctx.sub(ctx.sub(ctx.multiply(a, b), ctx.multiply(b, a)), bracket);
    };
    std::vector<SkewElement<QField>> P = {rel(x, y, z), rel(y, z, x), rel(z, x, y)};
    auto v = pbw_oracle_verdict(ctx, P, 4, 7);
    CHECK(v.kind == OracleVerdict::Kind::PBWUpTo);
}

TEST_CASE("seeded random ideals: span dims never exceed free dims and rewriting agrees") {
    GFpField f3(3);
    Representation<GFpField> r;
    r.group = FiniteGroup::cyclic(3);
    r.dim_V = 2;
    Matrix<GFpField> gm(f3, 2, 2);
    gm(0, 0) = 1; gm(0, 1) = 1; gm(1, 1) = 1;
    r.matrices = {Matrix<GFpField>::identity(f3, 2), gm, gm * gm};
    SkewContext<GFpField> ctx(f3, std::move(r));

    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> coef(0, 2);
    for (int it = 0; it < 5; ++it) {
        // homogeneous random quadratic relation with identity group part
        SkewElement<GFpField> p;
        for (std::uint8_t a = 0; a < 2; ++a)
            for (std::uint8_t b = 0; b < 2; ++b)
                add_term(f3, p, SkewMonomial{{a, b}, 0}, f3.from_int(coef(rng)));
        if (p.is_zero()) continue;
        auto sys = truncated_completion(ctx, {p}, 5);
        auto od = oracle_dims(ctx, {p}, 4, 5);
        if (sys.complete()) {
            auto exact = sys.normal_filtered_dims(4);
            for (std::size_t m = 0; m <= 4; ++m) CHECK(od.filtered_dims[m] >= exact[m]);
            // homogeneous ideals: the degree-capped span is the whole truncated ideal
            for (std::size_t m = 0; m <= 4; ++m) CHECK(od.filtered_dims[m] == exact[m]);
        }
    }
}
