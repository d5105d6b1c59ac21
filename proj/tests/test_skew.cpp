#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pbwlab/skew.hpp"

using namespace pbwlab;

namespace {

template <Field K>
Matrix<K> from_ints(K k, std::vector<std::vector<int>> rows) {
    Matrix<K> m(k, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = k.from_int(rows[i][j]);
    return m;
}

template <Field K>
SkewContext<K> jordan_context(K k, std::size_t p) {
    Representation<K> r;
    r.group = FiniteGroup::cyclic(p);
    r.dim_V = 2;
    auto gmat = from_ints(k, {{1, 1}, {0, 1}});
    auto m = Matrix<K>::identity(k, 2);
    for (std::size_t i = 0; i < p; ++i) {
        r.matrices.push_back(m);
        m = m * gmat;
    }
    return SkewContext<K>(k, std::move(r));
}

template <Field K>
SkewElement<K> random_element(const SkewContext<K>& ctx, std::mt19937_64& rng, std::size_t maxdeg) {
    const K k = ctx.field();
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<std::size_t> deg(0, maxdeg);
    std::uniform_int_distribution<std::size_t> letter(0, ctx.dim_V() - 1);
    std::uniform_int_distribution<std::size_t> grp(0, ctx.group().order - 1);
    SkewElement<K> e;
    for (int t = 0; t < 4; ++t) {
        Word w(deg(rng));
        for (auto& l : w) l = std::uint8_t(letter(rng));
        add_term(k, e, SkewMonomial{std::move(w), GIdx(grp(rng))}, k.from_int(coef(rng)));
    }
    return e;
}

}  // namespace

TEST_CASE("smash product multiplication rule") {
    GFpField f3(3);
    auto ctx = jordan_context(f3, 3);

    // (1|g)(v2|e) = (v1 + v2)|g  for the Jordan block
    auto lhs = ctx.multiply(ctx.group_elt(1), ctx.letter(1));
    SkewElement<GFpField> want;
    add_term(f3, want, SkewMonomial{{0}, 1}, f3.one());
    add_term(f3, want, SkewMonomial{{1}, 1}, f3.one());
    CHECK(lhs.terms == want.terms);

    // unit
    std::mt19937_64 rng(3);
    auto x = random_element(ctx, rng, 3);
    CHECK(ctx.multiply(ctx.unit(), x).terms == x.terms);
    CHECK(ctx.multiply(x, ctx.unit()).terms == x.terms);
}

TEST_CASE("multiplication is associative on random triples") {
    GFpField f3(3);
    auto ctx = jordan_context(f3, 3);
    std::mt19937_64 rng(99);
    for (int it = 0; it < 12; ++it) {
        auto a = random_element(ctx, rng, 2);
        auto b = random_element(ctx, rng, 2);
        auto c = random_element(ctx, rng, 2);
        auto l = ctx.multiply(ctx.multiply(a, b), c);
        auto r = ctx.multiply(a, ctx.multiply(b, c));
        CHECK(l.terms == r.terms);
    }

    QField q;
    Representation<QField> rq;
    rq.group = FiniteGroup::cyclic(2);
    rq.dim_V = 2;
    rq.matrices = {Matrix<QField>::identity(q, 2), from_ints(q, {{-1, 0}, {0, -1}})};
    SkewContext<QField> ctxq(q, std::move(rq));
    std::mt19937_64 rng2(5);
    for (int it = 0; it < 8; ++it) {
        auto a = random_element(ctxq, rng2, 2);
        auto b = random_element(ctxq, rng2, 2);
        auto c = random_element(ctxq, rng2, 2);
        CHECK(ctxq.multiply(ctxq.multiply(a, b), c).terms ==
              ctxq.multiply(a, ctxq.multiply(b, c)).terms);
    }
}

TEST_CASE("pi keeps exactly the degree-2 part") {
    QField q;
    auto ctx = SkewContext<QField>(q, Representation<QField>::trivial(q, 2));
    // xy - x
    auto e = ctx.sub(ctx.multiply(ctx.letter(0), ctx.letter(1)), ctx.letter(0));
    auto p = pi(e);
    SkewElement<QField> want;
    add_term(q, want, SkewMonomial{{0, 1}, 0}, q.one());
    CHECK(p.terms == want.terms);

    CHECK(pi(ctx.group_elt(0)).is_zero());

    std::mt19937_64 rng(1);
    for (int it = 0; it < 10; ++it) {
        auto x = random_element(ctx, rng, 4);
        CHECK(pi(pi(x)).terms == pi(x).terms);
    }
}

TEST_CASE("leading homogeneous part") {
    QField q;
    auto ctx = SkewContext<QField>(q, Representation<QField>::trivial(q, 2));
    auto x = ctx.letter(0);
    auto x2 = ctx.multiply(x, x);
    auto e = ctx.sub(x2, x);
    CHECK(leading_homogeneous(e).terms == x2.terms);
    CHECK(leading_homogeneous(ctx.zero()).is_zero());

    std::mt19937_64 rng(2);
    for (int it = 0; it < 10; ++it) {
        auto y = random_element(ctx, rng, 4);
        auto lh = leading_homogeneous(y);
        CHECK(leading_homogeneous(lh).terms == lh.terms);
        if (!y.is_zero() && y.degree() == 2 && !pi(y).is_zero())
            CHECK(pi(y).terms == lh.terms);
    }
}

TEST_CASE("monomial indexer round trip") {
    MonomialIndexer ix(2, 3, 4);
    CHECK(ix.dim() == 3 * (1 + 2 + 4 + 8 + 16));
    CHECK(ix.dim_filtered(2) == 3 * 7);
    for (std::size_t i = 0; i < ix.dim(); ++i) CHECK(ix.index(ix.monomial(i)) == i);
}

TEST_CASE("dense round trip") {
    GFpField f3(3);
    auto ctx = jordan_context(f3, 3);
    MonomialIndexer ix(2, 3, 4);
    std::mt19937_64 rng(8);
    for (int it = 0; it < 10; ++it) {
        auto x = random_element(ctx, rng, 4);
        auto v = to_dense(f3, x, ix);
        CHECK(from_dense(f3, v, ix).terms == x.terms);
    }
}
