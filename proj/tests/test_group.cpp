#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pbwlab/group.hpp"
#include "pbwlab/rep.hpp"

using namespace pbwlab;

namespace {

template <Field K>
Matrix<K> from_ints(K k, std::vector<std::vector<int>> rows) {
    Matrix<K> m(k, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = k.from_int(rows[i][j]);
    return m;
}

/// Z/p acting through the unipotent Jordan block [[1,1],[0,1]]; has order p
/// exactly in characteristic p.
template <Field K>
Representation<K> jordan_rep(K k, std::size_t p) {
    Representation<K> r;
    r.group = FiniteGroup::cyclic(p);
    r.dim_V = 2;
    auto gmat = from_ints(k, {{1, 1}, {0, 1}});
    auto m = Matrix<K>::identity(k, 2);
    for (std::size_t i = 0; i < p; ++i) {
        r.matrices.push_back(m);
        m = m * gmat;
    }
    return r;
}

}  // namespace

TEST_CASE("cyclic group tables validate") {
    CHECK(validate_group(FiniteGroup::cyclic(3)));
    CHECK(validate_group(FiniteGroup::cyclic(5)));
    CHECK(validate_group(FiniteGroup::trivial()));
}

TEST_CASE("broken identity is caught") {
    auto g = FiniteGroup::cyclic(3);
    g.mult[1][0] = 2;  // a*e != a
    auto why = group_violation(g);
    REQUIRE(why.has_value());
    CHECK(why->find("a*e") != std::string::npos);
}

TEST_CASE("from_table recovers identity and inverses") {
    auto t = FiniteGroup::cyclic(4).mult;
    auto g = FiniteGroup::from_table(t);
    REQUIRE(g.has_value());
    CHECK(g->identity == 0);
    CHECK(g->inverse[1] == 3);
}

TEST_CASE("Jordan block representation: valid mod p, invalid over Q") {
    GFpField f5(5);
    CHECK(validate_representation(jordan_rep(f5, 5)));

    QField q;
    auto bad = jordan_rep(q, 3);  // [[1,1],[0,1]] has infinite order over Q
    auto why = representation_violation(bad);
    REQUIRE(why.has_value());
    CHECK(why->find("homomorphism") != std::string::npos);
}

TEST_CASE("minus identity gives a Z/2 representation over Q") {
    QField q;
    Representation<QField> r;
    r.group = FiniteGroup::cyclic(2);
    r.dim_V = 2;
    r.matrices = {Matrix<QField>::identity(q, 2), from_ints(q, {{-1, 0}, {0, -1}})};
    CHECK(validate_representation(r));
}

TEST_CASE("group algebra products") {
    QField q;
    auto g2 = FiniteGroup::cyclic(2);
    auto e = GroupAlgebraElement<QField>::basis(q, 2, 0);
    auto g = GroupAlgebraElement<QField>::basis(q, 2, 1);

    auto x = ga_add(q, e, g);  // 1 + g
    CHECK(ga_multiply(q, g2, e, x).coeffs == x.coeffs);
    CHECK(ga_multiply(q, g2, g, g).coeffs == e.coeffs);

    // (1+g)(1-g) = 1 - g + g - g^2 = 0 over any field
    GroupAlgebraElement<QField> y{{q.from_int(1), q.from_int(-1)}};
    CHECK(ga_is_zero(q, ga_multiply(q, g2, x, y)));

    GFpField f2(2);
    GroupAlgebraElement<GFpField> xf{{1, 1}}, yf{{1, 1}};
    CHECK(ga_is_zero(f2, ga_multiply(f2, g2, xf, yf)));
}

TEST_CASE("YD gradings: trivial and canonical kG with conjugation") {
    GFpField f3(3);
    auto grp = FiniteGroup::cyclic(3);

    YDGrading<GFpField> trivial;
    trivial.group = &grp;
    trivial.space_dim = 2;
    trivial.component = {grp.identity, grp.identity};
    trivial.action = {Matrix<GFpField>::identity(f3, 2), Matrix<GFpField>::identity(f3, 2),
                      Matrix<GFpField>::identity(f3, 2)};
    CHECK(check_yd(trivial));

    // kG graded by (kG)_g = span{g}, G acting by conjugation (trivial for abelian G)
    YDGrading<GFpField> kg;
    kg.group = &grp;
    kg.space_dim = 3;
    kg.component = {0, 1, 2};
    kg.action.assign(3, Matrix<GFpField>::identity(f3, 3));
    CHECK(check_yd(kg));
}

TEST_CASE("YD violation is reported") {
    GFpField f3(3);
    auto grp = FiniteGroup::cyclic(3);
    YDGrading<GFpField> bad;
    bad.group = &grp;
    bad.space_dim = 2;
    bad.component = {0, 1};
    // action of g maps component-0 basis vector onto the component-1 one
    Matrix<GFpField> m(f3, 2, 2);
    m(1, 0) = 1;
    m(0, 1) = 1;
    bad.action = {Matrix<GFpField>::identity(f3, 2), m, Matrix<GFpField>::identity(f3, 2)};
    auto w = yd_violation(bad);
    REQUIRE(w.has_value());
    CHECK(w->first == 1);
}

TEST_CASE("tensor product of YD gradings stays YD") {
    GFpField f3(3);
    auto grp = FiniteGroup::cyclic(3);
    std::mt19937_64 rng(17);

    // V = kG with conjugation (abelian: trivial action), W = regular left action
    YDGrading<GFpField> v;
    v.group = &grp;
    v.space_dim = 3;
    v.component = {0, 1, 2};
    v.action.assign(3, Matrix<GFpField>::identity(f3, 3));

    // tensor grading: component(a (x) b) = comp(a) * comp(b); diagonal action
    YDGrading<GFpField> vw;
    vw.group = &grp;
    vw.space_dim = 9;
    vw.component.resize(9);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            vw.component[a * 3 + b] = grp.mul(v.component[a], v.component[b]);
    vw.action.assign(3, Matrix<GFpField>::identity(f3, 9));
    CHECK(check_yd(vw));
    (void)rng;
}

TEST_CASE("equivariance checks") {
    QField q;
    auto id2 = Matrix<QField>::identity(q, 2);
    auto neg = from_ints(q, {{-1, 0}, {0, -1}});

    std::vector<Matrix<QField>> act = {id2, neg};
    CHECK(is_equivariant(id2, act, act));
    Matrix<QField> zero(q, 2, 2);
    CHECK(is_equivariant(zero, act, act));

    // V (x) V -> V, x (x) y -> x is not equivariant for g = -id
    Representation<QField> r;
    r.group = FiniteGroup::cyclic(2);
    r.dim_V = 2;
    r.matrices = {id2, neg};
    std::vector<Matrix<QField>> act_vv = {tensor_power_action(r, 0, 2), tensor_power_action(r, 1, 2)};
    Matrix<QField> f(q, 2, 4);  // x(x)y |-> x on the 4-dim tensor square
    f(0, 0) = q.one();  // v1v1 -> v1
    f(0, 1) = q.one();  // v1v2 -> v1
    f(1, 2) = q.one();  // v2v1 -> v2
    f(1, 3) = q.one();  // v2v2 -> v2
    CHECK(!is_equivariant(f, act_vv, act));
}

TEST_CASE("tensor_power_action is a homomorphism on words") {
    GFpField f3(3);
    Representation<GFpField> r;
    r.group = FiniteGroup::cyclic(3);
    r.dim_V = 2;
    auto gmat = from_ints(f3, {{1, 1}, {0, 1}});
    r.matrices = {Matrix<GFpField>::identity(f3, 2), gmat, gmat * gmat};
    REQUIRE(validate_representation(r));
    auto a1 = tensor_power_action(r, 1, 3);
    auto a2 = tensor_power_action(r, 2, 3);
    CHECK(a1 * a2 == tensor_power_action(r, 0, 3));
}
