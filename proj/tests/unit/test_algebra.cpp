#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace mra;

namespace {

Algebra without_hint(Algebra A)
{
    A.radical_hint.reset();
    return A;
}

// Q(i): basis 1, i with i^2 = -1.
Algebra gaussian_field()
{
    std::vector<std::vector<Term>> t(4);
    t[0] = {{0, 1}};
    t[1] = {{1, 1}};
    t[2] = {{1, 1}};
    t[3] = {{0, -1}};
    return make_algebra(Field(), 2, {"1", "i"}, t, {1, 0}, {{1, 0}}, "test");
}

// 2x2 matrices, basis E11, E12, E21, E22.
Algebra matrix_algebra()
{
    std::vector<std::vector<Term>> t(16);
    auto idx = [](int r, int c) { return static_cast<std::size_t>(2 * r + c); };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    if (b == c)
                        t[idx(a, b) * 4 + idx(c, d)].push_back({idx(a, d), 1});
    return make_algebra(Field(), 4, {"E11", "E12", "E21", "E22"}, t, {1, 0, 0, 1}, {{1, 0, 0, 1}}, "test");
}

}  // namespace

TEST_CASE("corners")
{
    auto A = fixture::algebra("example1.quiver");
    auto full = corner(A, A.unit);
    CHECK(full.corner.dim == A.dim);
    auto rs = fixture::system("example1.quiver");
    Vec e = vertex_sum(rs, {3, 4});
    auto cd = corner(A, e);
    std::size_t oracle = 0;
    for (const auto& p : rs.basis)
        if ((p.src == 3 || p.src == 4) && (p.tgt == 3 || p.tgt == 4))
            ++oracle;
    CHECK(cd.corner.dim == oracle);
    CHECK(cd.corner.idems.size() == 2);
    CHECK(simple_count(cd.corner) == 2);
    CHECK(cd.compress * cd.embed == Mat::identity(cd.corner.dim));
    for (std::size_t i = 0; i < cd.corner.dim; ++i)
        for (std::size_t j = 0; j < cd.corner.dim; ++j)
            CHECK(cd.embed * cd.corner.mul(cd.corner.basis(i), cd.corner.basis(j)) ==
                  A.mul(cd.embed * cd.corner.basis(i), cd.embed * cd.corner.basis(j)));
    CHECK_THROWS(corner(A, A.scale(2, A.unit)));
    auto K = fixture::algebra("kx2.quiver");
    CHECK(corner(K, K.unit).corner.dim == 2);
}

TEST_CASE("radical")
{
    CHECK(radical(fixture::algebra("semisimple2.quiver")).dim() == 0);
    auto K = without_hint(fixture::algebra("kx2.quiver"));
    auto r = radical(K);
    CHECK(r.dim() == 1);
    CHECK(r.contains(K.basis(1)));
    auto A = fixture::algebra("example1.quiver");
    CHECK(radical(without_hint(A)) == *A.radical_hint);
    auto top = quotient_algebra(A, A.radical(), "top");
    CHECK(radical(without_hint(top.algebra)).dim() == 0);
    auto Fp = fixture::from_text("field F 3\nvertex 1\narrow x : 1 -> 1\nrelation x.x = 0\n");
    CHECK(radical(Fp).dim() == 1);
    CHECK_THROWS_AS(radical(without_hint(Fp)), std::invalid_argument);
}

TEST_CASE("simple counts")
{
    CHECK(simple_count(fixture::algebra("example1.quiver")) == 5);
    CHECK(simple_count(fixture::algebra("kx2.quiver")) == 1);
    CHECK(simple_count(fixture::algebra("a2.quiver")) == 2);
    CHECK(simple_count(without_hint(fixture::algebra("f2.quiver"))) == 2);
    CHECK(simple_count(matrix_algebra()) == 1);
    CHECK_FALSE(is_basic(matrix_algebra()));
    CHECK_THROWS_AS(simple_count(gaussian_field()), NonSplitError);
}

TEST_CASE("center and central idempotents")
{
    auto S = fixture::algebra("semisimple2.quiver");
    CHECK(central_idempotents(S).size() == 2);
    auto A = fixture::algebra("example1.quiver");
    auto c = central_idempotents(A);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == A.unit);
    CHECK(center(fixture::algebra("kx2.quiver")).dim() == 2);
    auto P = direct_product(fixture::algebra("kx2.quiver"), fixture::algebra("a2.quiver"));
    auto cp = central_idempotents(P);
    CHECK(cp.size() == 2);
    Vec sum(P.dim);
    for (const auto& e : cp)
        sum = P.add(sum, e);
    CHECK(sum == P.unit);
}

TEST_CASE("cartan matrices")
{
    CHECK(cartan_matrix(fixture::algebra("semisimple2.quiver")) == std::vector<std::vector<long>>{{1, 0}, {0, 1}});
    CHECK(cartan_matrix(fixture::algebra("kx2.quiver")) == std::vector<std::vector<long>>{{2}});
    CHECK(cartan_matrix(fixture::algebra("a2.quiver")) == std::vector<std::vector<long>>{{1, 1}, {0, 1}});
}

TEST_CASE("symmetry")
{
    auto K = fixture::algebra("kx2.quiver");
    auto r = is_symmetric(K);
    CHECK(r.verdict.is_certified());
    REQUIRE(r.witness);
    CHECK(verify_symmetrizing(K, *r.witness));
    // Oracle: the 2x2 Gram matrix of f(1)=0, f(x)=1 is [[0,1],[1,0]].
    SymmetrizingData w{{0, 1}, Mat::from_rows({{0, 1}, {1, 0}}, 2)};
    CHECK(verify_symmetrizing(K, w));
    auto a2 = is_symmetric(fixture::algebra("a2.quiver"));
    CHECK(a2.verdict.is_refuted());
    CHECK(is_symmetric(matrix_algebra()).verdict.is_certified());
    auto f2 = is_symmetric(fixture::algebra("f2.quiver"));
    CHECK(f2.verdict.is_refuted());
}

TEST_CASE("opposite, products, centrality")
{
    auto K = fixture::algebra("kx3.quiver");
    auto O = opposite(K);
    CHECK(O.table.size() == K.table.size());
    for (std::size_t i = 0; i < K.table.size(); ++i) {
        CHECK(O.table[i].size() == K.table[i].size());
        for (std::size_t k = 0; k < K.table[i].size(); ++k)
            CHECK((O.table[i][k].idx == K.table[i][k].idx && O.table[i][k].coeff == K.table[i][k].coeff));
    }
    auto A = fixture::algebra("example1.quiver");
    auto rs = fixture::system("example1.quiver");
    Vec e = vertex_sum(rs, {3, 4});
    CHECK_FALSE(centrality_failure(A, e, e));
    Vec sigma = combo_to_vec(rs, parse_combo(rs.pres, "sigma"));
    CHECK(centrality_failure(A, e, A.add(e, sigma)));
    auto B = fixture::algebra("a2.quiver");
    CHECK(simple_count(direct_product(A, B)) == simple_count(A) + simple_count(B));
}

TEST_CASE("JSON round trip is bit exact")
{
    for (const char* name : {"example1.quiver", "f2.quiver"}) {
        auto A = fixture::algebra(name);
        auto s = algebra_to_json(A);
        auto B = algebra_from_json(s);
        CHECK(algebra_to_json(B) == s);
        CHECK(B.dim == A.dim);
    }
    auto P = fixture::from_text("field F 7\nvertex 1\narrow x : 1 -> 1\nrelation x.x.x = 0\n");
    CHECK(algebra_to_json(algebra_from_json(algebra_to_json(P))) == algebra_to_json(P));
}

TEST_CASE("primitive refinement of a coarse family")
{
    auto A = fixture::algebra("example1.quiver");
    A.idems = {A.unit};
    auto B = A;  // fresh cache
    const auto& prims = B.primitives();
    CHECK(prims.size() == 5);
    Vec sum(B.dim);
    for (std::size_t i = 0; i < prims.size(); ++i) {
        sum = B.add(sum, prims[i]);
        for (std::size_t j = 0; j < prims.size(); ++j) {
            Vec p = B.mul(prims[i], prims[j]);
            CHECK((i == j ? p == prims[i] : is_zero(p)));
        }
    }
    CHECK(sum == B.unit);
    CHECK(B.class_representatives().size() == 5);
}
