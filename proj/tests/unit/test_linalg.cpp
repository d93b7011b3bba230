#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mra/linalg.hpp"
#include "mra/rng.hpp"

using namespace mra;

namespace {

Mat random_mat(Rng& rng, std::size_t r, std::size_t c, Field f, long span)
{
    Mat m(r, c, f);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng.range(0, 2) != 0)
                m.set(i, j, Scalar(rng.range(-span, span)));
    return m;
}

}  // namespace

TEST_CASE("rank of basic shapes")
{
    CHECK(rank(Mat::identity(2)) == 2);
    CHECK(rank(Mat(3, 4)) == 0);
    CHECK(rank(Mat::from_rows({{1, 2}, {2, 4}}, 2)) == 1);
}

TEST_CASE("kernel basis")
{
    CHECK(kernel_basis(Mat::identity(3)).empty());
    CHECK(kernel_basis(Mat(2, 3)).size() == 3);
    auto k = kernel_basis(Mat::from_rows({{1, 1}}, 2));
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == -k[0][1]);
    CHECK(k[0][0] != 0);
}

TEST_CASE("solve")
{
    Vec b{3, -7};
    auto x = solve(Mat::identity(2), b);
    REQUIRE(x);
    CHECK(*x == b);
    CHECK_FALSE(solve(Mat(2, 2), Vec{1, 0}));
    auto h = solve(Mat::from_rows({{2}}, 1), Vec{1});
    REQUIRE(h);
    CHECK((*h)[0] == Scalar(1, 2));
    CHECK_THROWS_AS(solve(Mat::identity(2), Vec{1, 2, 3}), DimensionError);
}

TEST_CASE("quotient space")
{
    auto q0 = quotient_space(3, {});
    CHECK(q0.projection == Mat::identity(3));
    auto q1 = quotient_space(2, {{1, 0}, {0, 1}});
    CHECK(q1.dim() == 0);
    auto q2 = quotient_space(2, {{1, -1}});
    CHECK(q2.dim() == 1);
    CHECK(is_zero(q2.project(Vec{1, -1})));
    CHECK(q2.projection * q2.section == Mat::identity(1));
}

TEST_CASE("prime field arithmetic stays canonical")
{
    Field f = Field::prime(7);
    CHECK(f.canon(Scalar(-1)) == 6);
    CHECK(f.canon(Scalar(1, 2)) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK_THROWS(Field::prime(9));
    Mat m = Mat::from_rows({{1, 2}, {3, 6}}, 2, f);
    CHECK(rank(m) == 1);
    Mat n = Mat::from_rows({{1, 2}, {3, 5}}, 2, f);
    auto inv = inverse(n);
    REQUIRE(inv);
    CHECK(n * *inv == Mat::identity(2, f));
}

TEST_CASE("subspace operations")
{
    Subspace a = Subspace::span(3, {{1, 0, 0}, {0, 1, 0}});
    Subspace b = Subspace::span(3, {{0, 1, 0}, {0, 0, 1}});
    CHECK(a.intersect(b).dim() == 1);
    CHECK(a.sum(b).dim() == 3);
    Vec v{2, 5, 0};
    CHECK(a.contains(v));
    auto c = a.coords(v);
    Vec back(3);
    for (std::size_t i = 0; i < a.dim(); ++i)
        vec_axpy(Field(), back, c[i], a.basis()[i]);
    CHECK(back == v);
}

TEST_CASE("property: rank-nullity and solve over seeded matrices")
{
    Rng rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        Field f = trial % 3 == 0 ? Field::prime(5) : Field::rationals();
        std::size_t r = static_cast<std::size_t>(rng.range(1, 6)), c = static_cast<std::size_t>(rng.range(1, 6));
        Mat m = random_mat(rng, r, c, f, 4);
        auto ker = kernel_basis(m);
        CHECK(rank(m) + ker.size() == c);
        for (const auto& k : ker)
            CHECK(is_zero(m * k));
        Vec x(c);
        for (auto& e : x)
            e = f.canon(Scalar(rng.range(-3, 3)));
        Vec b = m * x;
        auto s = solve(m, b);
        REQUIRE(s);
        CHECK(m * *s == b);
        std::vector<Vec> rels;
        for (std::size_t i = 0; i < r; ++i)
            rels.push_back(m.row(i));
        auto q = quotient_space(c, rels, f);
        CHECK(q.dim() == c - rank(m));
        CHECK(rank(q.projection) == q.dim());
        CHECK(q.projection * q.section == Mat::identity(q.dim(), f));
        for (const auto& rv : rels)
            CHECK(is_zero(q.project(rv)));
    }
}
