#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "mra/mirror.hpp"
#include "mra/stratification.hpp"

using namespace mra;

namespace {

struct Fixture {
    AlgebraPtr A;
    RewriteSystem rs;
    Vec vertices(const std::vector<int>& vs) const { return vertex_sum(rs, vs); }
};

Fixture load(const std::string& name)
{
    auto rs = fixture::system(name);
    return {share(structure_constants(rs)), rs};
}

AlgebraPtr text(const std::string& t)
{
    return share(fixture::from_text(t));
}

const char* kA2 = "field Q\nvertex 1 2\narrow a : 1 -> 2\n";
const char* kA3 = "field Q\nvertex 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n";

// Heredity ideal oracle: AeA = Ae, so it is left projective, and eAe is a field.
bool heredity_by_hand(const Algebra& A, const Vec& e)
{
    Subspace I = A.ideal_generated({e});
    Subspace Ae = A.left_ideal_span(e);
    return I == Ae && A.two_sided_span(e, e).dim() == 1 && A.product_span(I, I) == I;
}

}  // namespace

TEST_CASE("n-idempotent ideals")
{
    SUBCASE("generating idempotent is trivially strong")
    {
        Fixture f = load("f2.quiver");
        auto v = n_idempotent(f.A, f.A->unit, 4);
        CHECK(v.strong());
        CHECK(v.trivial);
    }
    SUBCASE("mirror ideal is 2- but not 3-idempotent")
    {
        Fixture f = load("f2.quiver");
        MirrorData m = mirror_reflective(f.A, f.vertices({0}));
        auto two = n_idempotent(m.R, m.ebar, 2);
        CHECK(two.kind == StrongIdemVerdict::Kind::NIdempotentUpTo);
        CHECK(two.degree == 2);
        auto three = n_idempotent(m.R, m.ebar, 3);
        CHECK(three.refuted());
        CHECK(three.degree == 1);
        CHECK(tor_corner(m.R, m.ebar, 1) == 1);
        auto strong = strong_idempotent(m.R, m.ebar, 6);
        CHECK(strong.refuted());
        CHECK(strong.degree == 1);
    }
    SUBCASE("zero is an explicit trivial case")
    {
        Fixture f = load("f2.quiver");
        auto v = strong_idempotent(f.A, f.A->zero(), 4);
        CHECK(v.strong());
        CHECK(v.trivial);
    }
    CHECK_THROWS_AS(n_idempotent(load("a2.quiver").A, load("a2.quiver").A->unit, 0), std::invalid_argument);
}

TEST_CASE("idempotency degree by Tor and by Ext of the quotient")
{
    SUBCASE("mirror ideal")
    {
        Fixture f = load("f2.quiver");
        MirrorData m = mirror_reflective(f.A, f.vertices({0}));
        auto tor = idempotency_via_tor(m.R, m.ebar, 4);
        auto ext = idempotency_via_ext(m.R, m.ebar, 5);
        CHECK(tor.bounded);
        CHECK(ext.bounded);
        CHECK(tor.degree == 2);
        CHECK(ext.degree == tor.degree);
        CHECK(tor.witness[1] == 1);
        CHECK(ext.witness[1] == 0);
        CHECK(ext.witness[2] == 0);
        CHECK(ext.witness[3] != 0);
        auto verdict = n_idempotent(m.R, m.ebar, 3);
        CHECK(tor.degree == 1 + verdict.degree);
    }
    SUBCASE("every vertex set of the fixtures")
    {
        // Tor up to cap-1 and Ext up to cap both certify degree cap when nothing appears.
        const int cap = 4;
        for (const char* name : {"a2.quiver", "f2.quiver", "kx2.quiver", "example1.quiver"}) {
            Fixture f = load(name);
            std::size_t n = f.rs.pres.quiver.vertices.size();
            for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
                std::vector<int> vs;
                for (std::size_t v = 0; v < n; ++v)
                    if (mask >> v & 1u)
                        vs.push_back(static_cast<int>(v));
                Vec e = f.vertices(vs);
                auto tor = idempotency_via_tor(f.A, e, cap - 1);
                auto ext = idempotency_via_ext(f.A, e, cap);
                CAPTURE(name);
                CAPTURE(mask);
                CHECK(tor.degree == ext.degree);
                CHECK(tor.bounded == ext.bounded);
            }
        }
    }
    CHECK_THROWS_AS(idempotency_via_ext(load("a2.quiver").A, load("a2.quiver").A->unit, 0), std::invalid_argument);
}

TEST_CASE("strong idempotents along the hereditary chain")
{
    AlgebraPtr A = text(kA2);
    auto rs = complete_rewrite(parse_presentation(kA2));
    Vec e2 = vertex_sum(rs, {1});
    REQUIRE(heredity_by_hand(*A, e2));
    auto v = strong_idempotent(A, e2, 4);
    CHECK(v.strong());
    CHECK(v.reason == "left-projective");
    CHECK_FALSE(v.trivial);

    AlgebraPtr B = text(kA3);
    auto rs3 = complete_rewrite(parse_presentation(kA3));
    Vec e3 = vertex_sum(rs3, {2});
    REQUIRE(heredity_by_hand(*B, e3));
    CHECK(strong_idempotent(B, e3, 4).strong());
    CornerData cd = corner(*B, vertex_sum(rs3, {0, 1}));
    AlgebraPtr C = share(cd.corner);
    Vec e2c = cd.compress * vertex_sum(rs3, {1});
    REQUIRE(heredity_by_hand(*C, e2c));
    CHECK(strong_idempotent(C, e2c, 4).strong());
}

TEST_CASE("strong idempotents pass to corners containing them")
{
    for (const char* name : {"a2.quiver", "f2.quiver", "kx3.quiver", "semisimple2.quiver"}) {
        Fixture f = load(name);
        int n = static_cast<int>(f.rs.pres.quiver.vertices.size());
        for (int em = 1; em < (1 << n); ++em)
            for (int fm = em; fm < (1 << n); ++fm) {
                if ((em & fm) != em)
                    continue;
                std::vector<int> ev, fv;
                for (int v = 0; v < n; ++v) {
                    if (em & (1 << v))
                        ev.push_back(v);
                    if (fm & (1 << v))
                        fv.push_back(v);
                }
                Vec e = f.vertices(ev);
                if (!strong_idempotent(f.A, e, 6).strong())
                    continue;
                CornerData cd = corner(*f.A, f.vertices(fv));
                INFO(name << " e=" << em << " f=" << fm);
                CHECK(strong_idempotent(share(cd.corner), cd.compress * e, 6).strong());
            }
    }
}

TEST_CASE("stratified dimension")
{
    SUBCASE("local algebra")
    {
        auto r = stratified_dimension(load("kx2.quiver").A, 6);
        CHECK(r.lo == 0);
        CHECK(r.hi == 0);
        auto q = stratified_ratio(r);
        CHECK(q.lo == 0);
        CHECK(q.hi == 0);
    }
    SUBCASE("hereditary A2 is fully stratified")
    {
        auto r = stratified_dimension(text(kA2), 6);
        CHECK(r.lo == 1);
        CHECK(r.hi == 1);
        CHECK(r.witness.size() == 2);
        CHECK(r.witness[1].verdict.strong());
        auto q = stratified_ratio(r);
        CHECK(q.lo == Scalar(1, 2));
        CHECK(q.hi == Scalar(1, 2));
    }
    SUBCASE("product of two local algebras")
    {
        Algebra L = *load("kx2.quiver").A;
        auto r = stratified_dimension(share(direct_product(L, L)), 6);
        CHECK(r.lo == 1);
        CHECK(r.hi == 1);
    }
    SUBCASE("k^3")
    {
        auto r = stratified_dimension(text("field Q\nvertex 1 2 3\n"), 4);
        CHECK(r.lo == 2);
        CHECK(r.hi == 2);
        CHECK(stratified_ratio(r).lo == Scalar(2, 3));
    }
    SUBCASE("additivity over products when both sides are tight")
    {
        AlgebraPtr A = text(kA2);
        auto ra = stratified_dimension(A, 6);
        REQUIRE(ra.lo == ra.hi);
        auto r = stratified_dimension(share(direct_product(*A, *A)), 6);
        CHECK(r.lo == 2 * ra.lo + 1);
        CHECK(r.hi == 2 * ra.hi + 1);
    }
    SUBCASE("upper bound by the number of simples")
    {
        for (const char* name : {"f2.quiver", "example1.quiver", "kx3.quiver", "semisimple2.quiver"}) {
            auto r = stratified_dimension(load(name).A, 4);
            INFO(name);
            CHECK(r.lo <= r.hi);
            CHECK(r.hi <= static_cast<long>(r.simples) - 1);
        }
    }
    SUBCASE("search limit")
    {
        CHECK_THROWS_AS(stratified_dimension(text("field Q\nvertex 1 2 3\n"), 4, 2), SearchLimitError);
    }
}

TEST_CASE("gendo-symmetric certification")
{
    SUBCASE("Auslander fixture")
    {
        Fixture f = load("f2.quiver");
        GendoResult g = gendo_symmetric(f.A, 8);
        CHECK(g.verdict.is_certified());
        REQUIRE(g.idem.has_value());
        CHECK(*g.idem == f.vertices({0}));
        CHECK(g.faithful);
        CornerData cd = corner(*f.A, *g.idem);
        CHECK(is_symmetric(cd.corner).verdict.is_certified());
    }
    SUBCASE("hereditary A2")
    {
        AlgebraPtr A = text(kA2);
        GendoResult g = gendo_symmetric(A, 8);
        CHECK(g.verdict.is_refuted());
        CHECK(g.domdim.is_certified());
        CHECK(g.domdim.value == 1);
    }
    SUBCASE("symmetric algebra uses the unit")
    {
        Fixture f = load("kx2.quiver");
        GendoResult g = gendo_symmetric(f.A, 8);
        CHECK(g.verdict.is_certified());
        REQUIRE(g.idem.has_value());
        CHECK(*g.idem == f.A->unit);
    }
}

TEST_CASE("Auslander-Gorenstein conditions")
{
    Fixture f = load("f2.quiver");
    CHECK(global_dimension(f.A, 8).value == 2);
    CHECK(n_auslander(f.A, 1, 8).is_certified());
    CHECK(n_auslander(f.A, 2, 8).is_refuted());
    CHECK(minimal_auslander_gorenstein(f.A, 1, 8).is_certified());

    Fixture d = load("kx2.quiver");
    Verdict si = minimal_auslander_gorenstein(d.A, 1, 8);
    CHECK(si.is_certified());
    CHECK(si.reason == "self-injective");

    AlgebraPtr ss = load("semisimple2.quiver").A;
    CHECK(n_auslander(ss, 0, 6).is_certified());
    CHECK(dominant_dimension(ss, 6).is_unknown());
    CHECK_THROWS_AS(n_auslander(ss, 3, 4), std::invalid_argument);
}

TEST_CASE("ortho-symmetric modules over the dual numbers")
{
    Fixture f = load("kx2.quiver");
    Module k = simple_module(f.A, 0);
    // Explicit orbit: Omega k is the radical of k[x]/(x^2), which is k again.
    CHECK(syzygy(k, 1).dim == 1);
    CHECK(ortho_symmetric(f.A, k, 0, 6).is_certified());
    Verdict one = ortho_symmetric(f.A, k, 1, 6);
    CHECK(one.is_refuted());
    CHECK(ext(k, k, 1) == 1);
    CHECK_THROWS_AS(ortho_symmetric(f.A, regular_module(f.A), 0, 6), std::invalid_argument);
    CHECK_THROWS_AS(ortho_symmetric(load("a2.quiver").A, simple_module(load("a2.quiver").A, 0), 0, 6),
                    std::invalid_argument);
}
