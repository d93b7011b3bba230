#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "mra/stratification.hpp"
#include "mra/tower.hpp"

using namespace mra;

namespace {

struct Seed {
    AlgebraPtr A;
    Vec e;
};

Seed auslander_seed()
{
    auto rs = fixture::system("f2.quiver");
    return {share(structure_constants(rs)), vertex_sum(rs, {0})};
}

const Tower& three_levels()
{
    static const Tower t = [] {
        Seed s = auslander_seed();
        return build_tower(s.A, s.e, 3);
    }();
    return t;
}

void all_certified(const std::vector<TowerCheck>& checks)
{
    for (const auto& c : checks) {
        INFO("level " << c.level << ": " << c.name << " -> " << c.verdict.str());
        CHECK(c.verdict.is_certified());
    }
}

Subspace whole(const Algebra& A)
{
    std::vector<Vec> b;
    for (std::size_t i = 0; i < A.dim; ++i)
        b.push_back(A.basis(i));
    return Subspace::span(A.dim, b, A.field);
}

}  // namespace

TEST_CASE("Morita context algebras")
{
    Seed s = auslander_seed();
    MirrorData m = mirror_reflective(s.A, s.e);
    const Algebra& R = *m.R;

    SUBCASE("zero ideals give the triangular algebra")
    {
        Subspace zero(R.dim, R.field);
        MoritaContext c = morita_context(m.R, zero, zero, ContextSide::Left);
        CHECK(c.algebra->dim == 3 * R.dim);
        CHECK_FALSE(check_associative(*c.algebra).has_value());
        CHECK_FALSE(check_unit(*c.algebra).has_value());
        CHECK(simple_count(*c.algebra) == 2 * simple_count(R));
    }
    SUBCASE("mirror ideals, left form")
    {
        MoritaContext c = morita_context(m.R, m.I, m.J, ContextSide::Left);
        CHECK(c.algebra->dim == R.dim + m.I.dim() + 2 * (R.dim - m.J.dim()));
        CHECK_FALSE(check_associative(*c.algebra).has_value());
        CHECK(simple_count(*c.algebra) == 4);
        Subspace ideal = c.algebra->ideal_generated({c.idem});
        CHECK(is_projective(submodule(regular_module(c.algebra), ideal)));
    }
    SUBCASE("mirror ideals, right form")
    {
        MoritaContext c = morita_context(m.R, m.I, m.J, ContextSide::Right);
        CHECK(c.algebra->dim == R.dim + m.J.dim() + 2 * (R.dim - m.I.dim()));
        CHECK_FALSE(check_associative(*c.algebra).has_value());
        CHECK(simple_count(*c.algebra) == 4);
        AlgebraPtr op = share(opposite(*c.algebra));
        Subspace ideal = c.algebra->ideal_generated({c.idem});
        CHECK(is_projective(submodule(regular_module(op), ideal)));
    }
    SUBCASE("IJ must vanish")
    {
        CHECK_THROWS_AS(morita_context(m.R, whole(R), whole(R), ContextSide::Left), std::invalid_argument);
    }
}

TEST_CASE("tower of the Auslander fixture: simple counts")
{
    const Tower& t = three_levels();
    REQUIRE(t.levels.size() == 3);
    CHECK_FALSE(t.partial);
    CHECK(t.simples_corner == 1);
    CHECK(t.simples_base == 2);
    CHECK(t.simples_b0 == 1);
    std::size_t expect_r[] = {3, 7, 15}, expect_s[] = {2, 3, 4};
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(simple_count(*t.levels[k].R()) == expect_r[k]);
        CHECK(simple_count(*t.levels[k].S()) == expect_s[k]);
    }
    all_certified(counting_report(t));
}

TEST_CASE("tower of the Auslander fixture: symmetry and corners")
{
    Seed s = auslander_seed();
    Tower t = build_tower(s.A, s.e, 2);
    all_certified(invariant_report(t, 8));
}

TEST_CASE("tower of the Auslander fixture: dominant and global dimensions")
{
    Seed s = auslander_seed();
    Tower t = build_tower(s.A, s.e, 2);
    auto dm = domdim_growth_report(t, 8);
    all_certified(dm);
    bool five = false;
    for (const auto& c : dm)
        five = five || c.name == "A_2 is 5-Auslander";
    CHECK(five);
    CHECK(dominant_dimension(t.levels[1].A, 8).value >= 4);
    auto gd = dimension_bound_report(t, 8);
    all_certified(gd);
    CHECK(global_dimension(t.levels[1].A, 8).value <= 6);
    CHECK(global_dimension(t.levels[1].B, 8).value <= 4);
}

TEST_CASE("tower of the Auslander fixture: stratified bounds")
{
    const Tower& t = three_levels();
    auto r = strat_bound_report(t, 4);
    for (const auto& c : r) {
        INFO(c.name << " -> " << c.verdict.str());
        if (c.name.rfind("sd(S_", 0) == 0 && c.name.find("<=") != std::string::npos)
            CHECK(c.verdict.is_certified());
        if (c.name.find(">=") != std::string::npos)
            CHECK(c.verdict.is_unknown());
        CHECK_FALSE(c.verdict.is_refuted());
    }
    std::size_t s_upper = 0;
    for (const auto& c : r)
        if (c.name.rfind("sd(S_", 0) == 0 && c.name.find("<=") != std::string::npos)
            ++s_upper;
    CHECK(s_upper == 3);
}

TEST_CASE("degenerate seeds and the budget")
{
    AlgebraPtr ss = share(fixture::algebra("semisimple2.quiver"));
    CHECK_THROWS_AS(start_tower(ss, ss->unit), std::invalid_argument);
    Seed s = auslander_seed();
    CHECK_THROWS_AS(start_tower(s.A, s.A->zero()), std::invalid_argument);
    CHECK_THROWS_AS(start_tower(s.A, s.A->unit), std::invalid_argument);
    Tower t = build_tower(s.A, s.e, 3, 20);
    CHECK(t.partial);
    CHECK(t.levels.size() == 1);
    CHECK(t.stop_reason.find("budget") != std::string::npos);
}
