#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "mra/mirror_quiver.hpp"

#include <algorithm>

using namespace mra;

namespace {

Presentation load(const std::string& name)
{
    return load_presentation(fixture::path(name));
}

bool has_relation(const MirrorPresentation& mp, std::size_t family, const std::string& text)
{
    Combo c = parse_combo(mp.delta, text);
    const auto& fam = mp.families[family];
    Combo neg = combo_scale(mp.delta.field, Scalar(-1), c);
    return std::find(fam.begin(), fam.end(), c) != fam.end() || std::find(fam.begin(), fam.end(), neg) != fam.end();
}

}  // namespace

TEST_CASE("example quiver mirrored at 4 and 5")
{
    Presentation pres = load("example1.quiver");
    MirrorPresentation mp = mirror_quiver(pres, resolve_vertices(pres, "4+5"));
    CHECK(mp.delta.quiver.vertices.size() == 7);
    CHECK(mp.delta.quiver.arrows.size() == 13);
    CHECK(mp.delta.quiver.vertex_index("4'").has_value());
    CHECK(mp.delta.quiver.arrow_index("tau'").has_value());
    CHECK_FALSE(mp.delta.quiver.arrow_index("alpha'").has_value());

    SUBCASE("mixed monomials")
    {
        CHECK(mp.families[0].size() == 4);
        CHECK(has_relation(mp, 0, "delta.beta.tau'"));
        CHECK(has_relation(mp, 0, "delta'.beta.tau"));
        CHECK(has_relation(mp, 0, "delta.alpha.tau'"));
        CHECK(has_relation(mp, 0, "delta'.alpha.tau"));
    }
    SUBCASE("relations through the mirrored vertices and their copies")
    {
        CHECK(mp.families[1].size() == 4);
        CHECK(mp.families[2].size() == 4);
        CHECK(has_relation(mp, 2, "eta'.eta'"));
        CHECK(has_relation(mp, 2, "delta'.beta.tau'"));
    }
    SUBCASE("relations inside the kept subquiver pick up copies")
    {
        CHECK(mp.families[3].size() == 2);
        CHECK(has_relation(mp, 3, "alpha.gamma"));
        CHECK(has_relation(mp, 3, "beta.gamma - beta.tau.theta - beta.tau'.theta'"));
    }
    SUBCASE("plus map")
    {
        Combo d = plus_map(mp, parse_combo(pres, "delta"));
        CHECK(d == parse_combo(mp.delta, "delta + delta'"));
        CHECK(plus_map(mp, parse_combo(pres, "alpha")) == parse_combo(mp.delta, "alpha"));
        Combo sigma = parse_combo(pres, "beta.gamma - beta.tau.theta");
        CHECK(plus_relation(mp, sigma) == parse_combo(mp.delta, "beta.gamma - beta.tau.theta - beta.tau'.theta'"));
        Path p = parse_combo(pres, "delta.beta.tau").begin()->first;
        for (const auto& [q, s] : plus_map(mp, p)) {
            auto back = collapse(mp, q);
            CHECK((back ? *back == p : true));
            CHECK(bar_swap(mp, bar_swap(mp, q)) == q);
        }
    }
    SUBCASE("theta certificate")
    {
        ThetaCertificate c = certify_theta(pres, mp.v0);
        for (const auto& chk : c.checks) {
            INFO(chk.name);
            CHECK(chk.holds);
        }
        CHECK(c.delta->dim == c.source->dim + c.mirror.tensor.dim());
        CHECK(c.theta.rows() == c.mirror.R->dim);
    }
}

TEST_CASE("A2 mirrored at its sink")
{
    Presentation pres = load("a2.quiver");
    ThetaCertificate c = certify_theta(pres, {1});
    CHECK(c.presentation.delta.quiver.vertices.size() == 3);
    CHECK(c.presentation.delta.quiver.arrows.size() == 2);
    CHECK(c.delta->dim == 5);
    CHECK(simple_count(*c.delta) == 3);
}

TEST_CASE("mirroring every vertex")
{
    SUBCASE("single vertex splits into two isolated points")
    {
        Presentation pres = parse_presentation("field Q\nvertex 1\n");
        ThetaCertificate c = certify_theta(pres, {0});
        CHECK(c.presentation.delta.quiver.vertices.size() == 2);
        CHECK(c.presentation.delta.quiver.arrows.empty());
        CHECK(c.delta->dim == 2);
    }
    SUBCASE("F2 mirrored everywhere is two blocks")
    {
        Presentation pres = load("f2.quiver");
        ThetaCertificate c = certify_theta(pres, {0, 1});
        CHECK(c.delta->dim == 2 * c.source->dim);
        CHECK(central_idempotents(*c.delta).size() == 2);
        CHECK(c.presentation.families[0].empty());
        CHECK(c.presentation.families[3].empty());
    }
}

TEST_CASE("F2 mirrored at one vertex matches the direct mirror")
{
    Presentation pres = load("f2.quiver");
    ThetaCertificate c = certify_theta(pres, {0});
    CHECK(c.delta->dim == 10);
    CHECK(simple_count(*c.delta) == 3);
}

TEST_CASE("emitted presentation round-trips and mirrors again")
{
    Presentation pres = load("example1.quiver");
    MirrorPresentation mp = mirror_quiver(pres, {3, 4});
    Presentation again = parse_presentation(presentation_to_text(mp.delta));
    CHECK(again.quiver.vertices == mp.delta.quiver.vertices);
    CHECK(again.relations == mp.delta.relations);
    REQUIRE(again.idempotents.size() == 1);
    ThetaCertificate c = certify_theta(again, again.idempotents[0].vertices);
    CHECK(c.presentation.delta.quiver.vertices.size() == 9);
}

TEST_CASE("invalid vertex sets")
{
    Presentation pres = load("a2.quiver");
    CHECK_THROWS_AS(mirror_quiver(pres, {}), std::invalid_argument);
    CHECK_THROWS_AS(mirror_quiver(pres, {5}), std::invalid_argument);
    Presentation clash = parse_presentation("field Q\nvertex 1 1'\narrow a : 1 -> 1'\n");
    CHECK_THROWS_AS(mirror_quiver(clash, {0}), std::invalid_argument);
}
