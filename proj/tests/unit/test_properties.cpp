#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "random_presentation.hpp"

using namespace mra;

TEST_CASE("random presentations stay within the size bounds and complete")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Presentation p = parse_presentation(randomq::presentation_text(seed));
        CAPTURE(seed);
        CHECK(p.quiver.vertices.size() <= 4);
        CHECK(p.quiver.arrows.size() <= 6);
        CHECK(complete_rewrite(p, 30).complete);
        CHECK(randomq::presentation_text(seed) == randomq::presentation_text(seed));
    }
}

TEST_CASE("algebra laws, normal forms, mirrors and symmetry on random presentations")
{
    std::size_t mirrored = 0;
    for (std::uint64_t seed = 1000; seed < 1040; ++seed) {
        randomq::Outcome o = randomq::run_properties(seed);
        CAPTURE(seed);
        for (const auto& f : o.failures)
            FAIL_CHECK(f);
        if (seed % 8 == 0)
            CHECK(randomq::run_properties(seed).digest == o.digest);
        mirrored += o.mirrored ? 1 : 0;
    }
    CHECK(mirrored > 20);
}

TEST_CASE("a broken multiplication table is caught")
{
    randomq::Outcome o = randomq::run_properties(3);
    REQUIRE(o.failures.empty());
    Algebra A = structure_constants(complete_rewrite(parse_presentation(randomq::presentation_text(3)), 30));
    REQUIRE(A.dim >= 2);
    A.table[1 * A.dim + 1].push_back(Term{0, Scalar(1)});
    CHECK(check_associative(A).has_value());
}
