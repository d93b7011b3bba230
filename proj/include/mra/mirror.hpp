#pragma once

#include "mra/algebra.hpp"
#include "mra/linalg.hpp"
#include "mra/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mra {

// A-A-bimodule M with an associative bimodule multiplication M x M -> M.
// left[i], right[i]: x -> b_i x and x -> x b_i for the basis elements b_i of A.
struct BimoduleMult {
    std::size_t dim = 0;
    std::vector<Mat> left, right;
    std::vector<std::vector<Term>> alpha;  // m_s * m_t, indexed s*dim+t
    std::vector<std::string> labels;
};

// Bimodule axioms, balancing of alpha and associativity of alpha.
// Exhaustive up to exhaustive_limit, sampled with the seed above it.
std::optional<std::string> check_bimodule_mult(const Algebra& A, const BimoduleMult& bm,
                                               std::size_t exhaustive_limit = 20, std::uint64_t seed = 0);
// Algebra on A + M with (a,m)(b,n) = (ab, an + mb + alpha(m,n)). Throws on a failed check.
Algebra extension_algebra(const Algebra& A, const BimoduleMult& bm, std::string provenance = "extension");

// The bimodule Ae (x) eA over the corner eAe, with multiplication twisted by a level.
struct CornerTensor {
    AlgebraPtr ambient;
    Vec idem;
    Vec level;
    CornerData corner;
    Subspace left_space;   // Ae
    Subspace right_space;  // eA
    Quotient q;            // ambient index i * right_space.dim() + j
    BimoduleMult mult;
    Mat multiply;          // dim A x dim T, x (x) y -> xy
    std::size_t dim() const { return mult.dim; }
    // Coordinates of x (x) y for x in Ae, y in eA given as elements of A.
    Vec pure(const Vec& x, const Vec& y) const;
};

CornerTensor corner_tensor(AlgebraPtr A, const Vec& e, const Vec& level);
// Balancing and the explicit product rule on all pairs of pure basis tensors.
std::optional<std::string> check_corner_tensor(const CornerTensor& t);

struct IdentityCheck {
    std::string name;
    bool holds = false;
};

struct MirrorData {
    CornerTensor tensor;
    AlgebraPtr R;
    Mat include;  // dim R x dim A
    Vec ebar;     // e (x) e
    Vec e0;       // (1 - e) + ebar
    Mat pi1, pi2; // dim A x dim R
    Mat phi;      // dim R x dim R
    Subspace I, J;
};

MirrorData mirror_reflective(AlgebraPtr A, const Vec& e, const Vec& level);
MirrorData mirror_reflective(AlgebraPtr A, const Vec& e);
// Ideal identities, the maps, restriction bijections and the simple count.
std::vector<IdentityCheck> mirror_checks(const MirrorData& m);
// Right annihilator of I in R: {r : I r = 0}.
Subspace right_annihilator(const Algebra& R, const Subspace& I);
bool right_faithful(const Algebra& A, const Subspace& X);

struct ReducedMirror {
    AlgebraPtr S;
    Mat embed;     // dim R x dim S
    Mat compress;  // dim S x dim R
    Mat pi1;       // dim A x dim S, image (1-e)A(1-e)
    Mat pi2;       // dim A x dim S
};
ReducedMirror reduced_mirror(const MirrorData& m);
std::vector<IdentityCheck> reduced_checks(const MirrorData& m, const ReducedMirror& s);

// Algebra map R -> G extending alpha (dim G x dim A) and sending ebar to x.
Mat lift_homomorphism(const MirrorData& m, const Algebra& G, const Mat& alpha, const Vec& x);
bool is_algebra_map(const Algebra& src, const Algebra& dst, const Mat& f);

// Isomorphism R(A,e,level) -> R(A,e,level * mu) for a central unit mu of eAe.
Mat level_isomorphism(const MirrorData& from, const MirrorData& to, const Vec& mu);

// eA as a (eAe, A)-bimodule, D(Ae) likewise, and a bimodule isomorphism between them.
struct CornerDuality {
    Bimodule right_part;  // eA
    Bimodule dual_left;   // D(Ae), dual basis of the Ae basis of left_ideal_span(e)
    std::optional<Mat> iota;
    Verdict verdict;
};
CornerDuality corner_duality(AlgebraPtr A, const Vec& e, int trials = 16, std::uint64_t seed = 0);

// Symmetrizing form on R built from the corner duality; throws if iota is not an isomorphism.
SymmetrizingData symmetrizing_pipeline(const MirrorData& m, const CornerDuality& d);

struct TrivialExtensionLike {
    AlgebraPtr algebra;  // A + D(A), D(A) in the dual basis of A
    Mat gamma_bar;       // dim 2A x dim R
    Vec level_lift;      // central element of A cutting down to the level
};
TrivialExtensionLike trivial_extension_compare(const MirrorData& m, const CornerDuality& d);

}  // namespace mra
