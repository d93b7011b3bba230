#pragma once

#include "mra/algebra.hpp"
#include "mra/linalg.hpp"
#include "mra/verdict.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mra {

AlgebraPtr share(Algebra A);
// Same structure constants and the same action generators.
bool same_algebra(const Algebra& a, const Algebra& b);

// Finite-dimensional left module. act[i] is the matrix of x -> g_i x for the
// i-th element of over->generators(); column vectors are module elements.
struct Module {
    AlgebraPtr over;
    AlgebraPtr over_op;  // optional: the opposite algebra, reused by dual()
    std::size_t dim = 0;
    std::vector<Mat> act;
    std::string label;
};

Module make_module(AlgebraPtr A, std::size_t dim, std::vector<Mat> act, std::string label = {});
// M viewed over R through an algebra map pi: R -> A (dim A x dim R).
Module restrict_scalars(AlgebraPtr R, const Mat& pi, const Module& M);
// Checks the action against every product of basis elements and the unit.
std::optional<std::string> check_module(const Module& M);
// Matrix of x -> a x for an arbitrary element a.
Mat act_element(const Module& M, const Vec& a);
Mat act_idempotent(const Module& M, const Vec& e);

// Direct sum of the left ideals A e_k, each with a basis grown from e_k by
// left multiplication with generators, so homomorphisms extend along the tree.
struct ProjectiveModule {
    Module module;
    std::vector<Vec> idems;            // e_k per summand
    std::vector<std::size_t> offsets;  // basis index of e_k in summand k
    std::vector<std::size_t> summand_of;
    std::vector<Vec> elems;            // element of A per basis vector
    std::vector<long> parent;          // -1 at a summand generator
    std::vector<std::size_t> via;      // generator index used to reach it
    std::size_t summands() const { return idems.size(); }
};

ProjectiveModule projective_sum(AlgebraPtr A, const std::vector<Vec>& idems);
Module regular_module(AlgebraPtr A);
Module projective(AlgebraPtr A, const Vec& e);
// One simple module per primitive class representative.
std::vector<Module> simple_modules(AlgebraPtr A);
Module simple_module(AlgebraPtr A, std::size_t cls);

Subspace generated_submodule(const Module& M, const std::vector<Vec>& seeds);
Subspace radical_submodule(const Module& M);
Module submodule(const Module& M, const Subspace& S);
Module quotient_module(const Module& M, const Subspace& S);
Module direct_sum(const std::vector<Module>& parts);
// k-dual, a left module over the opposite algebra; op may be supplied.
Module dual(const Module& M, AlgebraPtr op = nullptr);

bool is_homomorphism(const Module& M, const Module& N, const Mat& f);
// Basis of Hom(M, N) as matrices N.dim x M.dim.
std::vector<Mat> hom_space(const Module& M, const Module& N);
// Maps are written on the right: basis product a*b is "a then b".
// family: idempotent endomorphisms forming the idempotent family (default {id}).
Algebra end_algebra(const Module& M, const std::vector<Mat>& family = {});
struct EndAlgebra {
    Algebra algebra;
    std::vector<Mat> basis;  // endomorphism matrix of each basis element
};
EndAlgebra end_algebra_basis(const Module& M, const std::vector<Mat>& family = {});

struct Cover {
    ProjectiveModule P;
    Mat map;  // M.dim x P.dim
};
Cover projective_cover(const Module& M);
bool is_projective(const Module& M);
// Number of copies of A f (f the representative of class cls) as a direct summand.
std::size_t projective_multiplicity(const Module& M, std::size_t cls);
Module strip_projectives(const Module& M);
// n-th syzygy; n == 0 removes projective summands.
Module syzygy(const Module& M, std::size_t n);

struct Resolution {
    std::vector<ProjectiveModule> terms;  // P_0 .. P_n
    std::vector<Mat> maps;                // maps[0]: P_0 -> M, maps[i]: P_i -> P_{i-1}
    std::vector<Module> syzygies;         // syzygies[i] = Omega^i M, syzygies[0] = M
    bool terminated = false;              // a syzygy vanished inside the computed range
};
// Minimal projective resolution with terms P_0 .. P_length.
Resolution projective_resolution(const Module& M, std::size_t length);
std::optional<std::string> check_resolution(const Resolution& r, const Module& M);

// dim Ext^i(M, N) for i = 0..upto from a projective resolution of M.
std::vector<std::size_t> ext_dims(const Module& M, const Module& N, std::size_t upto);
std::size_t ext(const Module& M, const Module& N, std::size_t i);
// Same numbers through an injective coresolution of N (dual route).
std::vector<std::size_t> ext_dims_injective(const Module& M, const Module& N, std::size_t upto);

// Projective dimension: Certified(n), or UnknownBeyond(cap).
Verdict projective_dimension(const Module& M, int cap);

struct Periodicity {
    bool found = false;
    std::size_t start = 0;   // Omega^start M stripped of projectives
    std::size_t period = 0;  // Omega^(start+period) M isomorphic to it
    bool vanishes = false;   // some syzygy is zero
};
Periodicity find_periodicity(const Module& M, std::size_t cap, std::uint64_t seed = 0);

// Ext^i(M,M) = 0 for 1 <= i <= m: Certified-yes or Refuted at the first nonzero degree.
Verdict is_rigid(const Module& M, std::size_t m);
// Rigid up to cap; Certified-infinite only when the syzygy orbit closes.
Verdict is_orthogonal(const Module& M, std::size_t cap, std::uint64_t seed = 0);

// Tor_i over B of (X, Y), X a left module over B^op (a right B-module), Y a left B-module.
std::vector<std::size_t> tor_dims(const Module& X, const Module& Y, std::size_t upto);
// Tor_i^{eAe}(Ae, eA) for i = 0..upto.
std::vector<std::size_t> tor_corner_dims(AlgebraPtr A, const Vec& e, std::size_t upto);
std::size_t tor_corner(AlgebraPtr A, const Vec& e, std::size_t i);

struct CornerModules {
    AlgebraPtr corner;     // eAe
    AlgebraPtr corner_op;
    Mat embed;             // eAe -> A
    Module left_part;      // Ae as a left module over (eAe)^op
    Module right_part;     // eA as a left module over eAe
};
CornerModules corner_modules(AlgebraPtr A, const Vec& e);

struct IsoResult {
    Verdict verdict;
    std::optional<Mat> witness;  // target.dim x source.dim
};
IsoResult is_module_iso(const Module& M, const Module& N, int trials = 16, std::uint64_t seed = 0);

// Bimodule over (left, right); right_act[i] is x -> x g_i for right->generators().
struct Bimodule {
    AlgebraPtr left, right;
    std::size_t dim = 0;
    std::vector<Mat> left_act, right_act;
    std::string label;
};
// Subspace S of the ambient algebra A, acted on by embedded elements.
Bimodule sub_bimodule(const Algebra& A, const Subspace& S, AlgebraPtr left, const Mat& left_embed, AlgebraPtr right,
                      const Mat& right_embed, std::string label = {});
Bimodule dual(const Bimodule& X);
std::vector<Mat> bimodule_hom_space(const Bimodule& X, const Bimodule& Y);
IsoResult is_bimodule_iso(const Bimodule& X, const Bimodule& Y, int trials = 16, std::uint64_t seed = 0);

// Linear maps F: V -> W with F ops_v[i] = ops_w[i] F for all i.
std::vector<Mat> intertwiners(const std::vector<Mat>& ops_v, const std::vector<Mat>& ops_w, std::size_t dim_v,
                              std::size_t dim_w, const Field& f);

struct Hull {
    Module injective;
    Mat map;  // injective.dim x M.dim
};
Hull injective_hull(const Module& M);

Verdict dominant_dimension(AlgebraPtr A, int cap);
Verdict injective_dimension(AlgebraPtr A, int cap);
Verdict global_dimension(AlgebraPtr A, int cap);
bool is_generator_cogenerator(const Module& M);
// Dominant dimension of End(M) from Ext-vanishing of M; M must be a generator-cogenerator.
Verdict mueller_domdim(const Module& M, int cap);

}  // namespace mra
