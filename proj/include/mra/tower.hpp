#pragma once

#include "mra/algebra.hpp"
#include "mra/mirror.hpp"
#include "mra/module.hpp"
#include "mra/verdict.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mra {

enum class ContextSide { Left, Right };

// Left form [[R, I], [R/J, R/J]], right form [[R, R/I], [J, R/I]], with the canonical
// bimodule maps. Basis order: R, top right, bottom left, bottom right.
struct MoritaContext {
    ContextSide side = ContextSide::Left;
    AlgebraPtr base;
    Subspace I, J;
    AlgebraPtr algebra;
    Vec idem;  // the bottom right unit
    std::size_t block[4] = {0, 0, 0, 0};
};

// Throws std::invalid_argument when IJ != 0.
MoritaContext morita_context(AlgebraPtr R, const Subspace& I, const Subspace& J, ContextSide side);

// Module structure on a subspace X of A through an algebra map pi: R -> A (dim A x dim R).
Module pulled_back_module(AlgebraPtr R, const Algebra& A, const Mat& pi, const Subspace& X, std::string label);

struct TowerLevel {
    int n = 0;
    AlgebraPtr A, B;
    Vec e, f;
    MirrorData mirror_a;    // R_n = R(A_n, e_n)
    MirrorData mirror_b;    // R(B_n, f_n)
    ReducedMirror reduced;  // S_n
    Subspace K, L;          // ideals of S_n
    Mat b0_map;             // (1-f_n)B_n(1-f_n), corner coordinates -> B_0
    const AlgebraPtr& R() const { return mirror_a.R; }
    const AlgebraPtr& S() const { return reduced.S; }
};

struct Tower {
    AlgebraPtr base;
    Vec idem;
    AlgebraPtr corner;  // eAe
    AlgebraPtr b0;      // (1-e)A(1-e)
    std::size_t simples_base = 0, simples_corner = 0, simples_b0 = 0;
    std::size_t budget = 400;
    std::vector<TowerLevel> levels;
    bool partial = false;
    std::string stop_reason;
};

inline constexpr std::size_t kTowerBudget = 400;

// Level 1. Throws std::invalid_argument when e is zero or Ae is a generator.
Tower start_tower(AlgebraPtr A, const Vec& e, std::size_t budget = kTowerBudget);
// Appends level n+1; returns false and marks the tower partial when the budget is exceeded.
// Throws std::logic_error naming the failing identity.
bool tower_step(Tower& t);
Tower build_tower(AlgebraPtr A, const Vec& e, int levels, std::size_t budget = kTowerBudget);

struct TowerCheck {
    int level = 0;
    std::string name;
    Verdict verdict;
};

// Simple counts against the Grothendieck group formulas, and the Morita context cross-checks.
std::vector<TowerCheck> counting_report(const Tower& t);
// Symmetry of R_n and S_n, gendo-symmetry of A_n and B_n, the B_0 corner and projective-free restriction.
std::vector<TowerCheck> invariant_report(const Tower& t, int cap, std::uint64_t seed = 0);
// dm(A_{n+1}) >= dm(A_n) + 2, likewise for B, and the Auslander degree propagation.
std::vector<TowerCheck> domdim_growth_report(const Tower& t, int cap);
// Global dimension bounds along the tower.
std::vector<TowerCheck> dimension_bound_report(const Tower& t, int cap);
// Stratified dimension bounds for R_n and S_n; levels with algebras larger than dim_limit are skipped.
std::vector<TowerCheck> strat_bound_report(const Tower& t, int cap, std::size_t dim_limit = 16);

}  // namespace mra
