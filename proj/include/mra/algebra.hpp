#pragma once

#include "mra/linalg.hpp"
#include "mra/verdict.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mra {

struct Term {
    std::size_t idx;
    Scalar coeff;
};

// Raised when the semisimple part of an algebra has a block that is not a
// full matrix algebra over the ground field, or is not basic where basic is needed.
class NonSplitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AlgebraCache;

// Finite-dimensional algebra given by structure constants.
// b_i * b_j = sum_k table[i*dim+j][..] b_k.
class Algebra {
public:
    Algebra();
    Algebra(const Algebra& o);
    Algebra& operator=(const Algebra& o);
    Algebra(Algebra&&) noexcept;
    Algebra& operator=(Algebra&&) noexcept;
    ~Algebra();

    Field field;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Term>> table;
    Vec unit;
    std::vector<Vec> idems;
    std::string provenance;
    // Known radical (e.g. the arrow ideal of a path algebra quotient).
    std::optional<Subspace> radical_hint;

    const std::vector<Term>& product(std::size_t i, std::size_t j) const { return table[i * dim + j]; }
    Vec zero() const { return Vec(dim); }
    Vec basis(std::size_t i) const { return unit_vec(dim, i); }
    Vec mul(const Vec& x, const Vec& y) const;
    Vec add(const Vec& x, const Vec& y) const { return vec_add(field, x, y); }
    Vec sub(const Vec& x, const Vec& y) const { return vec_sub(field, x, y); }
    Vec scale(const Scalar& s, const Vec& x) const { return vec_scale(field, s, x); }
    bool is_idempotent(const Vec& x) const { return mul(x, x) == x; }

    // Matrix of y -> x*y and of y -> y*x on the basis.
    Mat left_mult(const Vec& x) const;
    Mat right_mult(const Vec& x) const;
    const Mat& left_basis_mult(std::size_t i) const;
    const Mat& right_basis_mult(std::size_t i) const;

    // Span of x*A, A*x, x*A*y.
    Subspace left_ideal_span(const Vec& x) const;   // A x
    Subspace right_ideal_span(const Vec& x) const;  // x A
    Subspace two_sided_span(const Vec& x, const Vec& y) const;  // x A y
    Subspace ideal_generated(const std::vector<Vec>& gens) const;  // A gens A
    Subspace product_span(const Subspace& U, const Subspace& V) const;  // span{uv}

    // Lazily computed, cached structure.
    const Subspace& radical() const;
    const std::vector<Vec>& primitives() const;
    // primitive index -> index of the family member it refines
    const std::vector<std::size_t>& primitive_parent() const;
    // class index of each primitive; representatives are first members
    const std::vector<std::size_t>& primitive_class() const;
    const std::vector<std::size_t>& class_representatives() const;
    const std::vector<Vec>& generators() const;

private:
    void fill_mult_cache() const;
    mutable std::shared_ptr<AlgebraCache> cache_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Ordered pair of maps realising a subspace or corner as its own algebra.
struct CornerData {
    Algebra corner;
    Mat embed;     // dim A x dim corner
    Mat compress;  // dim corner x dim A, x -> coords of e x e
};

std::optional<std::string> check_associative(const Algebra& A);
std::optional<std::string> check_unit(const Algebra& A);
std::optional<std::string> check_idempotent_family(const Algebra& A);

// Table from a product callback returning coordinates.
std::vector<std::vector<Term>> table_from_products(std::size_t m,
                                                   const std::function<Vec(std::size_t, std::size_t)>& prod);
std::vector<std::string> generic_labels(const std::string& prefix, std::size_t m);

Algebra make_algebra(Field f, std::size_t dim, std::vector<std::string> labels,
                     std::vector<std::vector<Term>> table, Vec unit, std::vector<Vec> idems, std::string provenance);

// Algebra on a subspace closed under multiplication (containing some unit u).
CornerData subalgebra(const Algebra& A, const Subspace& S, const Vec& unit, std::string provenance);
CornerData corner(const Algebra& A, const Vec& e);
struct QuotientAlgebra {
    Algebra algebra;
    Quotient q;
};
QuotientAlgebra quotient_algebra(const Algebra& A, const Subspace& ideal, std::string provenance);

Subspace radical(const Algebra& A);
Subspace center(const Algebra& A);
std::vector<Vec> central_idempotents(const Algebra& A, std::uint64_t seed = 0);
std::size_t simple_count(const Algebra& A);
bool is_basic(const Algebra& A);
std::vector<std::vector<long>> cartan_matrix(const Algebra& A);

struct SymmetrizingData {
    Vec functional;
    Mat gram;
};
struct SymmetryResult {
    Verdict verdict;
    std::optional<SymmetrizingData> witness;
};
SymmetryResult is_symmetric(const Algebra& A, int trials = 16, std::uint64_t seed = 0);
bool verify_symmetrizing(const Algebra& A, const SymmetrizingData& w);

Algebra direct_product(const Algebra& A, const Algebra& B);
Algebra opposite(const Algebra& A);
// Returns the offending basis label when lambda is not central in eAe.
std::optional<std::string> centrality_failure(const Algebra& A, const Vec& e, const Vec& lambda);

// Split a commutative semisimple algebra into primitive idempotents (coords in Z).
std::vector<Vec> split_commutative(const Algebra& Z, std::uint64_t seed);
// Lift an idempotent modulo a nilpotent ideal: x <- 3x^2 - 2x^3 until stable.
Vec lift_idempotent(const Algebra& A, Vec x);

// Minimal polynomial of x in A (coefficients low to high, monic).
std::vector<Scalar> minimal_polynomial(const Algebra& A, const Vec& x);
// Distinct roots in the ground field of a squarefree polynomial.
std::vector<Scalar> field_roots(const Field& f, const std::vector<Scalar>& poly);

std::string algebra_to_json(const Algebra& A);
Algebra algebra_from_json(const std::string& text);

// Support helpers.
Vec element_from_subset(const Algebra& A, const std::vector<std::size_t>& family_indices);
bool is_unit_element(const Algebra& A, const Vec& x);

}  // namespace mra
