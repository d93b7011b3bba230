#pragma once

#include "mra/algebra.hpp"
#include "mra/module.hpp"
#include "mra/verdict.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mra {

// Outcome of a strong or n-idempotency test for the ideal AeA.
// RefutedAt carries the first Tor degree i with Tor_i^{eAe}(Ae, eA) != 0 (the
// ideal is then (i+1)- but not (i+2)-idempotent); degree 0 means the
// multiplication map Ae (x) eA -> AeA is not injective.
struct StrongIdemVerdict {
    enum class Kind { CertifiedStrong, NIdempotentUpTo, RefutedAt };

    Vec idem;
    Kind kind = Kind::NIdempotentUpTo;
    long degree = 0;                // n for NIdempotentUpTo, Tor degree for RefutedAt
    std::string reason;             // certificate for CertifiedStrong
    bool trivial = false;           // e = 0 or AeA = A
    std::vector<std::size_t> tor;   // Tor_0 .. Tor_k computed along the way

    bool strong() const { return kind == Kind::CertifiedStrong; }
    bool refuted() const { return kind == Kind::RefutedAt; }
    std::string kind_name() const;
    std::string str() const;
};

StrongIdemVerdict n_idempotent(AlgebraPtr A, const Vec& e, int n);
// Certificates in order: one-sided projectivity, Tor closure over a syzygy period, bounded Tor.
StrongIdemVerdict strong_idempotent(AlgebraPtr A, const Vec& e, int cap, std::uint64_t seed = 0);

// Largest n with AeA n-idempotent, found along two independent routes. bounded is false
// when no obstruction appeared up to the cap, and degree is then a lower bound.
struct IdempotencyDegree {
    long degree = 0;
    bool bounded = false;
    std::vector<std::size_t> witness;  // Tor_i dims, or max over simples of Ext^i dims
};
// Multiplication map and Tor_i^{eAe}(Ae, eA) for 1 <= i <= cap.
IdempotencyDegree idempotency_via_tor(AlgebraPtr A, const Vec& e, int cap);
// Ext^i_A(A/AeA, Y) over the simple A/AeA-modules Y for 1 <= i <= cap.
IdempotencyDegree idempotency_via_ext(AlgebraPtr A, const Vec& e, int cap);

struct StratStep {
    std::vector<std::size_t> classes;  // primitive classes added at this step
    StrongIdemVerdict verdict;         // strong test of the previous partial sum in the current corner
};

struct StratificationReport {
    long lo = 0, hi = 0;
    std::size_t simples = 0;
    // Chain realising lo: first entry is e_0, later entries carry the step verdicts.
    std::vector<StratStep> witness;
    std::size_t nodes = 0;  // distinct subproblems evaluated
};

class SearchLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kStratSearchLimit = 12;

StratificationReport stratified_dimension(AlgebraPtr A, int cap, std::size_t limit = kStratSearchLimit,
                                          std::uint64_t seed = 0);

struct RatioInterval {
    Scalar lo, hi;
};
RatioInterval stratified_ratio(const StratificationReport& r);
RatioInterval stratified_ratio(AlgebraPtr A, int cap);

struct GendoResult {
    Verdict verdict;
    std::optional<Vec> idem;  // sum of the projective-injective class representatives
    std::optional<Mat> iota;  // D(Ae) -> eA when certified
    Verdict domdim;
    bool faithful = false;
};
GendoResult gendo_symmetric(AlgebraPtr A, int cap, std::uint64_t seed = 0);

// Sum of class representatives whose indecomposable projective is also injective.
Vec projective_injective_idempotent(AlgebraPtr A);
// a Ae = 0 forces a = 0.
bool left_faithful(const Algebra& A, const Vec& e);

// id(A) <= n+1 <= dm(A); self-injective algebras are reported as such.
Verdict minimal_auslander_gorenstein(AlgebraPtr A, int n, int cap);
// gd(A) <= n+1 <= dm(A).
Verdict n_auslander(AlgebraPtr A, int n, int cap);

// N m-rigid and Omega^{m+2} N isomorphic to N; throws if the preconditions fail.
Verdict ortho_symmetric(AlgebraPtr L, const Module& N, std::size_t m, int cap, std::uint64_t seed = 0);

}  // namespace mra
