#include "mra/stratification.hpp"

#include "mra/mirror.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mra {

std::string StrongIdemVerdict::kind_name() const
{
    switch (kind) {
    case Kind::CertifiedStrong:
        return "CertifiedStrong";
    case Kind::NIdempotentUpTo:
        return "NIdempotentUpTo";
    case Kind::RefutedAt:
        return "RefutedAt";
    }
    return "";
}

std::string StrongIdemVerdict::str() const
{
    switch (kind) {
    case Kind::CertifiedStrong:
        return "CertifiedStrong(" + reason + ")";
    case Kind::NIdempotentUpTo:
        return "NIdempotentUpTo(" + std::to_string(degree) + ")";
    case Kind::RefutedAt:
        return "RefutedAt(" + std::to_string(degree) + ")";
    }
    return "";
}

namespace {

StrongIdemVerdict make(const Vec& e, StrongIdemVerdict::Kind k, long degree, std::string reason = {})
{
    StrongIdemVerdict v;
    v.idem = e;
    v.kind = k;
    v.degree = degree;
    v.reason = std::move(reason);
    return v;
}

std::optional<StrongIdemVerdict> trivial_case(const Algebra& A, const Vec& e, const Subspace& ideal)
{
    if (is_zero(e) || ideal.dim() == A.dim) {
        auto v = make(e, StrongIdemVerdict::Kind::CertifiedStrong, 0, is_zero(e) ? "trivial: zero" : "trivial: AeA = A");
        v.trivial = true;
        return v;
    }
    return std::nullopt;
}

// Multiplication Ae (x) eA -> AeA is onto; it is bijective iff the dimensions agree.
bool multiplication_bijective(std::size_t tor0, const Subspace& ideal)
{
    return tor0 == ideal.dim();
}

bool ideal_projective(AlgebraPtr A, const Subspace& ideal)
{
    return is_projective(submodule(regular_module(A), ideal));
}

}  // namespace

StrongIdemVerdict n_idempotent(AlgebraPtr A, const Vec& e, int n)
{
    if (n < 1)
        throw std::invalid_argument("n must be at least 1");
    if (!A->is_idempotent(e))
        throw std::invalid_argument("element is not idempotent");
    Subspace ideal = A->ideal_generated({e});
    if (auto t = trivial_case(*A, e, ideal))
        return *t;
    if (!(A->product_span(ideal, ideal) == ideal))
        return make(e, StrongIdemVerdict::Kind::RefutedAt, -1, "ideal is not idempotent");
    if (n == 1)
        return make(e, StrongIdemVerdict::Kind::NIdempotentUpTo, 1);
    std::size_t upto = n >= 3 ? static_cast<std::size_t>(n - 2) : 0;
    auto tor = tor_corner_dims(A, e, upto);
    StrongIdemVerdict v;
    if (!multiplication_bijective(tor[0], ideal))
        v = make(e, StrongIdemVerdict::Kind::RefutedAt, 0, "multiplication map is not injective");
    else {
        v = make(e, StrongIdemVerdict::Kind::NIdempotentUpTo, n);
        for (std::size_t i = 1; i <= upto; ++i)
            if (tor[i] != 0) {
                v = make(e, StrongIdemVerdict::Kind::RefutedAt, static_cast<long>(i), "Tor is nonzero");
                break;
            }
    }
    v.tor = std::move(tor);
    return v;
}

StrongIdemVerdict strong_idempotent(AlgebraPtr A, const Vec& e, int cap, std::uint64_t seed)
{
    if (cap < 1)
        throw std::invalid_argument("cap must be at least 1");
    if (!A->is_idempotent(e))
        throw std::invalid_argument("element is not idempotent");
    Subspace ideal = A->ideal_generated({e});
    if (auto t = trivial_case(*A, e, ideal))
        return *t;
    if (ideal_projective(A, ideal))
        return make(e, StrongIdemVerdict::Kind::CertifiedStrong, 0, "left-projective");
    if (ideal_projective(share(opposite(*A)), ideal))
        return make(e, StrongIdemVerdict::Kind::CertifiedStrong, 0, "right-projective");

    auto tor = tor_corner_dims(A, e, static_cast<std::size_t>(cap));
    StrongIdemVerdict v;
    if (!multiplication_bijective(tor[0], ideal)) {
        v = make(e, StrongIdemVerdict::Kind::RefutedAt, 0, "multiplication map is not injective");
    } else {
        auto bad = std::find_if(tor.begin() + 1, tor.end(), [](std::size_t d) { return d != 0; });
        if (bad != tor.end()) {
            v = make(e, StrongIdemVerdict::Kind::RefutedAt, bad - tor.begin(), "Tor is nonzero");
        } else {
            // Tor_i = Tor_1(Omega^{i-1} Ae, eA), so a closed syzygy orbit bounds the degrees to check.
            CornerModules cm = corner_modules(A, e);
            Periodicity p = find_periodicity(cm.left_part, static_cast<std::size_t>(cap), seed);
            std::size_t need = p.start + p.period;
            if ((p.found || p.vanishes) && need <= static_cast<std::size_t>(cap))
                v = make(e, StrongIdemVerdict::Kind::CertifiedStrong, 0, "periodic-Tor-closure");
            else
                v = make(e, StrongIdemVerdict::Kind::NIdempotentUpTo, cap + 2);
        }
    }
    v.tor = std::move(tor);
    return v;
}

IdempotencyDegree idempotency_via_tor(AlgebraPtr A, const Vec& e, int cap)
{
    if (cap < 1)
        throw std::invalid_argument("cap must be at least 1");
    IdempotencyDegree d;
    Subspace ideal = A->ideal_generated({e});
    if (!(A->product_span(ideal, ideal) == ideal)) {
        d.bounded = true;
        return d;
    }
    d.witness = tor_corner_dims(A, e, static_cast<std::size_t>(cap));
    if (!multiplication_bijective(d.witness[0], ideal)) {
        d.degree = 1;
        d.bounded = true;
        return d;
    }
    for (std::size_t i = 1; i < d.witness.size(); ++i)
        if (d.witness[i] != 0) {
            d.degree = 1 + static_cast<long>(i);
            d.bounded = true;
            return d;
        }
    d.degree = cap + 1;
    return d;
}

IdempotencyDegree idempotency_via_ext(AlgebraPtr A, const Vec& e, int cap)
{
    if (cap < 1)
        throw std::invalid_argument("cap must be at least 1");
    IdempotencyDegree d;
    Subspace ideal = A->ideal_generated({e});
    if (ideal.dim() == A->dim) {
        d.degree = cap;
        return d;
    }
    QuotientAlgebra qa = quotient_algebra(*A, ideal, "quotient by the idempotent ideal");
    AlgebraPtr Q = share(std::move(qa.algebra));
    const Mat& pi = qa.q.projection;
    Module top = restrict_scalars(A, pi, regular_module(Q));
    d.witness.assign(static_cast<std::size_t>(cap) + 1, 0);
    for (const auto& S : simple_modules(Q)) {
        auto ext = ext_dims(top, restrict_scalars(A, pi, S), static_cast<std::size_t>(cap));
        for (std::size_t i = 0; i < ext.size(); ++i)
            d.witness[i] = std::max(d.witness[i], ext[i]);
    }
    for (std::size_t i = 1; i < d.witness.size(); ++i)
        if (d.witness[i] != 0) {
            d.degree = static_cast<long>(i) - 1;
            d.bounded = true;
            return d;
        }
    d.degree = cap;
    return d;
}

namespace {

using Mask = std::uint32_t;

struct NodeResult {
    long lo = 0, hi = 0;
    Mask best = 0;  // first block of the chain realising lo, 0 when lo = 0
    StrongIdemVerdict verdict;
};

// Subproblems are e_U (A / A e_K A) e_U for disjoint class sets U and K.
class StratSearch {
public:
    StratSearch(AlgebraPtr A, int cap, std::uint64_t seed) : A_(std::move(A)), cap_(cap), seed_(seed)
    {
        for (std::size_t r : A_->class_representatives())
            reps_.push_back(A_->primitives()[r]);
    }

    std::size_t classes() const { return reps_.size(); }

    const NodeResult& solve(Mask keep, Mask killed)
    {
        auto key = std::make_pair(keep, killed);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        NodeResult res;
        if (__builtin_popcount(keep) > 1) {
            Node node = build(keep, killed);
            // Proper nonempty subsets of keep.
            for (Mask sub = (keep - 1) & keep; sub != 0; sub = (sub - 1) & keep) {
                StrongIdemVerdict v = strong_idempotent(node.algebra, node.idem_of(sub, reps_), cap_, seed_);
                if (v.refuted())
                    continue;
                const NodeResult corner_part = solve(sub, killed);
                const NodeResult quotient_part = solve(keep & ~sub, killed | sub);
                long hi = corner_part.hi + quotient_part.hi + 1;
                res.hi = std::max(res.hi, hi);
                if (v.strong()) {
                    long lo = corner_part.lo + quotient_part.lo + 1;
                    if (lo > res.lo) {
                        res.lo = lo;
                        res.best = sub;
                        res.verdict = v;
                    }
                }
            }
        }
        return memo_.emplace(key, std::move(res)).first->second;
    }

    // Chain of class blocks realising lo for the node.
    void chain(Mask keep, Mask killed, std::vector<StratStep>& out)
    {
        const NodeResult& r = solve(keep, killed);
        if (r.lo == 0) {
            StratStep s;
            s.classes = members(keep);
            if (!out.empty())
                s.verdict = pending_;
            out.push_back(std::move(s));
            return;
        }
        StrongIdemVerdict v = r.verdict;
        Mask sub = r.best;
        chain(sub, killed, out);
        pending_ = v;
        chain(keep & ~sub, killed | sub, out);
    }

    std::size_t nodes() const { return memo_.size(); }

private:
    struct Node {
        AlgebraPtr algebra;
        Quotient q;
        Mat compress;
        Vec idem_of(Mask m, const std::vector<Vec>& reps) const
        {
            Vec sum(q.projection.cols());
            for (std::size_t c = 0; c < reps.size(); ++c)
                if (m & (Mask(1) << c))
                    sum = vec_add(algebra->field, sum, reps[c]);
            return compress * q.project(sum);
        }
    };

    Node build(Mask keep, Mask killed) const
    {
        const Field& f = A_->field;
        Vec ek(A_->dim), eu(A_->dim);
        for (std::size_t c = 0; c < reps_.size(); ++c) {
            if (killed & (Mask(1) << c))
                ek = vec_add(f, ek, reps_[c]);
            if (keep & (Mask(1) << c))
                eu = vec_add(f, eu, reps_[c]);
        }
        QuotientAlgebra qa = quotient_algebra(*A_, A_->ideal_generated({ek}), "stratum quotient");
        CornerData cd = corner(qa.algebra, qa.q.project(eu));
        return Node{share(std::move(cd.corner)), qa.q, cd.compress};
    }

    std::vector<std::size_t> members(Mask m) const
    {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < reps_.size(); ++c)
            if (m & (Mask(1) << c))
                out.push_back(c);
        return out;
    }

    AlgebraPtr A_;
    int cap_;
    std::uint64_t seed_;
    std::vector<Vec> reps_;
    std::map<std::pair<Mask, Mask>, NodeResult> memo_;
    StrongIdemVerdict pending_;
};

}  // namespace

StratificationReport stratified_dimension(AlgebraPtr A, int cap, std::size_t limit, std::uint64_t seed)
{
    StratSearch search(A, cap, seed);
    std::size_t n = search.classes();
    if (n > limit || n >= 32)
        throw SearchLimitError("stratified dimension: " + std::to_string(n) + " simple classes exceed the search limit " +
                               std::to_string(limit));
    StratificationReport r;
    r.simples = n;
    Mask all = n == 0 ? 0 : static_cast<Mask>((std::uint64_t(1) << n) - 1);
    const NodeResult& top = search.solve(all, 0);
    r.lo = top.lo;
    r.hi = top.hi;
    search.chain(all, 0, r.witness);
    r.nodes = search.nodes();
    return r;
}

RatioInterval stratified_ratio(const StratificationReport& r)
{
    if (r.simples == 0)
        throw std::invalid_argument("stratified ratio of the zero algebra");
    Scalar n(static_cast<long>(r.simples));
    return {Scalar(r.lo) / n, Scalar(r.hi) / n};
}

RatioInterval stratified_ratio(AlgebraPtr A, int cap)
{
    return stratified_ratio(stratified_dimension(std::move(A), cap));
}

Vec projective_injective_idempotent(AlgebraPtr A)
{
    Vec e(A->dim);
    for (std::size_t r : A->class_representatives()) {
        const Vec& f = A->primitives()[r];
        if (is_projective(dual(projective(A, f))))
            e = A->add(e, f);
    }
    return e;
}

bool left_faithful(const Algebra& A, const Vec& e)
{
    Subspace X = A.left_ideal_span(e);
    const auto& xs = X.basis();
    Mat m(A.dim * xs.size(), A.dim, A.field);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            Vec p = A.mul(A.basis(i), xs[j]);
            for (std::size_t k = 0; k < A.dim; ++k)
                m.at(j * A.dim + k, i) = p[k];
        }
    return rank(m) == A.dim;
}

GendoResult gendo_symmetric(AlgebraPtr A, int cap, std::uint64_t seed)
{
    GendoResult g;
    Vec e = projective_injective_idempotent(A);
    g.domdim = dominant_dimension(A, cap);
    if (is_zero(e)) {
        g.verdict = Verdict::no("no projective-injective indecomposable");
        return g;
    }
    g.idem = e;
    g.faithful = left_faithful(*A, e);
    if (!g.faithful) {
        g.verdict = Verdict::no("Ae is not faithful");
        return g;
    }
    // UnknownBeyond here means every computed term was projective-injective, so dm >= cap.
    if (g.domdim.is_certified() && !g.domdim.infinite && g.domdim.value < 2) {
        g.verdict = Verdict::no("dominant dimension " + std::to_string(g.domdim.value) + " < 2");
        return g;
    }
    if (g.domdim.is_unknown() && cap < 2) {
        g.verdict = Verdict::unknown(cap, "cap below 2");
        return g;
    }
    CornerDuality d = corner_duality(A, e, 16, seed);
    g.verdict = d.verdict;
    g.iota = d.iota;
    if (g.verdict.is_certified())
        g.verdict.reason = "Ae faithful projective-injective, dm >= 2, D(Ae) = eA";
    return g;
}

namespace {

// Certified when value <= bound; a resolution running past the cap means the dimension exceeds it.
Verdict at_most(const Verdict& v, long bound, int cap, const std::string& what)
{
    if (v.is_certified())
        return v.value <= bound ? Verdict::yes(what + " = " + std::to_string(v.value))
                                : Verdict::no(what + " = " + std::to_string(v.value));
    if (cap >= bound)
        return Verdict::no(what + " exceeds the cap");
    return Verdict::unknown(cap, what + " unresolved");
}

Verdict domdim_at_least(const Verdict& dm, long bound, int cap)
{
    if (dm.is_certified())
        return dm.infinite || dm.value >= bound ? Verdict::yes("dm = " + dm.str()) : Verdict::no("dm = " + std::to_string(dm.value));
    if (cap >= bound)
        return Verdict::yes("all coresolution terms up to the cap are projective-injective");
    return Verdict::unknown(cap, "dominant dimension unresolved");
}

}  // namespace

Verdict minimal_auslander_gorenstein(AlgebraPtr A, int n, int cap)
{
    if (n < 0 || cap < n + 2)
        throw std::invalid_argument("cap must be at least n + 2");
    Verdict id = injective_dimension(A, cap);
    if (id.is_certified() && id.value == 0)
        return Verdict::yes("self-injective");
    return conjunction(at_most(id, n + 1, cap, "id"), domdim_at_least(dominant_dimension(A, cap), n + 1, cap));
}

Verdict n_auslander(AlgebraPtr A, int n, int cap)
{
    if (n < 0 || cap < n + 2)
        throw std::invalid_argument("cap must be at least n + 2");
    return conjunction(at_most(global_dimension(A, cap), n + 1, cap, "gd"),
                       domdim_at_least(dominant_dimension(A, cap), n + 1, cap));
}

Verdict ortho_symmetric(AlgebraPtr L, const Module& N, std::size_t m, int cap, std::uint64_t seed)
{
    if (!is_symmetric(*L, 16, seed).verdict.is_certified())
        throw std::invalid_argument("ortho-symmetric: algebra is not certified symmetric");
    if (strip_projectives(N).dim != N.dim)
        throw std::invalid_argument("ortho-symmetric: module has a projective summand");
    if (static_cast<long>(m) + 2 > cap)
        throw std::invalid_argument("ortho-symmetric: degree exceeds the cap");
    Verdict rigid = is_rigid(N, m);
    IsoResult iso = is_module_iso(syzygy(N, m + 2), N, 16, seed);
    return conjunction(rigid, iso.verdict);
}

}  // namespace mra
