#include "mra/tower.hpp"

#include "mra/stratification.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace mra {

namespace {

// Block of a Morita context: a subspace of R (coordinates) or a quotient of R.
struct Block {
    bool is_sub = true;
    Subspace sub;
    Quotient quot;
    std::size_t dim() const { return is_sub ? sub.dim() : quot.dim(); }
    Vec lift(const Vec& c) const
    {
        if (!is_sub)
            return quot.lift(c);
        Vec out(sub.ambient());
        for (std::size_t k = 0; k < c.size(); ++k)
            vec_axpy(sub.field(), out, c[k], sub.basis()[k]);
        return out;
    }
    Vec normalize(const Vec& r) const
    {
        if (!is_sub)
            return quot.project(r);
        if (!sub.contains(r))
            throw std::logic_error("morita context: product leaves its block");
        return sub.coords(r);
    }
};

Block sub_block(const Subspace& s)
{
    Block b;
    b.sub = s;
    return b;
}

Block quot_block(const Subspace& s)
{
    Block b;
    b.is_sub = false;
    b.quot = quotient_space(s);
    return b;
}

Vec slice(const Vec& v, std::size_t from, std::size_t len)
{
    return Vec(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + len));
}

void place(Vec& v, std::size_t from, const Vec& part)
{
    for (std::size_t k = 0; k < part.size(); ++k)
        v[from + k] = part[k];
}

Mat block_projection(std::size_t first, std::size_t second, bool take_first, const Field& f)
{
    Mat p(first + second, first + second, f);
    std::size_t from = take_first ? 0 : first, len = take_first ? first : second;
    for (std::size_t k = 0; k < len; ++k)
        p.at(from + k, from + k) = 1;
    return p;
}

bool ideal_left_projective(const AlgebraPtr& A, const Vec& e)
{
    return is_projective(submodule(regular_module(A), A->ideal_generated({e})));
}

void require_checks(const std::vector<IdentityCheck>& checks, int level)
{
    for (const auto& c : checks)
        if (!c.holds)
            throw std::logic_error("tower level " + std::to_string(level) + ": " + c.name + " fails");
}

TowerLevel make_level(int n, AlgebraPtr A, const Vec& e, AlgebraPtr B, const Vec& f, Mat b0_map, bool same)
{
    TowerLevel L;
    L.n = n;
    L.A = A;
    L.B = B;
    L.e = e;
    L.f = f;
    L.mirror_a = mirror_reflective(A, e);
    require_checks(mirror_checks(L.mirror_a), n);
    L.mirror_b = same ? L.mirror_a : mirror_reflective(B, f);
    if (!same)
        require_checks(mirror_checks(L.mirror_b), n);
    L.reduced = reduced_mirror(L.mirror_b);
    require_checks(reduced_checks(L.mirror_b, L.reduced), n);
    const Algebra& S = *L.reduced.S;
    L.K = S.ideal_generated({L.reduced.compress * L.mirror_b.ebar});
    Subspace image(L.mirror_b.R->dim, S.field);
    for (std::size_t k = 0; k < S.dim; ++k)
        image.add(L.reduced.embed.column(k));
    Subspace meet = image.intersect(L.mirror_b.J);
    L.L = Subspace(S.dim, S.field);
    for (const auto& v : meet.basis())
        L.L.add(L.reduced.compress * v);
    L.b0_map = std::move(b0_map);
    return L;
}

struct EndStep {
    EndAlgebra end;
    std::size_t first = 0;  // dim of the regular summand
};

EndStep end_of_regular_plus(AlgebraPtr R, Module extra)
{
    Module reg = regular_module(R);
    std::size_t r = reg.dim, x = extra.dim;
    Module M = direct_sum({reg, std::move(extra)});
    const Field& f = R->field;
    EndStep s{end_algebra_basis(M, {block_projection(r, x, true, f), block_projection(r, x, false, f)}), r};
    return s;
}

bool over_budget(Tower& t, std::size_t dim, const std::string& what)
{
    if (dim <= t.budget)
        return false;
    t.partial = true;
    t.stop_reason = what + " has dimension " + std::to_string(dim) + " above the budget " + std::to_string(t.budget);
    return true;
}

}  // namespace

MoritaContext morita_context(AlgebraPtr R, const Subspace& I, const Subspace& J, ContextSide side)
{
    const Algebra& A = *R;
    const Field& f = A.field;
    if (!A.product_span(I, J).basis().empty())
        throw std::invalid_argument("morita context: IJ is not zero");
    Block top = side == ContextSide::Left ? sub_block(I) : quot_block(I);
    Block bottom = side == ContextSide::Left ? quot_block(J) : sub_block(J);
    Block corner = side == ContextSide::Left ? quot_block(J) : quot_block(I);
    std::size_t r = A.dim, t = top.dim(), b = bottom.dim(), c = corner.dim();
    std::size_t d = r + t + b + c;
    struct Parts {
        Vec r, t, b, c;  // lifts to R
    };
    auto split = [&](const Vec& v) {
        return Parts{slice(v, 0, r), top.lift(slice(v, r, t)), bottom.lift(slice(v, r + t, b)),
                     corner.lift(slice(v, r + t + b, c))};
    };
    auto product = [&](const Vec& x, const Vec& y) {
        Parts p = split(x), q = split(y);
        Vec out(d);
        place(out, 0, A.add(A.mul(p.r, q.r), A.mul(p.t, q.b)));
        place(out, r, top.normalize(A.add(A.mul(p.r, q.t), A.mul(p.t, q.c))));
        place(out, r + t, bottom.normalize(A.add(A.mul(p.b, q.r), A.mul(p.c, q.b))));
        place(out, r + t + b, corner.normalize(A.add(A.mul(p.b, q.t), A.mul(p.c, q.c))));
        return out;
    };
    auto table = table_from_products(d, [&](std::size_t i, std::size_t j) { return product(unit_vec(d, i), unit_vec(d, j)); });
    Vec top_unit(d), bottom_unit(d);
    place(top_unit, 0, A.unit);
    place(bottom_unit, r + t + b, corner.normalize(A.unit));
    Vec unit = vec_add(f, top_unit, bottom_unit);
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < d; ++k) {
        const char* tag = k < r ? "r" : k < r + t ? "u" : k < r + t + b ? "l" : "c";
        labels.push_back(std::string(tag) + std::to_string(k));
    }
    MoritaContext m;
    m.side = side;
    m.base = R;
    m.I = I;
    m.J = J;
    m.algebra = share(make_algebra(f, d, labels, std::move(table), unit, {top_unit, bottom_unit},
                                   side == ContextSide::Left ? "left morita context" : "right morita context"));
    m.idem = bottom_unit;
    m.block[0] = r;
    m.block[1] = t;
    m.block[2] = b;
    m.block[3] = c;
    return m;
}

Module pulled_back_module(AlgebraPtr R, const Algebra& A, const Mat& pi, const Subspace& X, std::string label)
{
    std::vector<Mat> act;
    for (const auto& g : R->generators()) {
        Vec a = pi * g;
        Mat m(X.dim(), X.dim(), A.field);
        for (std::size_t j = 0; j < X.dim(); ++j) {
            Vec c = X.coords(A.mul(a, X.basis()[j]));
            for (std::size_t i = 0; i < c.size(); ++i)
                m.at(i, j) = c[i];
        }
        act.push_back(std::move(m));
    }
    return make_module(std::move(R), X.dim(), std::move(act), std::move(label));
}

Tower start_tower(AlgebraPtr A, const Vec& e, std::size_t budget)
{
    if (!A->is_idempotent(e))
        throw std::invalid_argument("tower: element is not idempotent");
    if (is_zero(e))
        throw std::invalid_argument("tower: idempotent is zero");
    if (A->ideal_generated({e}).dim() == A->dim)
        throw std::invalid_argument("tower: Ae is a generator, so the mirror splits and the tower degenerates");
    Tower t;
    t.base = A;
    t.idem = e;
    t.budget = budget;
    t.corner = share(corner(*A, e).corner);
    t.b0 = share(corner(*A, A->sub(A->unit, e)).corner);
    t.simples_base = simple_count(*A);
    t.simples_corner = simple_count(*t.corner);
    t.simples_b0 = simple_count(*t.b0);
    if (over_budget(t, A->dim, "A_1"))
        return t;
    t.levels.push_back(make_level(1, A, e, A, e, Mat::identity(t.b0->dim, A->field), true));
    return t;
}

bool tower_step(Tower& t)
{
    if (t.levels.empty() || t.partial)
        return false;
    const TowerLevel& last = t.levels.back();
    int n = last.n;
    std::string next = std::to_string(n + 1);

    const Algebra& A = *last.A;
    Subspace X = A.left_ideal_span(A.sub(A.unit, last.e));
    if (over_budget(t, last.R()->dim + X.dim(), "R_" + std::to_string(n) + " + A_" + std::to_string(n) + "(1-e)"))
        return false;
    EndStep ea = end_of_regular_plus(last.R(), pulled_back_module(last.R(), A, last.mirror_a.pi1, X, "A(1-e)"));
    AlgebraPtr A1 = share(std::move(ea.end.algebra));
    if (over_budget(t, A1->dim, "A_" + next))
        return false;

    const Algebra& B = *last.B;
    Vec cf = B.sub(B.unit, last.f);
    Subspace C = B.two_sided_span(cf, cf);
    Module N = pulled_back_module(last.S(), B, last.reduced.pi1, C, "(1-f)B(1-f)");
    std::size_t s_dim = last.S()->dim;
    EndStep eb = end_of_regular_plus(last.S(), N);
    AlgebraPtr B1 = share(std::move(eb.end.algebra));
    if (over_budget(t, B1->dim, "B_" + next))
        return false;

    // Corner of B_{n+1} at the second summand -> (1-f)B(1-f), h -> (1_C) h, then on to B_0.
    Vec f1 = B1->idems[0];
    CornerData next_corner = corner(*B1, B1->sub(B1->unit, f1));
    CornerData this_corner = corner(B, cf);
    Vec unit_c = C.coords(cf);
    Mat to_prev(this_corner.corner.dim, next_corner.corner.dim, B.field);
    for (std::size_t k = 0; k < next_corner.corner.dim; ++k) {
        Vec coords = next_corner.embed.column(k);
        Mat H(s_dim + C.dim(), s_dim + C.dim(), B.field);
        for (std::size_t b = 0; b < coords.size(); ++b)
            if (coords[b] != 0)
                H = H + eb.end.basis[b].scaled(coords[b]);
        Vec u(s_dim + C.dim());
        place(u, s_dim, unit_c);
        Vec w = H * u;
        Vec elem(B.dim);
        for (std::size_t j = 0; j < C.dim(); ++j)
            vec_axpy(B.field, elem, w[s_dim + j], C.basis()[j]);
        Vec col = this_corner.compress * elem;
        for (std::size_t i = 0; i < col.size(); ++i)
            to_prev.at(i, k) = col[i];
    }
    Mat b0_map = last.b0_map * to_prev;

    TowerLevel lvl = make_level(n + 1, A1, A1->idems[0], B1, f1, std::move(b0_map), false);
    if (over_budget(t, std::max(lvl.R()->dim, lvl.mirror_b.R->dim), "R_" + next))
        return false;
    t.levels.push_back(std::move(lvl));
    return true;
}

Tower build_tower(AlgebraPtr A, const Vec& e, int levels, std::size_t budget)
{
    if (levels < 1)
        throw std::invalid_argument("tower: at least one level is required");
    Tower t = start_tower(std::move(A), e, budget);
    while (static_cast<int>(t.levels.size()) < levels && tower_step(t)) {
    }
    return t;
}

namespace {

Verdict equal_count(std::size_t got, std::size_t want)
{
    std::string why = std::to_string(got) + " vs " + std::to_string(want);
    return got == want ? Verdict::yes(why) : Verdict::no(why);
}

std::size_t pow2(int n)
{
    return std::size_t(1) << n;
}

// Which sides of e the primitives of A lie under; nullopt when a primitive straddles.
std::optional<bool> disjoint_additive_closures(const Algebra& A, const Vec& e)
{
    std::vector<bool> in_e(A.class_representatives().size()), in_c(A.class_representatives().size());
    Vec c = A.sub(A.unit, e);
    for (std::size_t p = 0; p < A.primitives().size(); ++p) {
        const Vec& x = A.primitives()[p];
        std::size_t cls = A.primitive_class()[p];
        if (A.mul(e, A.mul(x, e)) == x)
            in_e[cls] = true;
        else if (A.mul(c, A.mul(x, c)) == x)
            in_c[cls] = true;
        else
            return std::nullopt;
    }
    for (std::size_t k = 0; k < in_e.size(); ++k)
        if (in_e[k] && in_c[k])
            return false;
    return true;
}

}  // namespace

std::vector<TowerCheck> counting_report(const Tower& t)
{
    std::vector<TowerCheck> out;
    std::size_t a = t.simples_base, lam = t.simples_corner, b0 = t.simples_b0;
    for (std::size_t k = 0; k < t.levels.size(); ++k) {
        const TowerLevel& L = t.levels[k];
        int n = L.n;
        std::string s = std::to_string(n);
        out.push_back({n, "#A_" + s + " = 2^(n-1) #A", equal_count(simple_count(*L.A), pow2(n - 1) * a)});
        out.push_back({n, "#B_" + s + " = #A + (n-1) #B0", equal_count(simple_count(*L.B), a + (n - 1) * b0)});
        out.push_back({n, "#R_" + s + " = #eAe + (2^n-1) #A", equal_count(simple_count(*L.R()), lam + (pow2(n) - 1) * a)});
        out.push_back({n, "#S_" + s + " = #eAe + n #B0", equal_count(simple_count(*L.S()), lam + n * b0)});
        if (n == 1) {
            auto disjoint = disjoint_additive_closures(*t.base, t.idem);
            Verdict v = !disjoint ? Verdict::unknown(0, "a primitive idempotent straddles e and 1-e")
                        : *disjoint ? equal_count(simple_count(*L.S()), a)
                                    : Verdict::yes("closures overlap; no constraint");
            out.push_back({n, "#S_1 = #A when add(Ae) and add(A(1-e)) meet only in 0", v});
        }
        if (k + 1 < t.levels.size()) {
            const TowerLevel& N = t.levels[k + 1];
            MoritaContext ma = morita_context(L.R(), L.mirror_a.I, L.mirror_a.J, ContextSide::Left);
            out.push_back({n, "#M_l(R_n, I_n, J_n) = #A_" + std::to_string(n + 1),
                           equal_count(simple_count(*ma.algebra), simple_count(*N.A))});
            out.push_back({n, "M_l(R_n, I_n, J_n) e M_l is left projective",
                           ideal_left_projective(ma.algebra, ma.idem) ? Verdict::yes() : Verdict::no()});
            MoritaContext mb = morita_context(L.S(), L.K, L.L, ContextSide::Left);
            out.push_back({n, "#M_l(S_n, K_n, L_n) = #B_" + std::to_string(n + 1),
                           equal_count(simple_count(*mb.algebra), simple_count(*N.B))});
        }
    }
    return out;
}

std::vector<TowerCheck> invariant_report(const Tower& t, int cap, std::uint64_t seed)
{
    std::vector<TowerCheck> out;
    for (const auto& L : t.levels) {
        std::string s = std::to_string(L.n);
        out.push_back({L.n, "R_" + s + " symmetric", is_symmetric(*L.R(), 16, seed).verdict});
        out.push_back({L.n, "S_" + s + " symmetric", is_symmetric(*L.S(), 16, seed).verdict});
        out.push_back({L.n, "A_" + s + " gendo-symmetric", gendo_symmetric(L.A, cap, seed).verdict});
        if (L.n > 1)
            out.push_back({L.n, "B_" + s + " gendo-symmetric", gendo_symmetric(L.B, cap, seed).verdict});
        const Algebra& B = *L.B;
        Vec cf = B.sub(B.unit, L.f);
        CornerData cd = corner(B, cf);
        bool iso = L.b0_map.rows() == t.b0->dim && L.b0_map.cols() == cd.corner.dim && inverse(L.b0_map).has_value() &&
                   is_algebra_map(cd.corner, *t.b0, L.b0_map);
        out.push_back({L.n, "(1-f_" + s + ")B_" + s + "(1-f_" + s + ") isomorphic to B0", iso ? Verdict::yes() : Verdict::no()});
        Module N = pulled_back_module(L.S(), B, L.reduced.pi1, B.two_sided_span(cf, cf), "B0");
        out.push_back({L.n, "B0 over S_" + s + " has no projective summand",
                       strip_projectives(N).dim == N.dim ? Verdict::yes() : Verdict::no()});
    }
    return out;
}

namespace {

// next >= prev + 2 for dominant dimensions; UnknownBeyond(cap) means at least cap.
Verdict grows_by_two(const Verdict& prev, const Verdict& next, int cap)
{
    if (next.is_certified() && next.infinite)
        return Verdict::yes("infinite");
    if (prev.is_certified() && !prev.infinite) {
        long want = prev.value + 2;
        if (next.is_certified())
            return next.value >= want ? Verdict::yes(next.str()) : Verdict::no(next.str());
        if (cap >= want)
            return Verdict::yes("at least the cap");
        return Verdict::unknown(cap, "cap below dm + 2");
    }
    if (next.is_certified() && next.value < cap + 2)
        return Verdict::no("previous level is at least the cap");
    return Verdict::unknown(cap, "previous level unresolved");
}

Verdict at_most(std::optional<long> lhs, std::optional<long> rhs, int cap)
{
    if (!lhs || !rhs)
        return Verdict::unknown(cap, "global dimension beyond the cap");
    std::string why = std::to_string(*lhs) + " <= " + std::to_string(*rhs);
    return *lhs <= *rhs ? Verdict::yes(why) : Verdict::no(why);
}

std::optional<long> value_of(const Verdict& v)
{
    if (v.is_certified() && !v.infinite)
        return v.value;
    return std::nullopt;
}

std::optional<long> affine(std::optional<long> x, long scale, long shift)
{
    if (!x)
        return std::nullopt;
    return *x * scale + shift;
}

}  // namespace

std::vector<TowerCheck> domdim_growth_report(const Tower& t, int cap)
{
    std::vector<TowerCheck> out;
    std::vector<Verdict> dmA, dmB;
    for (const auto& L : t.levels) {
        dmA.push_back(dominant_dimension(L.A, cap));
        dmB.push_back(dominant_dimension(L.B, cap));
        out.push_back({L.n, "dm(A_" + std::to_string(L.n) + ")", dmA.back()});
        out.push_back({L.n, "dm(B_" + std::to_string(L.n) + ")", dmB.back()});
    }
    for (std::size_t k = 0; k + 1 < t.levels.size(); ++k) {
        int n = t.levels[k].n;
        std::string s = std::to_string(n), s1 = std::to_string(n + 1);
        out.push_back({n + 1, "dm(A_" + s1 + ") >= dm(A_" + s + ") + 2", grows_by_two(dmA[k], dmA[k + 1], cap)});
        out.push_back({n + 1, "dm(B_" + s1 + ") >= dm(B_" + s + ") + 2", grows_by_two(dmB[k], dmB[k + 1], cap)});
    }
    Verdict gd = global_dimension(t.base, cap);
    if (gd.is_certified() && gd.value >= 1 && static_cast<int>(gd.value) + 1 <= cap &&
        n_auslander(t.base, static_cast<int>(gd.value - 1), cap).is_certified()) {
        long k = gd.value - 1;
        out.push_back({1, "A_1 is " + std::to_string(k) + "-Auslander", Verdict::yes()});
        for (std::size_t j = 1; j < t.levels.size(); ++j) {
            k = 2 * k + 3;
            std::string name = "A_" + std::to_string(t.levels[j].n) + " is " + std::to_string(k) + "-Auslander";
            if (k + 2 > cap)
                out.push_back({t.levels[j].n, name, Verdict::unknown(cap, "cap below the Auslander degree + 2")});
            else
                out.push_back({t.levels[j].n, name, n_auslander(t.levels[j].A, static_cast<int>(k), cap)});
        }
    }
    return out;
}

std::vector<TowerCheck> dimension_bound_report(const Tower& t, int cap)
{
    std::vector<TowerCheck> out;
    std::optional<long> gA = value_of(global_dimension(t.base, cap));
    std::optional<long> gB0 = value_of(global_dimension(t.b0, cap));
    std::vector<std::optional<long>> ga, gb;
    for (const auto& L : t.levels) {
        Verdict va = global_dimension(L.A, cap), vb = global_dimension(L.B, cap);
        ga.push_back(value_of(va));
        gb.push_back(value_of(vb));
        out.push_back({L.n, "gd(A_" + std::to_string(L.n) + ")", va});
        out.push_back({L.n, "gd(B_" + std::to_string(L.n) + ")", vb});
    }
    for (std::size_t k = 0; k + 1 < t.levels.size(); ++k) {
        int n = t.levels[k].n;
        std::string s = std::to_string(n), s1 = std::to_string(n + 1);
        long p = static_cast<long>(pow2(n));
        out.push_back({n + 1, "gd(A_" + s1 + ") <= 2^n gd(A) + 2^(n+1) - 2", at_most(ga[k + 1], affine(gA, p, 2 * p - 2), cap)});
        out.push_back({n + 1, "gd(A_" + s + ") <= gd(A_" + s1 + ")", at_most(ga[k], ga[k + 1], cap)});
        out.push_back({n + 1, "gd(A_" + s1 + ") <= 2 gd(A_" + s + ") + 2", at_most(ga[k + 1], affine(ga[k], 2, 2), cap)});
        std::optional<long> bbound;
        if (gA && gB0)
            bbound = *gA + n * (*gB0 + 2);
        out.push_back({n + 1, "gd(B_" + s1 + ") <= gd(A) + n (gd(B0) + 2)", at_most(gb[k + 1], bbound, cap)});
        out.push_back({n + 1, "gd(B0) <= gd(B_" + s1 + ")", at_most(gB0, gb[k + 1], cap)});
        std::optional<long> step;
        if (gB0 && gb[k])
            step = *gB0 + *gb[k] + 2;
        out.push_back({n + 1, "gd(B_" + s1 + ") <= gd(B0) + gd(B_" + s + ") + 2", at_most(gb[k + 1], step, cap)});
    }
    return out;
}

std::vector<TowerCheck> strat_bound_report(const Tower& t, int cap, std::size_t dim_limit)
{
    std::vector<TowerCheck> out;
    long lam = static_cast<long>(t.simples_corner), a = static_cast<long>(t.simples_base),
         b0 = static_cast<long>(t.simples_b0);
    Verdict dm = dominant_dimension(t.base, cap);
    std::string hypothesis = dm.is_certified() && !dm.infinite
                                 ? "hypothesis dm(A) = infinity fails: dm(A) = " + std::to_string(dm.value)
                                 : "conditional on dm(A) = infinity, which is not certifiable";
    auto sd_of = [&](const AlgebraPtr& X) -> std::optional<StratificationReport> {
        if (X->dim > dim_limit)
            return std::nullopt;
        try {
            return stratified_dimension(X, cap);
        } catch (const SearchLimitError&) {
            return std::nullopt;
        }
    };
    auto sd_lam = sd_of(t.corner), sd_a = sd_of(t.base), sd_b0 = sd_of(t.b0);
    auto report = [&](int n, const std::string& name, const std::optional<StratificationReport>& r, long upper,
                      std::optional<long> lower) {
        std::string range = r ? "[" + std::to_string(r->lo) + ", " + std::to_string(r->hi) + "]" : "skipped";
        out.push_back({n, "sd(" + name + ") = " + range,
                       r ? Verdict::certified(r->lo, "interval " + range) : Verdict::unknown(cap, "algebra above the size limit")});
        Verdict up = !r ? Verdict::unknown(cap, "skipped")
                     : r->hi <= upper ? Verdict::yes(range + " <= " + std::to_string(upper))
                     : r->lo > upper  ? Verdict::no(range + " exceeds " + std::to_string(upper))
                                      : Verdict::unknown(cap, range + " straddles " + std::to_string(upper));
        out.push_back({n, "sd(" + name + ") <= " + std::to_string(upper), up});
        std::string lname = "sd(" + name + ") >= " + (lower ? std::to_string(*lower) : std::string("lower bound"));
        std::string why = hypothesis;
        if (r && lower)
            why += r->lo >= *lower ? "; holds on the computed interval" : "; computed interval is below it";
        out.push_back({n, lname, Verdict::unknown(cap, why)});
    };
    for (const auto& L : t.levels) {
        int n = L.n;
        long p = static_cast<long>(pow2(n)) - 1;
        std::optional<long> lowR, lowS;
        if (sd_lam && sd_a)
            lowR = sd_lam->lo + p * (sd_a->lo + 1);
        if (sd_lam && sd_b0)
            lowS = sd_lam->lo + n * (sd_b0->lo + 1);
        report(n, "R_" + std::to_string(n), sd_of(L.R()), lam + p * a - 1, lowR);
        report(n, "S_" + std::to_string(n), sd_of(L.S()), lam + n * b0 - 1, lowS);
    }
    return out;
}

}  // namespace mra
