#include "mra/mirror.hpp"

#include "mra/rng.hpp"

#include <sstream>
#include <stdexcept>

namespace mra {

namespace {

Vec combine(const Field& f, const std::vector<Term>& terms, std::size_t n)
{
    Vec v(n);
    for (const auto& t : terms)
        f.axpy(v[t.idx], t.coeff, 1);
    return v;
}

std::vector<Term> sparse(const Vec& v)
{
    std::vector<Term> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.push_back({i, v[i]});
    return out;
}

// Matrix of the action of an arbitrary element through the per-basis matrices.
Mat action_of(const std::vector<Mat>& per_basis, const Vec& a, std::size_t dim, const Field& f)
{
    Mat m(dim, dim, f);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            m = m + per_basis[i].scaled(a[i]);
    return m;
}

Vec alpha_apply(const BimoduleMult& bm, const Vec& u, const Vec& v, const Field& f)
{
    Vec out(bm.dim);
    for (std::size_t s = 0; s < bm.dim; ++s) {
        if (u[s] == 0)
            continue;
        for (std::size_t t = 0; t < bm.dim; ++t) {
            if (v[t] == 0)
                continue;
            Scalar c = f.mul(u[s], v[t]);
            for (const auto& term : bm.alpha[s * bm.dim + t])
                f.axpy(out[term.idx], c, term.coeff);
        }
    }
    return out;
}

// Index pairs or triples to check: all of them, or a seeded sample.
std::vector<std::vector<std::size_t>> index_tuples(std::vector<std::size_t> sizes, std::size_t limit, Rng& rng)
{
    std::size_t total = 1;
    bool big = false;
    for (auto s : sizes) {
        if (s == 0)
            return {};
        if (total > limit / s + 1)
            big = true;
        total *= s;
    }
    std::vector<std::vector<std::size_t>> out;
    if (!big && total <= limit) {
        std::vector<std::size_t> cur(sizes.size(), 0);
        for (std::size_t k = 0; k < total; ++k) {
            out.push_back(cur);
            for (std::size_t p = sizes.size(); p-- > 0;) {
                if (++cur[p] < sizes[p])
                    break;
                cur[p] = 0;
            }
        }
        return out;
    }
    for (std::size_t k = 0; k < limit; ++k) {
        std::vector<std::size_t> cur;
        for (auto s : sizes)
            cur.push_back(static_cast<std::size_t>(rng.range(0, static_cast<long>(s) - 1)));
        out.push_back(cur);
    }
    return out;
}

std::string name_of(const std::vector<std::string>& labels, std::size_t i, const char* prefix)
{
    if (i < labels.size() && !labels[i].empty())
        return labels[i];
    return prefix + std::to_string(i);
}

std::string element_label(const Algebra& A, const Vec& v)
{
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
            ++nz;
            at = i;
        }
    if (nz == 1 && v[at] == 1)
        return A.labels[at];
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        if (!first)
            os << "+";
        first = false;
        if (v[i] != 1)
            os << scalar_str(v[i]) << "*";
        os << A.labels[i];
    }
    return "(" + os.str() + ")";
}

Mat columns_to_mat(const std::vector<Vec>& cols, std::size_t rows, const Field& f)
{
    if (cols.empty())
        return Mat(rows, 0, f);
    return Mat::from_columns(cols, rows, f);
}

Subspace image(const Mat& m, const Subspace& S)
{
    Subspace out(m.rows(), m.field());
    for (const auto& v : S.basis())
        out.add(m * v);
    return out;
}

Subspace kernel_space(const Mat& m)
{
    return Subspace::span(m.cols(), kernel_basis(m), m.field());
}

Mat stack_rows(const std::vector<Mat>& blocks, std::size_t cols, const Field& f)
{
    std::vector<Vec> rows;
    for (const auto& b : blocks)
        for (std::size_t i = 0; i < b.rows(); ++i)
            rows.push_back(b.row(i));
    if (rows.empty())
        return Mat(0, cols, f);
    return Mat::from_rows(rows, cols, f);
}

// Inverse of a central element c of eAe inside eAe, as an element of A.
std::optional<Vec> corner_inverse(const CornerData& cd, const Vec& c)
{
    const Algebra& L = cd.corner;
    Vec cc = cd.compress * c;
    auto z = solve(L.left_mult(cc), L.unit);
    if (!z)
        return std::nullopt;
    return cd.embed * *z;
}

}  // namespace

std::optional<std::string> check_bimodule_mult(const Algebra& A, const BimoduleMult& bm, std::size_t limit,
                                               std::uint64_t seed)
{
    const Field& f = A.field;
    std::size_t n = bm.dim;
    if (bm.left.size() != A.dim || bm.right.size() != A.dim || bm.alpha.size() != n * n)
        return std::string("bimodule data has the wrong shape");
    if (n == 0)
        return std::nullopt;
    Rng rng(seed);
    std::size_t pair_limit = limit * limit, triple_limit = limit * limit * limit;
    Mat id = Mat::identity(n, f);
    if (action_of(bm.left, A.unit, n, f) != id || action_of(bm.right, A.unit, n, f) != id)
        return std::string("unit does not act as the identity");
    for (const auto& ij : index_tuples({A.dim, A.dim}, pair_limit, rng)) {
        std::size_t i = ij[0], j = ij[1];
        Vec p = combine(f, A.product(i, j), A.dim);
        if (bm.left[i] * bm.left[j] != action_of(bm.left, p, n, f))
            return "left action fails on (" + A.labels[i] + ", " + A.labels[j] + ")";
        if (bm.right[j] * bm.right[i] != action_of(bm.right, p, n, f))
            return "right action fails on (" + A.labels[i] + ", " + A.labels[j] + ")";
        if (bm.left[i] * bm.right[j] != bm.right[j] * bm.left[i])
            return "actions do not commute on (" + A.labels[i] + ", " + A.labels[j] + ")";
    }
    for (const auto& sti : index_tuples({n, n, A.dim}, triple_limit, rng)) {
        std::size_t s = sti[0], t = sti[1], i = sti[2];
        Vec ms = unit_vec(n, s), mt = unit_vec(n, t);
        Vec st = alpha_apply(bm, ms, mt, f);
        std::string where = "(" + name_of(bm.labels, s, "m") + ", " + name_of(bm.labels, t, "m") + ", " +
                            A.labels[i] + ")";
        if (alpha_apply(bm, bm.right[i] * ms, mt, f) != alpha_apply(bm, ms, bm.left[i] * mt, f))
            return "multiplication is not balanced on " + where;
        if (alpha_apply(bm, bm.left[i] * ms, mt, f) != bm.left[i] * st)
            return "multiplication is not left linear on " + where;
        if (alpha_apply(bm, ms, bm.right[i] * mt, f) != bm.right[i] * st)
            return "multiplication is not right linear on " + where;
    }
    for (const auto& xyz : index_tuples({n, n, n}, triple_limit, rng)) {
        Vec x = unit_vec(n, xyz[0]), y = unit_vec(n, xyz[1]), z = unit_vec(n, xyz[2]);
        if (alpha_apply(bm, alpha_apply(bm, x, y, f), z, f) != alpha_apply(bm, x, alpha_apply(bm, y, z, f), f))
            return "associativity fails on (" + name_of(bm.labels, xyz[0], "m") + ", " +
                   name_of(bm.labels, xyz[1], "m") + ", " + name_of(bm.labels, xyz[2], "m") + ")";
    }
    return std::nullopt;
}

Algebra extension_algebra(const Algebra& A, const BimoduleMult& bm, std::string provenance)
{
    if (auto err = check_bimodule_mult(A, bm))
        throw std::invalid_argument("extension algebra: " + *err);
    std::size_t a = A.dim, n = bm.dim, m = a + n;
    std::vector<std::vector<Term>> table(m * m);
    auto shift = [&](const std::vector<Term>& ts, std::size_t off) {
        std::vector<Term> out;
        for (const auto& t : ts)
            out.push_back({t.idx + off, t.coeff});
        return out;
    };
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j)
            table[i * m + j] = A.product(i, j);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t s = 0; s < n; ++s) {
            table[i * m + a + s] = shift(sparse(bm.left[i].column(s)), a);
            table[(a + s) * m + i] = shift(sparse(bm.right[i].column(s)), a);
        }
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
            table[(a + s) * m + a + t] = shift(bm.alpha[s * n + t], a);
    std::vector<std::string> labels = A.labels;
    for (std::size_t s = 0; s < n; ++s)
        labels.push_back(name_of(bm.labels, s, "m"));
    Vec unit(m);
    for (std::size_t i = 0; i < a; ++i)
        unit[i] = A.unit[i];
    std::vector<Vec> idems;
    for (const auto& e : A.idems) {
        Vec v(m);
        for (std::size_t i = 0; i < a; ++i)
            v[i] = e[i];
        idems.push_back(v);
    }
    return make_algebra(A.field, m, std::move(labels), std::move(table), std::move(unit), std::move(idems),
                        std::move(provenance));
}

Vec CornerTensor::pure(const Vec& x, const Vec& y) const
{
    if (!left_space.contains(x) || !right_space.contains(y))
        throw std::invalid_argument("pure tensor: factor outside Ae or eA");
    Vec cx = left_space.coords(x), cy = right_space.coords(y);
    std::size_t q = right_space.dim();
    const Field& f = ambient->field;
    Vec v(left_space.dim() * q);
    for (std::size_t i = 0; i < cx.size(); ++i) {
        if (cx[i] == 0)
            continue;
        for (std::size_t j = 0; j < q; ++j)
            if (cy[j] != 0)
                v[i * q + j] = f.mul(cx[i], cy[j]);
    }
    return this->q.project(v);
}

CornerTensor corner_tensor(AlgebraPtr Ap, const Vec& e, const Vec& level)
{
    const Algebra& A = *Ap;
    const Field& f = A.field;
    if (!A.is_idempotent(e))
        throw std::invalid_argument("corner tensor: element is not idempotent");
    if (is_zero(e))
        throw std::invalid_argument("corner tensor: the idempotent is zero");
    if (auto bad = centrality_failure(A, e, level))
        throw std::invalid_argument("corner tensor: level is not central in eAe (" + *bad + ")");
    CornerTensor T;
    T.ambient = Ap;
    T.idem = e;
    T.level = level;
    T.corner = corner(A, e);
    T.left_space = A.left_ideal_span(e);
    T.right_space = A.right_ideal_span(e);
    const auto& X = T.left_space.basis();
    const auto& Y = T.right_space.basis();
    std::size_t p = X.size(), q = Y.size(), n = p * q;

    Subspace rel(n, f);
    for (const auto& g : T.corner.corner.generators()) {
        Vec c = T.corner.embed * g;
        std::vector<Vec> xc(p), cy(q);
        for (std::size_t i = 0; i < p; ++i)
            xc[i] = T.left_space.coords(A.mul(X[i], c));
        for (std::size_t j = 0; j < q; ++j)
            cy[j] = T.right_space.coords(A.mul(c, Y[j]));
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < q; ++j) {
                Vec r(n);
                for (std::size_t k = 0; k < p; ++k)
                    if (xc[i][k] != 0)
                        r[k * q + j] = f.add(r[k * q + j], xc[i][k]);
                for (std::size_t l = 0; l < q; ++l)
                    if (cy[j][l] != 0)
                        r[i * q + l] = f.sub(r[i * q + l], cy[j][l]);
                if (!is_zero(r))
                    rel.add(r);
            }
    }
    T.q = quotient_space(rel);
    std::size_t d = T.q.dim();
    std::vector<Vec> proj_cols(n);
    for (std::size_t m = 0; m < n; ++m)
        proj_cols[m] = T.q.projection.column(m);
    std::vector<std::size_t> free_idx(d);
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < d; ++k)
            if (T.q.section.at(m, k) != 0)
                free_idx[k] = m;

    auto spread = [&](std::size_t i, const Vec& cy_, Vec& out, const Scalar& s) {
        for (std::size_t l = 0; l < q; ++l)
            if (cy_[l] != 0) {
                Scalar c = f.mul(s, cy_[l]);
                for (std::size_t k = 0; k < d; ++k)
                    if (proj_cols[i * q + l][k] != 0)
                        f.axpy(out[k], c, proj_cols[i * q + l][k]);
            }
    };

    BimoduleMult& bm = T.mult;
    bm.dim = d;
    for (std::size_t k = 0; k < d; ++k) {
        std::size_t i = free_idx[k] / q, j = free_idx[k] % q;
        bm.labels.push_back(element_label(A, X[i]) + "*" + element_label(A, Y[j]));
    }
    for (std::size_t b = 0; b < A.dim; ++b) {
        Vec bv = A.basis(b);
        Mat L(d, d, f), Rm(d, d, f);
        for (std::size_t k = 0; k < d; ++k) {
            std::size_t i = free_idx[k] / q, j = free_idx[k] % q;
            Vec cx = T.left_space.coords(A.mul(bv, X[i]));
            Vec out(d);
            for (std::size_t i2 = 0; i2 < p; ++i2)
                if (cx[i2] != 0)
                    spread(i2, unit_vec(q, j), out, cx[i2]);
            for (std::size_t r = 0; r < d; ++r)
                L.at(r, k) = out[r];
            Vec cy = T.right_space.coords(A.mul(Y[j], bv));
            Vec out2(d);
            spread(i, cy, out2, Scalar(1));
            for (std::size_t r = 0; r < d; ++r)
                Rm.at(r, k) = out2[r];
        }
        bm.left.push_back(std::move(L));
        bm.right.push_back(std::move(Rm));
    }
    // (x (x) y)(x' (x) y') = x (x) level y x' y'
    std::vector<Vec> ly(q);
    for (std::size_t j = 0; j < q; ++j)
        ly[j] = A.mul(level, Y[j]);
    bm.alpha.assign(d * d, {});
    for (std::size_t s = 0; s < d; ++s) {
        std::size_t i = free_idx[s] / q, j = free_idx[s] % q;
        for (std::size_t t = 0; t < d; ++t) {
            std::size_t k = free_idx[t] / q, l = free_idx[t] % q;
            Vec mid = A.mul(ly[j], X[k]);
            if (is_zero(mid))
                continue;
            Vec w = T.right_space.coords(A.mul(mid, Y[l]));
            Vec out(d);
            spread(i, w, out, Scalar(1));
            bm.alpha[s * d + t] = sparse(out);
        }
    }
    T.multiply = Mat(A.dim, d, f);
    for (std::size_t k = 0; k < d; ++k) {
        std::size_t i = free_idx[k] / q, j = free_idx[k] % q;
        Vec v = A.mul(X[i], Y[j]);
        for (std::size_t r = 0; r < A.dim; ++r)
            T.multiply.at(r, k) = v[r];
    }
    return T;
}

std::optional<std::string> check_corner_tensor(const CornerTensor& T)
{
    const Algebra& A = *T.ambient;
    const Field& f = A.field;
    const auto& X = T.left_space.basis();
    const auto& Y = T.right_space.basis();
    const auto& Lb = T.corner.corner;
    for (std::size_t c = 0; c < Lb.dim; ++c) {
        Vec cv = T.corner.embed * Lb.basis(c);
        for (const auto& x : X)
            for (const auto& y : Y)
                if (T.pure(A.mul(x, cv), y) != T.pure(x, A.mul(cv, y)))
                    return "balancing fails at corner element " + Lb.labels[c];
    }
    Rng rng(0);
    std::size_t p = X.size(), q = Y.size();
    for (const auto& idx : index_tuples({p, q, p, q}, 4000, rng)) {
        const Vec &x = X[idx[0]], &y = Y[idx[1]], &x2 = X[idx[2]], &y2 = Y[idx[3]];
        Vec prod = alpha_apply(T.mult, T.pure(x, y), T.pure(x2, y2), f);
        Vec mid = A.mul(A.mul(y, x2), T.level);
        if (prod != T.pure(x, A.mul(mid, y2)))
            return std::string("product rule fails with the level on the right factor");
        if (prod != T.pure(A.mul(x, mid), y2))
            return std::string("product rule fails with the level on the left factor");
    }
    return std::nullopt;
}

bool is_algebra_map(const Algebra& src, const Algebra& dst, const Mat& F)
{
    if (F.rows() != dst.dim || F.cols() != src.dim)
        return false;
    if (F * src.unit != dst.unit)
        return false;
    std::vector<Vec> img(src.dim);
    for (std::size_t i = 0; i < src.dim; ++i)
        img[i] = F.column(i);
    for (std::size_t i = 0; i < src.dim; ++i)
        for (std::size_t j = 0; j < src.dim; ++j) {
            Vec p = F * combine(src.field, src.product(i, j), src.dim);
            if (p != dst.mul(img[i], img[j]))
                return false;
        }
    return true;
}

MirrorData mirror_reflective(AlgebraPtr Ap, const Vec& e, const Vec& level)
{
    const Algebra& A = *Ap;
    const Field& f = A.field;
    MirrorData m{corner_tensor(Ap, e, level), nullptr, {}, {}, {}, {}, {}, {}, {}, {}};
    const CornerTensor& T = m.tensor;
    auto inv = corner_inverse(T.corner, level);
    if (!inv)
        throw std::invalid_argument("mirror: level is not a unit of eAe");
    Algebra R = extension_algebra(A, T.mult, "mirror");
    std::size_t a = A.dim, d = T.dim(), n = a + d;
    auto lift_t = [&](const Vec& t) {
        Vec v(n);
        for (std::size_t k = 0; k < d; ++k)
            v[a + k] = t[k];
        return v;
    };
    auto lift_a = [&](const Vec& x) {
        Vec v(n);
        for (std::size_t i = 0; i < a; ++i)
            v[i] = x[i];
        return v;
    };
    m.ebar = lift_t(T.pure(e, *inv));
    Vec one_minus_e = A.sub(A.unit, e);
    m.e0 = vec_add(f, lift_a(one_minus_e), m.ebar);

    // Family: split each member under e into its barred part and the rest.
    std::vector<Vec> fam;
    bool fine = true;
    for (const auto& g : A.idems) {
        if (is_zero(g))
            continue;
        if (A.mul(e, g) == g && A.mul(g, e) == g) {
            Vec gb = lift_t(T.pure(g, A.mul(*inv, g)));
            fam.push_back(gb);
            fam.push_back(vec_sub(f, lift_a(g), gb));
        } else if (is_zero(A.mul(e, g)) && is_zero(A.mul(g, e))) {
            fam.push_back(lift_a(g));
        } else {
            fine = false;
        }
    }
    if (!fine || fam.empty())
        fam = {lift_a(one_minus_e), m.ebar, vec_sub(f, lift_a(e), m.ebar)};
    std::vector<Vec> nz;
    for (auto& v : fam)
        if (!is_zero(v))
            nz.push_back(std::move(v));
    R.idems = nz;

    m.include = Mat(n, a, f);
    m.pi1 = Mat(a, n, f);
    m.pi2 = Mat(a, n, f);
    m.phi = Mat(n, n, f);
    // Twisted multiplication x (x) y -> x level y.
    Mat twisted(a, d, f);
    for (std::size_t k = 0; k < d; ++k) {
        Vec c = T.q.lift(unit_vec(d, k));
        std::size_t q = T.right_space.dim();
        Vec v(a);
        for (std::size_t idx = 0; idx < c.size(); ++idx)
            if (c[idx] != 0)
                v = A.add(v, A.scale(c[idx], A.mul(A.mul(T.left_space.basis()[idx / q], level),
                                                   T.right_space.basis()[idx % q])));
        for (std::size_t r = 0; r < a; ++r)
            twisted.at(r, k) = v[r];
    }
    for (std::size_t i = 0; i < a; ++i) {
        m.include.at(i, i) = 1;
        m.pi1.at(i, i) = 1;
        m.pi2.at(i, i) = 1;
        m.phi.at(i, i) = 1;
    }
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t r = 0; r < a; ++r) {
            m.pi2.at(r, a + k) = twisted.at(r, k);
            m.phi.at(r, a + k) = twisted.at(r, k);
        }
        m.phi.at(a + k, a + k) = f.neg(1);
    }
    m.I = Subspace(n, f);
    for (std::size_t k = 0; k < d; ++k)
        m.I.add(unit_vec(n, a + k));
    m.J = kernel_space(m.pi2);

    // rad R: elements whose images under both projections lie in rad A.
    Quotient top = quotient_space(A.radical());
    Mat both = stack_rows({top.projection * m.pi1, top.projection * m.pi2}, n, f);
    R.radical_hint = kernel_space(both);
    m.R = share(std::move(R));
    return m;
}

MirrorData mirror_reflective(AlgebraPtr A, const Vec& e)
{
    return mirror_reflective(A, e, e);
}

Subspace right_annihilator(const Algebra& R, const Subspace& I)
{
    std::vector<Mat> blocks;
    for (const auto& x : I.basis())
        blocks.push_back(R.left_mult(x));
    return kernel_space(stack_rows(blocks, R.dim, R.field));
}

namespace {

Subspace left_annihilator(const Algebra& R, const Subspace& I)
{
    std::vector<Mat> blocks;
    for (const auto& x : I.basis())
        blocks.push_back(R.right_mult(x));
    return kernel_space(stack_rows(blocks, R.dim, R.field));
}

}  // namespace

bool right_faithful(const Algebra& A, const Subspace& X)
{
    return right_annihilator(A, X).dim() == 0;
}

std::vector<IdentityCheck> mirror_checks(const MirrorData& m)
{
    const Algebra& R = *m.R;
    const Algebra& A = *m.tensor.ambient;
    const Field& f = R.field;
    const Vec& e = m.tensor.idem;
    std::size_t a = A.dim, n = R.dim;
    std::vector<IdentityCheck> out;
    auto add = [&](std::string name, bool ok) { out.push_back({std::move(name), ok}); };
    Vec eR = m.include * e;
    Vec e_minus = vec_sub(f, eR, m.ebar);

    add("ebar idempotent", R.is_idempotent(m.ebar));
    add("ebar = e ebar = ebar e", R.mul(eR, m.ebar) == m.ebar && R.mul(m.ebar, eR) == m.ebar);
    add("I = R ebar R", m.I == R.ideal_generated({m.ebar}));
    add("J = R (e - ebar) R", m.J == R.ideal_generated({e_minus}));
    add("IJ = 0", R.product_span(m.I, m.J).dim() == 0);
    add("JI = 0", R.product_span(m.J, m.I).dim() == 0);
    add("I + J = ReR", m.I.sum(m.J) == R.ideal_generated({eR}));
    Subspace s_expected(n, f);
    Subspace comp = A.two_sided_span(A.sub(A.unit, e), A.sub(A.unit, e));
    for (const auto& v : comp.basis())
        s_expected.add(m.include * v);
    s_expected = s_expected.sum(m.I);
    add("S = e0 R e0", R.two_sided_span(m.e0, m.e0) == s_expected);
    add("phi^2 = id", m.phi * m.phi == Mat::identity(n, f));
    add("phi multiplicative", is_algebra_map(R, R, m.phi));
    add("pi1 multiplicative", is_algebra_map(R, A, m.pi1));
    add("pi2 multiplicative", is_algebra_map(R, A, m.pi2));
    add("pi2 = phi then pi1", m.pi1 * m.phi == m.pi2);
    add("phi(I) = J", image(m.phi, m.I) == m.J);
    add("pi1 surjective with kernel I", rank(m.pi1) == a && kernel_space(m.pi1) == m.I);
    Subspace Ain(n, f);
    for (std::size_t i = 0; i < a; ++i)
        Ain.add(m.include * A.basis(i));
    add("R = A + I direct", Ain.intersect(m.I).dim() == 0 && a + m.I.dim() == n);
    add("R = A + J direct", Ain.intersect(m.J).dim() == 0 && a + m.J.dim() == n);

    auto bijective = [&](const Mat& map, const Subspace& src, const Subspace& dst) {
        return src.dim() == dst.dim() && image(map, src) == dst;
    };
    Subspace Ae = A.left_ideal_span(e), eA = A.right_ideal_span(e), eAe = A.two_sided_span(e, e);
    add("pi2 : R ebar -> Ae bijective", bijective(m.pi2, R.left_ideal_span(m.ebar), Ae));
    add("pi2 : ebar R -> eA bijective", bijective(m.pi2, R.right_ideal_span(m.ebar), eA));
    add("pi2 : ebar R ebar -> eAe bijective", bijective(m.pi2, R.two_sided_span(m.ebar, m.ebar), eAe));
    add("pi1 : R (e - ebar) -> Ae bijective", bijective(m.pi1, R.left_ideal_span(e_minus), Ae));
    add("pi1 : (e - ebar) R -> eA bijective", bijective(m.pi1, R.right_ideal_span(e_minus), eA));
    add("pi1 : (e - ebar) R (e - ebar) -> eAe bijective",
        bijective(m.pi1, R.two_sided_span(e_minus, e_minus), eAe));
    if (right_faithful(A, eA))
        add("J = right annihilator of I", m.J == right_annihilator(R, m.I));
    if (left_annihilator(A, Ae).dim() == 0)
        add("J = left annihilator of I", m.J == left_annihilator(R, m.I));
    add("#(R) = #(A) + #(eAe)", simple_count(R) == simple_count(A) + simple_count(m.tensor.corner.corner));
    return out;
}

ReducedMirror reduced_mirror(const MirrorData& m)
{
    CornerData cd = corner(*m.R, m.e0);
    cd.corner.provenance = "reduced mirror";
    ReducedMirror s;
    s.embed = cd.embed;
    s.compress = cd.compress;
    s.pi1 = m.pi1 * cd.embed;
    s.pi2 = m.pi2 * cd.embed;
    s.S = share(std::move(cd.corner));
    return s;
}

std::vector<IdentityCheck> reduced_checks(const MirrorData& m, const ReducedMirror& s)
{
    const Algebra& A = *m.tensor.ambient;
    const Algebra& S = *s.S;
    const Field& f = A.field;
    std::vector<IdentityCheck> out;
    auto add = [&](std::string name, bool ok) { out.push_back({std::move(name), ok}); };
    Vec c = A.sub(A.unit, m.tensor.idem);
    Subspace comp = A.two_sided_span(c, c);
    Subspace all_s = Subspace::span(S.dim, [&] {
        std::vector<Vec> b;
        for (std::size_t i = 0; i < S.dim; ++i)
            b.push_back(S.basis(i));
        return b;
    }(), f);
    add("dim S = dim (1-e)A(1-e) + dim T", S.dim == comp.dim() + m.tensor.dim());
    if (comp.dim() > 0) {
        CornerData cd = corner(A, c);
        add("pi1' multiplicative", is_algebra_map(S, cd.corner, cd.compress * s.pi1));
    }
    add("pi1' onto (1-e)A(1-e)", image(s.pi1, all_s) == comp);
    add("pi2' multiplicative", is_algebra_map(S, A, s.pi2));
    add("pi2' surjective", rank(s.pi2) == A.dim);
    add("ker pi1' = I", image(s.embed, kernel_space(s.pi1)) == m.I);
    add("ker pi2' = J meet S", image(s.embed, kernel_space(s.pi2)) == m.J.intersect(image(s.embed, all_s)));
    return out;
}

Mat lift_homomorphism(const MirrorData& m, const Algebra& G, const Mat& alpha, const Vec& x)
{
    const CornerTensor& T = m.tensor;
    const Algebra& A = *T.ambient;
    const Algebra& R = *m.R;
    if (!is_algebra_map(A, G, alpha))
        throw std::invalid_argument("lift: the given map is not an algebra homomorphism");
    Vec ae = alpha * T.idem;
    if (G.mul(G.mul(ae, x), ae) != x)
        throw std::invalid_argument("lift: element does not lie in e G e");
    if (G.mul(x, x) != x)
        throw std::invalid_argument("lift: element is not idempotent");
    const CornerData& cd = T.corner;
    for (std::size_t c = 0; c < cd.corner.dim; ++c) {
        Vec img = alpha * (cd.embed * cd.corner.basis(c));
        if (G.mul(img, x) != G.mul(x, img))
            throw std::invalid_argument("lift: element does not commute with the image of " + cd.corner.labels[c]);
    }
    std::size_t a = A.dim, d = T.dim(), q = T.right_space.dim();
    Mat F(G.dim, R.dim, G.field);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t r = 0; r < G.dim; ++r)
            F.at(r, i) = alpha.at(r, i);
    for (std::size_t k = 0; k < d; ++k) {
        Vec c = T.q.lift(unit_vec(d, k));
        Vec v(G.dim);
        for (std::size_t idx = 0; idx < c.size(); ++idx) {
            if (c[idx] == 0)
                continue;
            Vec xl = alpha * T.left_space.basis()[idx / q];
            Vec yr = alpha * A.mul(T.level, T.right_space.basis()[idx % q]);
            v = G.add(v, G.scale(c[idx], G.mul(G.mul(xl, x), yr)));
        }
        for (std::size_t r = 0; r < G.dim; ++r)
            F.at(r, a + k) = v[r];
    }
    if (F * m.ebar != x || !is_algebra_map(R, G, F))
        throw std::logic_error("lift: extension is not multiplicative");
    return F;
}

Mat level_isomorphism(const MirrorData& from, const MirrorData& to, const Vec& mu)
{
    const CornerTensor& T = from.tensor;
    const Algebra& A = *T.ambient;
    if (auto bad = centrality_failure(A, T.idem, mu))
        throw std::invalid_argument("level change: factor is not central in eAe (" + *bad + ")");
    if (A.mul(T.level, mu) != to.tensor.level)
        throw std::invalid_argument("level change: target level is not the scaled level");
    auto inv = corner_inverse(T.corner, mu);
    if (!inv)
        throw std::invalid_argument("level change: factor is not a unit of eAe");
    std::size_t a = A.dim, d = T.dim(), q = T.right_space.dim();
    const Field& f = A.field;
    Mat F(to.R->dim, from.R->dim, f);
    for (std::size_t i = 0; i < a; ++i)
        F.at(i, i) = 1;
    for (std::size_t k = 0; k < d; ++k) {
        Vec c = T.q.lift(unit_vec(d, k));
        Vec v(to.tensor.dim());
        for (std::size_t idx = 0; idx < c.size(); ++idx)
            if (c[idx] != 0)
                v = vec_add(f, v,
                            vec_scale(f, c[idx],
                                      to.tensor.pure(T.left_space.basis()[idx / q],
                                                     A.mul(*inv, T.right_space.basis()[idx % q]))));
        for (std::size_t r = 0; r < v.size(); ++r)
            F.at(a + r, a + k) = v[r];
    }
    if (!inverse(F) || !is_algebra_map(*from.R, *to.R, F))
        throw std::logic_error("level change: map is not an algebra isomorphism");
    return F;
}

CornerDuality corner_duality(AlgebraPtr A, const Vec& e, int trials, std::uint64_t seed)
{
    CornerData cd = corner(*A, e);
    AlgebraPtr L = share(cd.corner);
    Mat id = Mat::identity(A->dim, A->field);
    Bimodule Ae = sub_bimodule(*A, A->left_ideal_span(e), A, id, L, cd.embed, "Ae");
    CornerDuality d;
    d.right_part = sub_bimodule(*A, A->right_ideal_span(e), L, cd.embed, A, id, "eA");
    d.dual_left = dual(Ae);
    auto r = is_bimodule_iso(d.right_part, d.dual_left, trials, seed);
    d.verdict = r.verdict;
    d.iota = r.witness;
    return d;
}

namespace {

// iota(e) as a functional on Ae in the coordinates of left_ideal_span(e).
Vec corner_functional(const MirrorData& m, const CornerDuality& d)
{
    const CornerTensor& T = m.tensor;
    if (!d.iota)
        throw std::invalid_argument("no bimodule isomorphism eA -> D(Ae) available");
    const Mat& W = *d.iota;
    const Bimodule& X = d.right_part;
    const Bimodule& Y = d.dual_left;
    if (W.rows() != Y.dim || W.cols() != X.dim || !inverse(W))
        throw std::invalid_argument("the given map eA -> D(Ae) is not bijective");
    for (std::size_t i = 0; i < X.left_act.size(); ++i)
        if (W * X.left_act[i] != Y.left_act[i] * W)
            throw std::invalid_argument("the given map eA -> D(Ae) is not left linear");
    for (std::size_t i = 0; i < X.right_act.size(); ++i)
        if (W * X.right_act[i] != Y.right_act[i] * W)
            throw std::invalid_argument("the given map eA -> D(Ae) is not right linear");
    return W * T.right_space.coords(T.idem);
}

Scalar pair(const Field& f, const Vec& a, const Vec& b)
{
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            f.axpy(s, a[i], b[i]);
    return s;
}

// Linear form on the ambient tensor space x_i (x) y_j -> func(y_j a x_i) for fixed a.
Vec tensor_form(const CornerTensor& T, const Vec& func, const Vec& a)
{
    const Algebra& A = *T.ambient;
    const auto& X = T.left_space.basis();
    const auto& Y = T.right_space.basis();
    std::size_t q = Y.size();
    Vec out(X.size() * q);
    for (std::size_t j = 0; j < q; ++j) {
        Vec ya = A.mul(Y[j], a);
        for (std::size_t i = 0; i < X.size(); ++i)
            out[i * q + j] = pair(A.field, func, T.left_space.coords(A.mul(ya, X[i])));
    }
    return out;
}

}  // namespace

SymmetrizingData symmetrizing_pipeline(const MirrorData& m, const CornerDuality& d)
{
    const CornerTensor& T = m.tensor;
    const Algebra& A = *T.ambient;
    const Algebra& R = *m.R;
    const Field& f = A.field;
    Vec func = corner_functional(m, d);
    Vec zeta = tensor_form(T, func, A.unit);
    for (const auto& r : T.q.relations.basis())
        if (pair(f, zeta, r) != 0)
            throw std::logic_error("symmetrizing form does not respect balancing");
    std::size_t a = A.dim, dT = T.dim();
    Vec chi(R.dim);
    for (std::size_t k = 0; k < dT; ++k)
        chi[a + k] = pair(f, zeta, T.q.lift(unit_vec(dT, k)));
    SymmetrizingData w{chi, Mat(R.dim, R.dim, f)};
    for (std::size_t i = 0; i < R.dim; ++i)
        for (std::size_t j = 0; j < R.dim; ++j) {
            Scalar s = 0;
            for (const auto& t : R.product(i, j))
                if (chi[t.idx] != 0)
                    f.axpy(s, t.coeff, chi[t.idx]);
            w.gram.at(i, j) = s;
        }
    if (w.gram != w.gram.transpose())
        throw std::logic_error("symmetrizing form is not symmetric");
    if (rank(w.gram) != R.dim)
        throw std::runtime_error("symmetrizing form is degenerate");
    return w;
}

TrivialExtensionLike trivial_extension_compare(const MirrorData& m, const CornerDuality& d)
{
    const CornerTensor& T = m.tensor;
    AlgebraPtr Ap = T.ambient;
    const Algebra& A = *Ap;
    const Field& f = A.field;
    std::size_t a = A.dim, dT = T.dim();
    Vec func = corner_functional(m, d);

    // gamma(x (x) y)(b) = func(y b x).
    Mat G(a, dT, f);
    std::vector<Vec> forms(a);
    for (std::size_t b = 0; b < a; ++b) {
        forms[b] = tensor_form(T, func, A.basis(b));
        for (const auto& r : T.q.relations.basis())
            if (pair(f, forms[b], r) != 0)
                throw std::logic_error("gamma does not respect balancing");
        for (std::size_t k = 0; k < dT; ++k)
            G.at(b, k) = pair(f, forms[b], T.q.lift(unit_vec(dT, k)));
    }
    auto Ginv = dT == a ? inverse(G) : std::nullopt;
    if (!Ginv)
        throw std::invalid_argument("gamma is not bijective");

    // Central lift of the level.
    Subspace Z = center(A);
    std::vector<Vec> cut;
    for (const auto& z : Z.basis())
        cut.push_back(A.mul(A.mul(T.idem, z), T.idem));
    auto sol = solve(columns_to_mat(cut, a, f), T.level);
    if (!sol)
        throw std::invalid_argument("level has no central lift");
    Vec lift(a);
    for (std::size_t k = 0; k < cut.size(); ++k)
        lift = A.add(lift, A.scale((*sol)[k], Z.basis()[k]));

    CornerTensor base = corner_tensor(Ap, T.idem, T.idem);
    BimoduleMult bm;
    bm.dim = a;
    for (std::size_t b = 0; b < a; ++b) {
        bm.left.push_back(A.right_basis_mult(b).transpose());
        bm.right.push_back(A.left_basis_mult(b).transpose());
        bm.labels.push_back("D" + A.labels[b]);
    }
    Mat scale_right = A.left_mult(lift).transpose();
    bm.alpha.assign(a * a, {});
    std::vector<Vec> pre(a);
    for (std::size_t s = 0; s < a; ++s)
        pre[s] = Ginv->column(s);
    for (std::size_t s = 0; s < a; ++s)
        for (std::size_t t = 0; t < a; ++t) {
            Vec w = scale_right * (G * alpha_apply(base.mult, pre[s], pre[t], f));
            bm.alpha[s * a + t] = sparse(w);
        }
    TrivialExtensionLike out;
    out.algebra = share(extension_algebra(A, bm, "twisted trivial extension"));
    out.level_lift = lift;
    out.gamma_bar = Mat(2 * a, a + dT, f);
    for (std::size_t i = 0; i < a; ++i)
        out.gamma_bar.at(i, i) = 1;
    for (std::size_t r = 0; r < a; ++r)
        for (std::size_t k = 0; k < dT; ++k)
            out.gamma_bar.at(a + r, a + k) = G.at(r, k);
    if (!is_algebra_map(*m.R, *out.algebra, out.gamma_bar))
        throw std::logic_error("gamma bar is not multiplicative");
    return out;
}

}  // namespace mra
