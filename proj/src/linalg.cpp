#include "mra/linalg.hpp"

#include <algorithm>

namespace mra {

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Field Field::prime(long p)
{
    if (!is_prime(p))
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    return Field(p);
}

std::string Field::name() const
{
    return p_ == 0 ? "Q" : "F" + std::to_string(p_);
}

Scalar Field::canon(const Scalar& x) const
{
    if (p_ == 0) {
        Scalar y = x;
        y.canonicalize();
        return y;
    }
    mpz_class P(p_);
    mpz_class n = x.get_num() % P;
    if (n < 0)
        n += P;
    mpz_class d = x.get_den() % P;
    if (d < 0)
        d += P;
    if (d == 0)
        throw std::domain_error("denominator vanishes in " + name());
    if (d != 1) {
        mpz_class di;
        mpz_invert(di.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
        n = (n * di) % P;
    }
    return Scalar(n);
}

Scalar Field::inv(const Scalar& a) const
{
    if (a == 0)
        throw std::domain_error("division by zero");
    if (p_ == 0)
        return Scalar(1) / a;
    return canon(Scalar(mpz_class(1), a.get_num()) * a.get_den());
}

void Field::axpy(Scalar& a, const Scalar& b, const Scalar& c) const
{
    if (b == 0 || c == 0)
        return;
    if (p_ == 0)
        a += b * c;
    else
        a = canon(a + b * c);
}

// ---- Mat ----

Mat::Mat(std::size_t rows, std::size_t cols, Field f) : r_(rows), c_(cols), f_(f), d_(rows * cols) {}

Mat Mat::identity(std::size_t n, Field f)
{
    Mat m(n, n, f);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols, Field f)
{
    Mat m(rows.size(), cols, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw DimensionError("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = f.canon(rows[i][j]);
    }
    return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols, std::size_t rows, Field f)
{
    Mat m(rows, cols.size(), f);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw DimensionError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m.at(i, j) = f.canon(cols[j][i]);
    }
    return m;
}

Vec Mat::row(std::size_t i) const
{
    return Vec(d_.begin() + i * c_, d_.begin() + (i + 1) * c_);
}

Vec Mat::column(std::size_t j) const
{
    Vec v(r_);
    for (std::size_t i = 0; i < r_; ++i)
        v[i] = at(i, j);
    return v;
}

Mat Mat::transpose() const
{
    Mat t(c_, r_, f_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

Mat Mat::operator*(const Mat& o) const
{
    if (c_ != o.r_)
        throw DimensionError("matrix product: inner dimensions differ");
    Mat m(r_, o.c_, f_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Scalar& a = at(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.c_; ++j)
                if (o.at(k, j) != 0)
                    m.at(i, j) += a * o.at(k, j);
        }
    if (f_.characteristic())
        for (auto& x : m.d_)
            x = f_.canon(x);
    return m;
}

Vec Mat::operator*(const Vec& v) const
{
    if (v.size() != c_)
        throw DimensionError("matrix-vector product: size mismatch");
    Vec out(r_);
    for (std::size_t i = 0; i < r_; ++i) {
        Scalar s = 0;
        for (std::size_t j = 0; j < c_; ++j)
            if (v[j] != 0 && at(i, j) != 0)
                s += at(i, j) * v[j];
        out[i] = f_.canon(s);
    }
    return out;
}

Mat Mat::operator+(const Mat& o) const
{
    if (r_ != o.r_ || c_ != o.c_)
        throw DimensionError("matrix sum: shape mismatch");
    Mat m(r_, c_, f_);
    for (std::size_t i = 0; i < d_.size(); ++i)
        m.d_[i] = f_.add(d_[i], o.d_[i]);
    return m;
}

Mat Mat::operator-(const Mat& o) const
{
    if (r_ != o.r_ || c_ != o.c_)
        throw DimensionError("matrix difference: shape mismatch");
    Mat m(r_, c_, f_);
    for (std::size_t i = 0; i < d_.size(); ++i)
        m.d_[i] = f_.sub(d_[i], o.d_[i]);
    return m;
}

Mat Mat::scaled(const Scalar& s) const
{
    Mat m(r_, c_, f_);
    for (std::size_t i = 0; i < d_.size(); ++i)
        m.d_[i] = f_.mul(d_[i], s);
    return m;
}

bool Mat::is_zero() const
{
    return std::all_of(d_.begin(), d_.end(), [](const Scalar& x) { return x == 0; });
}

bool Mat::operator==(const Mat& o) const
{
    return r_ == o.r_ && c_ == o.c_ && d_ == o.d_;
}

// ---- vectors ----

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

Vec vec_add(const Field& f, const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw DimensionError("vector sum: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = f.add(a[i], b[i]);
    return r;
}

Vec vec_sub(const Field& f, const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw DimensionError("vector difference: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = f.sub(a[i], b[i]);
    return r;
}

Vec vec_scale(const Field& f, const Scalar& s, const Vec& a)
{
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = f.mul(s, a[i]);
    return r;
}

void vec_axpy(const Field& f, Vec& a, const Scalar& s, const Vec& b)
{
    if (s == 0)
        return;
    for (std::size_t i = 0; i < a.size(); ++i)
        f.axpy(a[i], s, b[i]);
}

Vec unit_vec(std::size_t n, std::size_t i)
{
    Vec v(n);
    v[i] = 1;
    return v;
}

// ---- Subspace ----

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& gens, Field f)
{
    Subspace s(ambient, f);
    for (const auto& g : gens)
        s.add(g);
    return s;
}

Vec Subspace::reduce(const Vec& v) const
{
    if (v.size() != n_)
        throw DimensionError("subspace reduce: size mismatch");
    Vec r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (r[piv_[i]] == 0)
            continue;
        Scalar c = f_.neg(r[piv_[i]]);
        vec_axpy(f_, r, c, rows_[i]);
    }
    return r;
}

bool Subspace::add(const Vec& v)
{
    Vec r = reduce(v);
    std::size_t k = 0;
    while (k < n_ && r[k] == 0)
        ++k;
    if (k == n_)
        return false;
    Scalar s = f_.inv(r[k]);
    for (auto& x : r)
        x = f_.mul(x, s);
    for (auto& row : rows_)
        if (row[k] != 0) {
            Scalar c = f_.neg(row[k]);
            vec_axpy(f_, row, c, r);
        }
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), k) - piv_.begin();
    piv_.insert(piv_.begin() + pos, k);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return true;
}

bool Subspace::contains(const Vec& v) const
{
    return is_zero(reduce(v));
}

Vec Subspace::coords(const Vec& v) const
{
    Vec c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
        c[i] = v[piv_[i]];
    return c;
}

bool Subspace::contains_all(const Subspace& o) const
{
    return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& v) { return contains(v); });
}

bool Subspace::operator==(const Subspace& o) const
{
    return n_ == o.n_ && piv_ == o.piv_ && rows_ == o.rows_;
}

Subspace Subspace::sum(const Subspace& o) const
{
    Subspace s = *this;
    for (const auto& v : o.rows_)
        s.add(v);
    return s;
}

Subspace Subspace::intersect(const Subspace& o) const
{
    std::vector<Vec> cols;
    for (const auto& v : rows_)
        cols.push_back(v);
    for (const auto& v : o.rows_)
        cols.push_back(vec_scale(f_, -1, v));
    Subspace out(n_, f_);
    if (cols.empty())
        return out;
    Mat m = Mat::from_columns(cols, n_, f_);
    for (const auto& k : kernel_basis(m)) {
        Vec w(n_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            vec_axpy(f_, w, k[i], rows_[i]);
        out.add(w);
    }
    return out;
}

// ---- elimination ----

Mat rref(const Mat& m, std::vector<std::size_t>* pivots)
{
    const Field& f = m.field();
    Mat a = m;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a.at(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a.at(p, j), a.at(r, j));
        Scalar s = f.inv(a.at(r, c));
        for (std::size_t j = c; j < a.cols(); ++j)
            a.at(r, j) = f.mul(a.at(r, j), s);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c) == 0)
                continue;
            Scalar t = f.neg(a.at(i, c));
            for (std::size_t j = c; j < a.cols(); ++j)
                f.axpy(a.at(i, j), t, a.at(r, j));
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots)
        *pivots = std::move(piv);
    return a;
}

std::size_t rank(const Mat& m)
{
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

std::vector<Vec> kernel_basis(const Mat& m)
{
    std::vector<std::size_t> piv;
    Mat a = rref(m, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv)
        is_piv[p] = true;
    std::vector<Vec> out;
    for (std::size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_piv[fc])
            continue;
        Vec v(m.cols());
        v[fc] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = m.field().neg(a.at(i, fc));
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vec> left_kernel_basis(const Mat& m)
{
    return kernel_basis(m.transpose());
}

Mat left_inverse(const Mat& m)
{
    std::vector<std::size_t> piv;
    rref(m.transpose(), &piv);
    if (piv.size() != m.cols())
        throw DimensionError("left inverse of a matrix without full column rank");
    std::size_t r = m.cols();
    Mat sq(r, r, m.field());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            sq.at(i, j) = m.at(piv[i], j);
    Mat inv = *inverse(sq);
    Mat out(r, m.rows(), m.field());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out.at(i, piv[j]) = inv.at(i, j);
    return out;
}

Mat right_inverse(const Mat& m)
{
    return left_inverse(m.transpose()).transpose();
}

std::optional<Vec> solve(const Mat& m, const Vec& b)
{
    if (b.size() != m.rows())
        throw DimensionError("solve: right-hand side has " + std::to_string(b.size()) + " entries, matrix has " +
                             std::to_string(m.rows()) + " rows");
    Mat aug(m.rows(), m.cols() + 1, m.field());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = m.field().canon(b[i]);
    }
    std::vector<std::size_t> piv;
    Mat a = rref(aug, &piv);
    if (!piv.empty() && piv.back() == m.cols())
        return std::nullopt;
    Vec x(m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        x[piv[i]] = a.at(i, m.cols());
    return x;
}

std::optional<Mat> inverse(const Mat& m)
{
    if (m.rows() != m.cols())
        throw DimensionError("inverse of a non-square matrix");
    std::size_t n = m.rows();
    Mat aug(n, 2 * n, m.field());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    Mat a = rref(aug, &piv);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1))
        return std::nullopt;
    Mat inv(n, n, m.field());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv.at(i, j) = a.at(i, n + j);
    return inv;
}

// ---- quotients ----

Vec Quotient::project(const Vec& v) const
{
    return projection * v;
}

Vec Quotient::lift(const Vec& w) const
{
    return section * w;
}

Quotient quotient_space(const Subspace& rel)
{
    const Field& f = rel.field();
    std::size_t n = rel.ambient();
    std::vector<bool> is_piv(n, false);
    for (auto p : rel.pivots())
        is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_piv[j])
            free.push_back(j);
    Quotient q{Mat(free.size(), n, f), Mat(n, free.size(), f), rel};
    for (std::size_t j = 0; j < n; ++j) {
        Vec r = rel.reduce(unit_vec(n, j));
        for (std::size_t k = 0; k < free.size(); ++k)
            q.projection.at(k, j) = r[free[k]];
    }
    for (std::size_t k = 0; k < free.size(); ++k)
        q.section.at(free[k], k) = 1;
    return q;
}

Quotient quotient_space(std::size_t ambient_dim, const std::vector<Vec>& relations, Field f)
{
    for (const auto& r : relations)
        if (r.size() != ambient_dim)
            throw DimensionError("relation does not live in the ambient space");
    return quotient_space(Subspace::span(ambient_dim, relations, f));
}

std::string scalar_str(const Scalar& s)
{
    return s.get_str();
}

Scalar parse_scalar(const std::string& s)
{
    Scalar q(s, 10);
    q.canonicalize();
    return q;
}

}  // namespace mra
