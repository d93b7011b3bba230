#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mra {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

// Ground field: the rationals (p == 0) or the prime field F_p.
class Field {
public:
    Field() = default;
    static Field rationals() { return Field(); }
    static Field prime(long p);

    long characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }
    std::string name() const;

    Scalar canon(const Scalar& x) const;
    Scalar add(const Scalar& a, const Scalar& b) const { return p_ ? canon(a + b) : Scalar(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return p_ ? canon(a - b) : Scalar(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return p_ ? canon(a * b) : Scalar(a * b); }
    Scalar neg(const Scalar& a) const { return p_ ? canon(-a) : Scalar(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
    // Fused a += b * c.
    void axpy(Scalar& a, const Scalar& b, const Scalar& c) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    explicit Field(long p) : p_(p) {}
    long p_ = 0;
};

bool is_prime(long n);

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Dense row-major matrix with entries in canonical form for its field.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, Field f = Field());
    static Mat identity(std::size_t n, Field f = Field());
    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols, Field f = Field());
    static Mat from_columns(const std::vector<Vec>& cols, std::size_t rows, Field f = Field());

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    const Field& field() const { return f_; }

    Scalar& at(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
    void set(std::size_t i, std::size_t j, const Scalar& v) { d_[i * c_ + j] = f_.canon(v); }

    Vec row(std::size_t i) const;
    Vec column(std::size_t j) const;
    Mat transpose() const;
    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(const Scalar& s) const;
    bool is_zero() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    std::size_t r_ = 0, c_ = 0;
    Field f_;
    std::vector<Scalar> d_;
};

bool is_zero(const Vec& v);
Vec vec_add(const Field& f, const Vec& a, const Vec& b);
Vec vec_sub(const Field& f, const Vec& a, const Vec& b);
Vec vec_scale(const Field& f, const Scalar& s, const Vec& a);
void vec_axpy(const Field& f, Vec& a, const Scalar& s, const Vec& b);
Vec unit_vec(std::size_t n, std::size_t i);

// Span of vectors kept in fully reduced row echelon form.
class Subspace {
public:
    Subspace() = default;
    Subspace(std::size_t ambient, Field f = Field()) : n_(ambient), f_(f) {}
    static Subspace span(std::size_t ambient, const std::vector<Vec>& gens, Field f = Field());

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return rows_.size(); }
    const Field& field() const { return f_; }
    const std::vector<Vec>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }

    // Returns true if v enlarged the span.
    bool add(const Vec& v);
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    // Coordinates of v (assumed in span) against basis().
    Vec coords(const Vec& v) const;
    bool contains_all(const Subspace& o) const;
    bool operator==(const Subspace& o) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;

private:
    std::size_t n_ = 0;
    Field f_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> piv_;
};

Mat rref(const Mat& m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Mat& m);
std::vector<Vec> kernel_basis(const Mat& m);
std::optional<Vec> solve(const Mat& m, const Vec& b);
std::optional<Mat> inverse(const Mat& m);

// Left null space: vectors y with y^T m = 0.
std::vector<Vec> left_kernel_basis(const Mat& m);

// For m of full column rank: L with L m = I. For m of full row rank: R with m R = I.
Mat left_inverse(const Mat& m);
Mat right_inverse(const Mat& m);

struct Quotient {
    Mat projection;  // q x n
    Mat section;     // n x q
    Subspace relations;
    std::size_t dim() const { return projection.rows(); }
    Vec project(const Vec& v) const;
    Vec lift(const Vec& w) const;
};

Quotient quotient_space(std::size_t ambient_dim, const std::vector<Vec>& relations, Field f = Field());
Quotient quotient_space(const Subspace& relations);

std::string scalar_str(const Scalar& s);
Scalar parse_scalar(const std::string& s);

}  // namespace mra
