#include "mra/module.hpp"

#include "mra/rng.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mra {

AlgebraPtr share(Algebra A)
{
    return std::make_shared<const Algebra>(std::move(A));
}

bool same_algebra(const Algebra& a, const Algebra& b)
{
    if (&a == &b)
        return true;
    if (a.dim != b.dim || a.field != b.field || a.unit != b.unit)
        return false;
    for (std::size_t c = 0; c < a.table.size(); ++c) {
        const auto& x = a.table[c];
        const auto& y = b.table[c];
        if (x.size() != y.size())
            return false;
        for (std::size_t t = 0; t < x.size(); ++t)
            if (x[t].idx != y[t].idx || x[t].coeff != y[t].coeff)
                return false;
    }
    return a.generators() == b.generators();
}

namespace {

void require_same(const Module& M, const Module& N)
{
    if (!same_algebra(*M.over, *N.over))
        throw std::invalid_argument("modules over different algebras");
}

Mat block_diagonal(const std::vector<const Mat*>& blocks, const Field& f)
{
    std::size_t r = 0, c = 0;
    for (const auto* b : blocks) {
        r += b->rows();
        c += b->cols();
    }
    Mat out(r, c, f);
    std::size_t ro = 0, co = 0;
    for (const auto* b : blocks) {
        for (std::size_t i = 0; i < b->rows(); ++i)
            for (std::size_t j = 0; j < b->cols(); ++j)
                out.at(ro + i, co + j) = b->at(i, j);
        ro += b->rows();
        co += b->cols();
    }
    return out;
}

Subspace column_space(const Mat& m)
{
    Subspace s(m.rows(), m.field());
    for (std::size_t j = 0; j < m.cols(); ++j)
        s.add(m.column(j));
    return s;
}

Vec flatten(const Mat& m)
{
    Vec v(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            v[i * m.cols() + j] = m.at(i, j);
    return v;
}

Mat unflatten(const Vec& v, std::size_t rows, std::size_t cols, const Field& f)
{
    Mat m(rows, cols, f);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = v[i * cols + j];
    return m;
}

// Action of arbitrary algebra elements, through a basis of words in the generators.
class ElementAction {
public:
    explicit ElementAction(const Module& M) : M_(M)
    {
        const Algebra& A = *M.over;
        const auto& G = A.generators();
        Subspace span(A.dim, A.field);
        span.add(A.unit);
        words_.push_back(A.unit);
        mats_.push_back(Mat::identity(M.dim, A.field));
        for (std::size_t w = 0; w < words_.size() && words_.size() < A.dim; ++w)
            for (std::size_t g = 0; g < G.size(); ++g) {
                Vec v = A.mul(G[g], words_[w]);
                if (span.add(v)) {
                    words_.push_back(v);
                    mats_.push_back(M.act[g] * mats_[w]);
                }
            }
        if (words_.size() != A.dim)
            throw std::runtime_error("generators do not span the algebra");
        coords_ = *inverse(Mat::from_columns(words_, A.dim, A.field));
    }

    Mat operator()(const Vec& a) const
    {
        Vec c = coords_ * a;
        Mat out(M_.dim, M_.dim, M_.over->field);
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0)
                out = out + mats_[j].scaled(c[j]);
        return out;
    }

private:
    const Module& M_;
    std::vector<Vec> words_;
    std::vector<Mat> mats_;
    Mat coords_;
};

// Fast radical when the generators are the primitives followed by radical elements.
bool radical_generators(const Algebra& A, std::vector<std::size_t>& rad_gens)
{
    const auto& G = A.generators();
    std::vector<Vec> prims;
    try {
        prims = A.primitives();
    } catch (const std::exception&) {
        return false;
    }
    if (G.size() < prims.size())
        return false;
    for (std::size_t i = 0; i < prims.size(); ++i)
        if (G[i] != prims[i])
            return false;
    const Subspace& rad = A.radical();
    for (std::size_t i = prims.size(); i < G.size(); ++i) {
        if (!rad.contains(G[i]))
            return false;
        rad_gens.push_back(i);
    }
    return true;
}

// Hom(P, N) parametrised by the images of the summand generators e_k in e_k N.
struct HomParams {
    std::vector<Subspace> spaces;    // e_k N per summand
    std::vector<std::size_t> start;  // parameter offset per summand
    std::size_t count = 0;
    std::vector<Mat> images;         // per basis vector of P: N.dim x count
};

HomParams hom_params(const ProjectiveModule& P, const Module& N)
{
    HomParams hp;
    const Field& f = N.over->field;
    for (std::size_t k = 0; k < P.summands(); ++k) {
        hp.start.push_back(hp.count);
        hp.spaces.push_back(column_space(act_idempotent(N, P.idems[k])));
        hp.count += hp.spaces.back().dim();
    }
    std::size_t n = P.module.dim;
    hp.images.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        if (P.parent[t] < 0) {
            std::size_t k = P.summand_of[t];
            Mat y(N.dim, hp.count, f);
            const auto& b = hp.spaces[k].basis();
            for (std::size_t q = 0; q < b.size(); ++q)
                for (std::size_t i = 0; i < N.dim; ++i)
                    y.at(i, hp.start[k] + q) = b[q][i];
            hp.images[t] = std::move(y);
        } else {
            hp.images[t] = N.act[P.via[t]] * hp.images[static_cast<std::size_t>(P.parent[t])];
        }
    }
    return hp;
}

// Image of a vector x of P under all parametrised homomorphisms: N.dim x count.
Mat hom_image(const HomParams& hp, const Vec& x, std::size_t ndim, const Field& f)
{
    Mat out(ndim, hp.count, f);
    for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t] != 0)
            out = out + hp.images[t].scaled(x[t]);
    return out;
}

// Matrix of Hom(P_prev, N) -> Hom(P_cur, N), f -> f o d.
Mat pullback(const HomParams& prev, const HomParams& cur, const ProjectiveModule& Pcur, const Mat& d, const Module& N)
{
    const Field& f = N.over->field;
    Mat out(cur.count, prev.count, f);
    for (std::size_t j = 0; j < Pcur.summands(); ++j) {
        Mat img = hom_image(prev, d.column(Pcur.offsets[j]), N.dim, f);
        const Subspace& sp = cur.spaces[j];
        for (std::size_t p = 0; p < prev.count; ++p) {
            Vec c = sp.coords(img.column(p));
            for (std::size_t q = 0; q < c.size(); ++q)
                out.at(cur.start[j] + q, p) = c[q];
        }
    }
    return out;
}

Vec element_in_summand(const ProjectiveModule& P, const Vec& x, std::size_t k, std::size_t adim, const Field& f)
{
    Vec a(adim);
    for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t] != 0 && P.summand_of[t] == k)
            vec_axpy(f, a, x[t], P.elems[t]);
    return a;
}

// Pairing rank data for projective summands of class cls.
struct SummandPairing {
    Mat gamma;  // (r * dim P) x M.dim, stacked chosen homomorphisms M -> P
    std::size_t rank = 0;
};

SummandPairing summand_pairing(const Module& M, std::size_t cls)
{
    const Algebra& A = *M.over;
    const Field& fld = A.field;
    const Vec& f = A.primitives()[A.class_representatives()[cls]];
    ProjectiveModule Pf = projective_sum(M.over, {f});
    Subspace X = column_space(act_idempotent(M, f));
    SummandPairing out;
    out.gamma = Mat(0, M.dim, fld);
    if (X.dim() == 0)
        return out;
    auto G = hom_space(M, Pf.module);
    if (G.empty())
        return out;
    Quotient q = quotient_space(A.radical());
    Vec pf = q.project(f);
    std::size_t piv = 0;
    while (pf[piv] == 0)
        ++piv;
    Mat T(X.dim(), G.size(), fld);
    for (std::size_t i = 0; i < X.dim(); ++i)
        for (std::size_t j = 0; j < G.size(); ++j) {
            Vec y = G[j] * X.basis()[i];
            Vec a = element_in_summand(Pf, y, 0, A.dim, fld);
            T.at(i, j) = fld.div(q.project(a)[piv], pf[piv]);
        }
    std::vector<std::size_t> cols;
    rref(T, &cols);
    out.rank = cols.size();
    std::vector<Vec> rows;
    for (auto j : cols)
        for (std::size_t r = 0; r < G[j].rows(); ++r)
            rows.push_back(G[j].row(r));
    out.gamma = Mat::from_rows(rows, M.dim, fld);
    return out;
}

Module dual_onto(const Module& M, AlgebraPtr target)
{
    Module D;
    D.over = target;
    D.over_op = M.over;
    D.dim = M.dim;
    D.label = M.label.empty() ? std::string() : "D(" + M.label + ")";
    const auto& G = target->generators();
    if (G == M.over->generators()) {
        for (const auto& a : M.act)
            D.act.push_back(a.transpose());
    } else {
        ElementAction ea(M);
        for (const auto& g : G)
            D.act.push_back(ea(g).transpose());
    }
    return D;
}

AlgebraPtr opposite_for(const Module& M)
{
    return M.over_op ? M.over_op : share(opposite(*M.over));
}

}  // namespace

Module make_module(AlgebraPtr A, std::size_t dim, std::vector<Mat> act, std::string label)
{
    if (act.size() != A->generators().size())
        throw DimensionError("one action matrix per generator is required");
    for (const auto& m : act)
        if (m.rows() != dim || m.cols() != dim)
            throw DimensionError("action matrix has the wrong size");
    Module M;
    M.over = std::move(A);
    M.dim = dim;
    M.act = std::move(act);
    M.label = std::move(label);
    return M;
}

Mat act_element(const Module& M, const Vec& a)
{
    return ElementAction(M)(a);
}

Mat act_idempotent(const Module& M, const Vec& e)
{
    const auto& G = M.over->generators();
    for (std::size_t i = 0; i < G.size(); ++i)
        if (G[i] == e)
            return M.act[i];
    return act_element(M, e);
}

std::optional<std::string> check_module(const Module& M)
{
    const Algebra& A = *M.over;
    ElementAction ea(M);
    std::vector<Mat> b;
    for (std::size_t i = 0; i < A.dim; ++i)
        b.push_back(ea(A.basis(i)));
    const auto& G = A.generators();
    for (std::size_t g = 0; g < G.size(); ++g)
        if (ea(G[g]) != M.act[g])
            return "generator " + std::to_string(g) + " acts inconsistently with the word basis";
    if (ea(A.unit) != Mat::identity(M.dim, A.field))
        return std::string("unit does not act as the identity");
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j) {
            Mat want(M.dim, M.dim, A.field);
            for (const auto& t : A.product(i, j))
                want = want + b[t.idx].scaled(t.coeff);
            if (b[i] * b[j] != want)
                return "action of " + A.labels[i] + "*" + A.labels[j] + " is not the product of actions";
        }
    return std::nullopt;
}

ProjectiveModule projective_sum(AlgebraPtr A, const std::vector<Vec>& idems)
{
    const Algebra& alg = *A;
    const Field& f = alg.field;
    const auto& G = alg.generators();
    ProjectiveModule P;
    std::vector<Mat> blocks(G.size());
    std::vector<std::vector<Mat>> per_summand(G.size());
    for (std::size_t k = 0; k < idems.size(); ++k) {
        const Vec& e = idems[k];
        if (!alg.is_idempotent(e) || is_zero(e))
            throw std::invalid_argument("projective summand needs a nonzero idempotent");
        std::size_t start = P.elems.size();
        P.idems.push_back(e);
        P.offsets.push_back(start);
        Subspace span(alg.dim, f);
        span.add(e);
        P.elems.push_back(e);
        P.parent.push_back(-1);
        P.via.push_back(0);
        P.summand_of.push_back(k);
        for (std::size_t t = start; t < P.elems.size(); ++t)
            for (std::size_t g = 0; g < G.size(); ++g) {
                Vec v = alg.mul(G[g], P.elems[t]);
                if (span.add(v)) {
                    P.elems.push_back(v);
                    P.parent.push_back(static_cast<long>(t));
                    P.via.push_back(g);
                    P.summand_of.push_back(k);
                }
            }
        std::vector<Vec> basis(P.elems.begin() + static_cast<long>(start), P.elems.end());
        Mat B = Mat::from_columns(basis, alg.dim, f);
        Mat L = left_inverse(B);
        for (std::size_t g = 0; g < G.size(); ++g)
            per_summand[g].push_back(L * (alg.left_mult(G[g]) * B));
    }
    P.module.over = A;
    P.module.dim = P.elems.size();
    for (std::size_t g = 0; g < G.size(); ++g) {
        std::vector<const Mat*> ptrs;
        for (const auto& m : per_summand[g])
            ptrs.push_back(&m);
        P.module.act.push_back(block_diagonal(ptrs, f));
    }
    return P;
}

Module regular_module(AlgebraPtr A)
{
    Module M;
    M.over = A;
    M.dim = A->dim;
    for (const auto& g : A->generators())
        M.act.push_back(A->left_mult(g));
    M.label = "A";
    return M;
}

Module projective(AlgebraPtr A, const Vec& e)
{
    return projective_sum(std::move(A), {e}).module;
}

Module simple_module(AlgebraPtr A, std::size_t cls)
{
    const Vec& f = A->primitives()[A->class_representatives()[cls]];
    Module P = projective(A, f);
    Module S = quotient_module(P, radical_submodule(P));
    S.label = "S" + std::to_string(cls);
    return S;
}

std::vector<Module> simple_modules(AlgebraPtr A)
{
    std::vector<Module> out;
    for (std::size_t c = 0; c < A->class_representatives().size(); ++c)
        out.push_back(simple_module(A, c));
    return out;
}

Subspace generated_submodule(const Module& M, const std::vector<Vec>& seeds)
{
    Subspace S(M.dim, M.over->field);
    std::vector<Vec> queue;
    for (const auto& v : seeds)
        if (S.add(v))
            queue.push_back(v);
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& a : M.act) {
            Vec w = a * queue[i];
            if (S.add(w))
                queue.push_back(std::move(w));
        }
    return S;
}

Subspace radical_submodule(const Module& M)
{
    std::vector<std::size_t> rg;
    std::vector<Vec> seeds;
    if (radical_generators(*M.over, rg)) {
        for (auto g : rg)
            for (std::size_t j = 0; j < M.dim; ++j)
                seeds.push_back(M.act[g].column(j));
    } else {
        ElementAction ea(M);
        for (const auto& r : M.over->radical().basis()) {
            Mat m = ea(r);
            for (std::size_t j = 0; j < M.dim; ++j)
                seeds.push_back(m.column(j));
        }
    }
    return generated_submodule(M, seeds);
}

Module submodule(const Module& M, const Subspace& S)
{
    Module out;
    out.over = M.over;
    out.over_op = M.over_op;
    out.dim = S.dim();
    const Field& f = M.over->field;
    for (const auto& a : M.act) {
        Mat m(S.dim(), S.dim(), f);
        for (std::size_t j = 0; j < S.dim(); ++j) {
            Vec c = S.coords(a * S.basis()[j]);
            for (std::size_t i = 0; i < c.size(); ++i)
                m.at(i, j) = c[i];
        }
        out.act.push_back(std::move(m));
    }
    return out;
}

Module quotient_module(const Module& M, const Subspace& S)
{
    Quotient q = quotient_space(S);
    Module out;
    out.over = M.over;
    out.over_op = M.over_op;
    out.dim = q.dim();
    for (const auto& a : M.act)
        out.act.push_back(q.projection * (a * q.section));
    return out;
}

Module direct_sum(const std::vector<Module>& parts)
{
    if (parts.empty())
        throw std::invalid_argument("direct sum of no modules");
    Module out;
    out.over = parts[0].over;
    out.over_op = parts[0].over_op;
    for (const auto& p : parts) {
        require_same(parts[0], p);
        out.dim += p.dim;
        out.label += (out.label.empty() ? "" : "+") + p.label;
    }
    for (std::size_t g = 0; g < parts[0].act.size(); ++g) {
        std::vector<const Mat*> ptrs;
        for (const auto& p : parts)
            ptrs.push_back(&p.act[g]);
        out.act.push_back(block_diagonal(ptrs, out.over->field));
    }
    return out;
}

Module dual(const Module& M, AlgebraPtr op)
{
    return dual_onto(M, op ? op : opposite_for(M));
}

Module restrict_scalars(AlgebraPtr R, const Mat& pi, const Module& M)
{
    std::vector<Mat> act;
    for (const auto& g : R->generators())
        act.push_back(act_element(M, pi * g));
    return make_module(std::move(R), M.dim, std::move(act), M.label);
}

bool is_homomorphism(const Module& M, const Module& N, const Mat& f)
{
    if (f.rows() != N.dim || f.cols() != M.dim)
        return false;
    for (std::size_t g = 0; g < M.act.size(); ++g)
        if (f * M.act[g] != N.act[g] * f)
            return false;
    return true;
}

std::vector<Mat> hom_space(const Module& M, const Module& N)
{
    require_same(M, N);
    const Field& f = M.over->field;
    if (M.dim == 0 || N.dim == 0)
        return {};
    Cover c = projective_cover(M);
    HomParams hp = hom_params(c.P, N);
    if (hp.count == 0)
        return {};
    auto K = kernel_basis(c.map);
    std::vector<Vec> rows;
    for (const auto& z : K) {
        Mat img = hom_image(hp, z, N.dim, f);
        for (std::size_t i = 0; i < N.dim; ++i)
            rows.push_back(img.row(i));
    }
    auto sols = kernel_basis(Mat::from_rows(rows, hp.count, f));
    Mat sec = right_inverse(c.map);
    std::vector<Mat> out;
    for (const auto& s : sols) {
        Mat FP(N.dim, c.P.module.dim, f);
        for (std::size_t t = 0; t < c.P.module.dim; ++t) {
            Vec col = hp.images[t] * s;
            for (std::size_t i = 0; i < N.dim; ++i)
                FP.at(i, t) = col[i];
        }
        out.push_back(FP * sec);
    }
    return out;
}

Algebra end_algebra(const Module& M, const std::vector<Mat>& family)
{
    return end_algebra_basis(M, family).algebra;
}

EndAlgebra end_algebra_basis(const Module& M, const std::vector<Mat>& family)
{
    const Field& f = M.over->field;
    Subspace S(M.dim * M.dim, f);
    for (const auto& h : hom_space(M, M))
        S.add(flatten(h));
    std::size_t d = S.dim();
    std::vector<Mat> E;
    for (const auto& v : S.basis())
        E.push_back(unflatten(v, M.dim, M.dim, f));
    auto table = table_from_products(d, [&](std::size_t a, std::size_t b) { return S.coords(flatten(E[b] * E[a])); });
    Vec unit = S.coords(flatten(Mat::identity(M.dim, f)));
    std::vector<Vec> idems;
    for (const auto& p : family) {
        Vec v = flatten(p);
        if (!S.contains(v))
            throw std::invalid_argument("family member is not an endomorphism");
        idems.push_back(S.coords(v));
    }
    if (idems.empty())
        idems.push_back(unit);
    return {make_algebra(f, d, generic_labels("f", d), std::move(table), unit, std::move(idems), "endomorphism"),
            std::move(E)};
}

Cover projective_cover(const Module& M)
{
    const Algebra& A = *M.over;
    const auto& prims = A.primitives();
    Subspace radM = radical_submodule(M);
    std::vector<Vec> idems, xs;
    for (auto r : A.class_representatives()) {
        const Vec& f = prims[r];
        Mat Ef = act_idempotent(M, f);
        Subspace acc = radM;
        for (std::size_t j = 0; j < M.dim; ++j) {
            Vec c = Ef.column(j);
            if (!is_zero(c) && acc.add(c)) {
                xs.push_back(c);
                idems.push_back(f);
            }
        }
    }
    Cover out;
    if (idems.empty()) {
        out.P.module.over = M.over;
        out.P.module.act.assign(A.generators().size(), Mat(0, 0, A.field));
        out.map = Mat(M.dim, 0, A.field);
        return out;
    }
    out.P = projective_sum(M.over, idems);
    out.P.module.over_op = M.over_op;
    std::size_t n = out.P.module.dim;
    out.map = Mat(M.dim, n, A.field);
    for (std::size_t t = 0; t < n; ++t) {
        Vec col = out.P.parent[t] < 0 ? xs[out.P.summand_of[t]]
                                      : M.act[out.P.via[t]] * out.map.column(static_cast<std::size_t>(out.P.parent[t]));
        for (std::size_t i = 0; i < M.dim; ++i)
            out.map.at(i, t) = col[i];
    }
    return out;
}

bool is_projective(const Module& M)
{
    return projective_cover(M).P.module.dim == M.dim;
}

std::size_t projective_multiplicity(const Module& M, std::size_t cls)
{
    return summand_pairing(M, cls).rank;
}

Module strip_projectives(const Module& M)
{
    std::vector<Vec> rows;
    for (std::size_t c = 0; c < M.over->class_representatives().size(); ++c) {
        auto sp = summand_pairing(M, c);
        for (std::size_t r = 0; r < sp.gamma.rows(); ++r)
            rows.push_back(sp.gamma.row(r));
    }
    if (rows.empty())
        return M;
    Mat gamma = Mat::from_rows(rows, M.dim, M.over->field);
    Subspace K = Subspace::span(M.dim, kernel_basis(gamma), M.over->field);
    Module out = submodule(M, K);
    out.label = M.label;
    return out;
}

Module syzygy(const Module& M, std::size_t n)
{
    if (n == 0)
        return strip_projectives(M);
    Module cur = M;
    for (std::size_t i = 0; i < n && cur.dim > 0; ++i) {
        Cover c = projective_cover(cur);
        Subspace K = Subspace::span(c.P.module.dim, kernel_basis(c.map), M.over->field);
        cur = submodule(c.P.module, K);
    }
    return cur;
}

Resolution projective_resolution(const Module& M, std::size_t length)
{
    Resolution res;
    res.syzygies.push_back(M);
    Mat incl;
    for (std::size_t i = 0; i <= length; ++i) {
        const Module& cur = res.syzygies.back();
        if (cur.dim == 0) {
            res.terminated = true;
            break;
        }
        Cover c = projective_cover(cur);
        res.maps.push_back(i == 0 ? c.map : incl * c.map);
        Subspace K = Subspace::span(c.P.module.dim, kernel_basis(c.map), M.over->field);
        incl = Mat::from_columns(K.basis(), c.P.module.dim, M.over->field);
        if (K.dim() == 0)
            incl = Mat(c.P.module.dim, 0, M.over->field);
        Module next = submodule(c.P.module, K);
        res.terms.push_back(std::move(c.P));
        res.syzygies.push_back(std::move(next));
    }
    if (res.syzygies.back().dim == 0)
        res.terminated = true;
    return res;
}

std::optional<std::string> check_resolution(const Resolution& r, const Module& M)
{
    if (r.terms.empty())
        return M.dim == 0 ? std::nullopt : std::optional<std::string>("empty resolution of a nonzero module");
    if (rank(r.maps[0]) != M.dim)
        return std::string("augmentation is not surjective");
    for (std::size_t i = 1; i < r.terms.size(); ++i) {
        const Mat& prev = r.maps[i - 1];
        const Mat& cur = r.maps[i];
        if (!(prev * cur).is_zero())
            return "composite of consecutive maps is nonzero at degree " + std::to_string(i);
        if (rank(cur) + rank(prev) != r.terms[i - 1].module.dim)
            return "not exact at degree " + std::to_string(i - 1);
        Subspace rad = radical_submodule(r.terms[i - 1].module);
        for (std::size_t j = 0; j < cur.cols(); ++j)
            if (!rad.contains(cur.column(j)))
                return "not minimal at degree " + std::to_string(i);
    }
    for (std::size_t i = 0; i < r.terms.size(); ++i)
        if (!is_homomorphism(r.terms[i].module, i == 0 ? M : r.terms[i - 1].module, r.maps[i]))
            return "map at degree " + std::to_string(i) + " is not a homomorphism";
    if (r.terminated && rank(r.maps.back()) != r.terms.back().module.dim)
        return std::string("last map of a finite resolution is not injective");
    return std::nullopt;
}

std::vector<std::size_t> ext_dims(const Module& M, const Module& N, std::size_t upto)
{
    require_same(M, N);
    Resolution res = projective_resolution(M, upto + 1);
    std::vector<HomParams> hp;
    for (const auto& P : res.terms)
        hp.push_back(hom_params(P, N));
    std::vector<std::size_t> rk(hp.size() + 1, 0);  // rk[i] = rank of Hom(P_{i-1},N) -> Hom(P_i,N)
    for (std::size_t i = 1; i < hp.size(); ++i)
        rk[i] = rank(pullback(hp[i - 1], hp[i], res.terms[i], res.maps[i], N));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= upto; ++i) {
        if (i >= hp.size()) {
            out.push_back(0);
            continue;
        }
        out.push_back(hp[i].count - rk[i] - rk[i + 1]);
    }
    return out;
}

std::size_t ext(const Module& M, const Module& N, std::size_t i)
{
    return ext_dims(M, N, i)[i];
}

std::vector<std::size_t> ext_dims_injective(const Module& M, const Module& N, std::size_t upto)
{
    AlgebraPtr op = opposite_for(M);
    return ext_dims(dual(N, op), dual(M, op), upto);
}

Verdict projective_dimension(const Module& M, int cap)
{
    if (M.dim == 0)
        return Verdict::certified(0, "zero module");
    Resolution r = projective_resolution(M, static_cast<std::size_t>(cap));
    if (r.terminated)
        return Verdict::certified(static_cast<long>(r.terms.size()) - 1);
    return Verdict::unknown(cap, "resolution longer than the cap");
}

Periodicity find_periodicity(const Module& M, std::size_t cap, std::uint64_t seed)
{
    Periodicity p;
    std::vector<Module> orbit{strip_projectives(M)};
    for (std::size_t j = 1; j <= cap; ++j) {
        Module next = syzygy(orbit.back(), 1);
        if (next.dim == 0) {
            p.vanishes = true;
            p.start = j;
            return p;
        }
        for (std::size_t s = 0; s < orbit.size(); ++s) {
            if (orbit[s].dim != next.dim)
                continue;
            if (is_module_iso(orbit[s], next, 16, seed).verdict.is_certified()) {
                p.found = true;
                p.start = s;
                p.period = j - s;
                return p;
            }
        }
        orbit.push_back(std::move(next));
    }
    return p;
}

Verdict is_rigid(const Module& M, std::size_t m)
{
    if (m == 0)
        return Verdict::yes("no degrees to check");
    auto e = ext_dims(M, M, m);
    for (std::size_t i = 1; i <= m; ++i)
        if (e[i] != 0)
            return Verdict::refuted_at(static_cast<long>(i), "Ext is nonzero");
    return Verdict::yes();
}

Verdict is_orthogonal(const Module& M, std::size_t cap, std::uint64_t seed)
{
    auto e = ext_dims(M, M, cap);
    for (std::size_t i = 1; i <= cap; ++i)
        if (e[i] != 0)
            return Verdict::refuted_at(static_cast<long>(i), "Ext is nonzero");
    Periodicity p = find_periodicity(M, cap, seed);
    if (p.vanishes)
        return Verdict::certified_infinite("finite projective dimension");
    if (p.found && p.start + p.period <= cap)
        return Verdict::certified_infinite("syzygy orbit is periodic");
    return Verdict::unknown(static_cast<int>(cap), "no periodicity certificate within the cap");
}

std::vector<std::size_t> tor_dims(const Module& X, const Module& Y, std::size_t upto)
{
    const Field& f = Y.over->field;
    if (X.over->dim != Y.over->dim)
        throw std::invalid_argument("tor: modules over unrelated algebras");
    Resolution res = projective_resolution(X, upto + 1);
    ElementAction ea(Y);
    std::vector<std::vector<Subspace>> spaces(res.terms.size());
    std::vector<std::vector<std::size_t>> start(res.terms.size());
    std::vector<std::size_t> total(res.terms.size(), 0);
    for (std::size_t i = 0; i < res.terms.size(); ++i)
        for (const auto& e : res.terms[i].idems) {
            start[i].push_back(total[i]);
            spaces[i].push_back(column_space(ea(e)));
            total[i] += spaces[i].back().dim();
        }
    std::vector<std::size_t> rk(res.terms.size() + 1, 0);  // rk[i]: C_i -> C_{i-1}
    for (std::size_t i = 1; i < res.terms.size(); ++i) {
        const ProjectiveModule& Pc = res.terms[i];
        const ProjectiveModule& Pp = res.terms[i - 1];
        Mat D(total[i - 1], total[i], f);
        for (std::size_t j = 0; j < Pc.summands(); ++j) {
            Vec col = res.maps[i].column(Pc.offsets[j]);
            for (std::size_t k = 0; k < Pp.summands(); ++k) {
                Vec a = element_in_summand(Pp, col, k, X.over->dim, f);
                if (is_zero(a))
                    continue;
                Mat act = ea(a);
                const auto& src = spaces[i][j].basis();
                for (std::size_t q = 0; q < src.size(); ++q) {
                    Vec c = spaces[i - 1][k].coords(act * src[q]);
                    for (std::size_t r = 0; r < c.size(); ++r)
                        D.at(start[i - 1][k] + r, start[i][j] + q) = c[r];
                }
            }
        }
        rk[i] = rank(D);
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i <= upto; ++i)
        out.push_back(i < res.terms.size() ? total[i] - rk[i] - rk[i + 1] : 0);
    return out;
}

CornerModules corner_modules(AlgebraPtr A, const Vec& e)
{
    CornerData cd = corner(*A, e);
    CornerModules cm;
    cm.embed = cd.embed;
    cm.corner = share(std::move(cd.corner));
    cm.corner_op = share(opposite(*cm.corner));
    const Field& f = A->field;
    Subspace left = A->left_ideal_span(e);
    Subspace right = A->right_ideal_span(e);
    cm.left_part.over = cm.corner_op;
    cm.left_part.over_op = cm.corner;
    cm.left_part.dim = left.dim();
    cm.left_part.label = "Ae";
    for (const auto& g : cm.corner_op->generators()) {
        Vec ge = cm.embed * g;
        Mat m(left.dim(), left.dim(), f);
        for (std::size_t j = 0; j < left.dim(); ++j) {
            Vec c = left.coords(A->mul(left.basis()[j], ge));
            for (std::size_t i = 0; i < c.size(); ++i)
                m.at(i, j) = c[i];
        }
        cm.left_part.act.push_back(std::move(m));
    }
    cm.right_part.over = cm.corner;
    cm.right_part.over_op = cm.corner_op;
    cm.right_part.dim = right.dim();
    cm.right_part.label = "eA";
    for (const auto& g : cm.corner->generators()) {
        Vec ge = cm.embed * g;
        Mat m(right.dim(), right.dim(), f);
        for (std::size_t j = 0; j < right.dim(); ++j) {
            Vec c = right.coords(A->mul(ge, right.basis()[j]));
            for (std::size_t i = 0; i < c.size(); ++i)
                m.at(i, j) = c[i];
        }
        cm.right_part.act.push_back(std::move(m));
    }
    return cm;
}

std::vector<std::size_t> tor_corner_dims(AlgebraPtr A, const Vec& e, std::size_t upto)
{
    CornerModules cm = corner_modules(std::move(A), e);
    return tor_dims(cm.left_part, cm.right_part, upto);
}

std::size_t tor_corner(AlgebraPtr A, const Vec& e, std::size_t i)
{
    return tor_corner_dims(std::move(A), e, i)[i];
}

namespace {

IsoResult search_iso(const std::vector<Mat>& H, std::size_t dim, const Field& f, int trials, std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Mat F(dim, dim, f);
        for (const auto& h : H)
            F = F + h.scaled(Scalar(rng.range(-1000, 1000)));
        if (rank(F) == dim)
            return {Verdict::yes("invertible homomorphism found"), F};
    }
    return {Verdict::unknown(trials, "no invertible combination sampled"), std::nullopt};
}

}  // namespace

IsoResult is_module_iso(const Module& M, const Module& N, int trials, std::uint64_t seed)
{
    require_same(M, N);
    if (M.dim != N.dim)
        return {Verdict::no("dimensions differ"), std::nullopt};
    const Field& f = M.over->field;
    if (M.dim == 0)
        return {Verdict::yes("zero modules"), Mat(0, 0, f)};
    const Algebra& A = *M.over;
    try {
        for (auto r : A.class_representatives()) {
            const Vec& e = A.primitives()[r];
            if (rank(act_idempotent(M, e)) != rank(act_idempotent(N, e)))
                return {Verdict::no("composition factors differ"), std::nullopt};
        }
    } catch (const NonSplitError&) {
    }
    auto H = hom_space(M, N);
    if (H.empty())
        return {Verdict::no("no nonzero homomorphism"), std::nullopt};
    std::size_t mm = hom_space(M, M).size(), nn = hom_space(N, N).size(), nm = hom_space(N, M).size();
    if (mm != nn || mm != H.size() || nm != H.size())
        return {Verdict::no("hom dimensions differ"), std::nullopt};
    auto r = search_iso(H, M.dim, f, trials, seed);
    if (r.witness && !is_homomorphism(M, N, *r.witness))
        throw std::logic_error("iso witness is not a homomorphism");
    return r;
}

Bimodule sub_bimodule(const Algebra& A, const Subspace& S, AlgebraPtr left, const Mat& left_embed, AlgebraPtr right,
                      const Mat& right_embed, std::string label)
{
    Bimodule X;
    X.dim = S.dim();
    X.label = std::move(label);
    auto build = [&](const Vec& g, bool on_left) {
        Mat m(S.dim(), S.dim(), A.field);
        for (std::size_t j = 0; j < S.dim(); ++j) {
            Vec v = on_left ? A.mul(g, S.basis()[j]) : A.mul(S.basis()[j], g);
            if (!S.contains(v))
                throw std::invalid_argument("subspace is not stable under the bimodule actions");
            Vec c = S.coords(v);
            for (std::size_t i = 0; i < c.size(); ++i)
                m.at(i, j) = c[i];
        }
        return m;
    };
    for (const auto& g : left->generators())
        X.left_act.push_back(build(left_embed * g, true));
    for (const auto& g : right->generators())
        X.right_act.push_back(build(right_embed * g, false));
    X.left = std::move(left);
    X.right = std::move(right);
    return X;
}

Bimodule dual(const Bimodule& X)
{
    Bimodule D;
    D.left = X.right;
    D.right = X.left;
    D.dim = X.dim;
    D.label = X.label.empty() ? std::string() : "D(" + X.label + ")";
    for (const auto& m : X.right_act)
        D.left_act.push_back(m.transpose());
    for (const auto& m : X.left_act)
        D.right_act.push_back(m.transpose());
    return D;
}

std::vector<Mat> intertwiners(const std::vector<Mat>& ops_v, const std::vector<Mat>& ops_w, std::size_t dv,
                              std::size_t dw, const Field& f)
{
    if (ops_v.size() != ops_w.size())
        throw std::invalid_argument("operator lists differ in length");
    if (dv == 0 || dw == 0)
        return {};
    // Split both spaces along commuting idempotent operators first.
    struct Block {
        Mat bv, bw;
    };
    std::vector<Block> blocks{{Mat::identity(dv, f), Mat::identity(dw, f)}};
    std::vector<std::size_t> used, rest;
    for (std::size_t i = 0; i < ops_v.size(); ++i) {
        const Mat& a = ops_v[i];
        const Mat& b = ops_w[i];
        bool idem = a * a == a && b * b == b;
        for (auto u : used)
            if (!idem)
                break;
            else if (a * ops_v[u] != ops_v[u] * a || b * ops_w[u] != ops_w[u] * b)
                idem = false;
        if (!idem) {
            rest.push_back(i);
            continue;
        }
        used.push_back(i);
        Mat iv = Mat::identity(dv, f) - a, iw = Mat::identity(dw, f) - b;
        std::vector<Block> next;
        for (const auto& bl : blocks)
            for (int side = 0; side < 2; ++side) {
                Subspace sv = column_space((side ? a : iv) * bl.bv);
                Subspace sw = column_space((side ? b : iw) * bl.bw);
                if (sv.dim() == 0 && sw.dim() == 0)
                    continue;
                Block nb;
                nb.bv = sv.dim() ? Mat::from_columns(sv.basis(), dv, f) : Mat(dv, 0, f);
                nb.bw = sw.dim() ? Mat::from_columns(sw.basis(), dw, f) : Mat(dw, 0, f);
                next.push_back(std::move(nb));
            }
        blocks = std::move(next);
    }
    // Coordinates of V along the blocks.
    std::vector<Vec> cols;
    for (const auto& bl : blocks)
        for (std::size_t j = 0; j < bl.bv.cols(); ++j)
            cols.push_back(bl.bv.column(j));
    Mat coordv = *inverse(Mat::from_columns(cols, dv, f));
    std::vector<Mat> basis;
    std::size_t row0 = 0;
    for (const auto& bl : blocks) {
        for (std::size_t r = 0; r < bl.bw.cols(); ++r)
            for (std::size_t c = 0; c < bl.bv.cols(); ++c) {
                Mat F(dw, dv, f);
                Vec w = bl.bw.column(r);
                Vec v = coordv.row(row0 + c);
                for (std::size_t i = 0; i < dw; ++i)
                    if (w[i] != 0)
                        for (std::size_t j = 0; j < dv; ++j)
                            F.at(i, j) = f.mul(w[i], v[j]);
                basis.push_back(std::move(F));
            }
        row0 += bl.bv.cols();
    }
    for (auto i : rest) {
        if (basis.empty())
            break;
        std::vector<Vec> cons;
        for (const auto& F : basis)
            cons.push_back(flatten(F * ops_v[i] - ops_w[i] * F));
        auto ker = kernel_basis(Mat::from_columns(cons, dv * dw, f));
        std::vector<Mat> nb;
        for (const auto& k : ker) {
            Mat F(dw, dv, f);
            for (std::size_t t = 0; t < k.size(); ++t)
                if (k[t] != 0)
                    F = F + basis[t].scaled(k[t]);
            nb.push_back(std::move(F));
        }
        basis = std::move(nb);
    }
    return basis;
}

std::vector<Mat> bimodule_hom_space(const Bimodule& X, const Bimodule& Y)
{
    if (!same_algebra(*X.left, *Y.left) || !same_algebra(*X.right, *Y.right))
        throw std::invalid_argument("bimodules over different algebras");
    std::vector<Mat> ov = X.left_act, ow = Y.left_act;
    ov.insert(ov.end(), X.right_act.begin(), X.right_act.end());
    ow.insert(ow.end(), Y.right_act.begin(), Y.right_act.end());
    return intertwiners(ov, ow, X.dim, Y.dim, X.left->field);
}

IsoResult is_bimodule_iso(const Bimodule& X, const Bimodule& Y, int trials, std::uint64_t seed)
{
    if (X.dim != Y.dim)
        return {Verdict::no("dimensions differ"), std::nullopt};
    const Field& f = X.left->field;
    if (X.dim == 0)
        return {Verdict::yes("zero bimodules"), Mat(0, 0, f)};
    auto H = bimodule_hom_space(X, Y);
    if (H.empty())
        return {Verdict::no("no nonzero homomorphism"), std::nullopt};
    if (bimodule_hom_space(Y, X).size() != H.size() || bimodule_hom_space(X, X).size() != H.size() ||
        bimodule_hom_space(Y, Y).size() != H.size())
        return {Verdict::no("hom dimensions differ"), std::nullopt};
    return search_iso(H, X.dim, f, trials, seed);
}

Hull injective_hull(const Module& M)
{
    AlgebraPtr op = opposite_for(M);
    Module DM = dual(M, op);
    Cover c = projective_cover(DM);
    Hull h;
    h.injective = dual(c.P.module, M.over);
    h.map = c.map.transpose();
    return h;
}

namespace {

struct Coresolution {
    AlgebraPtr op;
    Resolution res;  // projective resolution of D(A) over the opposite algebra
};

Coresolution regular_coresolution(AlgebraPtr A, std::size_t length)
{
    Coresolution c;
    c.op = share(opposite(*A));
    Module R = regular_module(A);
    R.over_op = c.op;
    c.res = projective_resolution(dual(R, c.op), length);
    return c;
}

}  // namespace

Verdict dominant_dimension(AlgebraPtr A, int cap)
{
    if (cap < 1)
        throw std::invalid_argument("cap must be at least 1");
    Coresolution c = regular_coresolution(A, static_cast<std::size_t>(cap - 1));
    std::map<Vec, bool> proj_inj;
    for (std::size_t i = 0; i < c.res.terms.size(); ++i)
        for (const auto& f : c.res.terms[i].idems) {
            auto it = proj_inj.find(f);
            if (it == proj_inj.end()) {
                Module I = dual(projective(c.op, f), A);
                it = proj_inj.emplace(f, is_projective(I)).first;
            }
            if (!it->second)
                return Verdict::certified(static_cast<long>(i), "coresolution term is not projective");
        }
    return Verdict::unknown(cap, "all computed coresolution terms are projective-injective");
}

Verdict injective_dimension(AlgebraPtr A, int cap)
{
    AlgebraPtr op = share(opposite(*A));
    Module R = regular_module(A);
    return projective_dimension(dual(R, op), cap);
}

Verdict global_dimension(AlgebraPtr A, int cap)
{
    long best = 0;
    for (const auto& S : simple_modules(A)) {
        Verdict v = projective_dimension(S, cap);
        if (!v.is_certified())
            return Verdict::unknown(cap, "a simple module has a resolution longer than the cap");
        best = std::max(best, v.value);
    }
    return Verdict::certified(best);
}

bool is_generator_cogenerator(const Module& M)
{
    const Algebra& A = *M.over;
    for (std::size_t c = 0; c < A.class_representatives().size(); ++c)
        if (projective_multiplicity(M, c) == 0)
            return false;
    Module D = dual(M);
    for (std::size_t c = 0; c < D.over->class_representatives().size(); ++c)
        if (projective_multiplicity(D, c) == 0)
            return false;
    return true;
}

Verdict mueller_domdim(const Module& M, int cap)
{
    if (!is_generator_cogenerator(M))
        throw std::invalid_argument("module is not a generator-cogenerator");
    if (cap < 3)
        return Verdict::unknown(cap, "cap too small");
    std::size_t top = static_cast<std::size_t>(cap - 2);
    auto e = ext_dims(M, M, top);
    for (std::size_t i = 1; i <= top; ++i)
        if (e[i] != 0)
            return Verdict::certified(static_cast<long>(i + 1), "first nonvanishing self-extension");
    return Verdict::unknown(cap, "self-extensions vanish up to the cap");
}

}  // namespace mra
