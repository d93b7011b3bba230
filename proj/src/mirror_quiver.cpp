#include "mra/mirror_quiver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace mra {

namespace {

Combo combo_mul(const Field& f, const Combo& a, const Combo& b)
{
    Combo out;
    for (const auto& [p, s] : a)
        for (const auto& [q, t] : b)
            if (auto pq = concat(p, q))
                combo_add(f, out, *pq, f.mul(s, t));
    return out;
}

Combo single(const Path& p)
{
    Combo c;
    c.emplace(p, Scalar(1));
    return c;
}

Path arrow_path(const Quiver& q, int a)
{
    return Path{q.arrows[a].src, q.arrows[a].tgt, {a}};
}

const Path& first_path(const Combo& c)
{
    if (c.empty())
        throw std::invalid_argument("empty relation");
    return c.begin()->first;
}

// Paths of the source quiver staying inside the kept subquiver, up to the given length.
std::vector<Path> kept_paths(const MirrorPresentation& mp, std::size_t max_len)
{
    const Quiver& q = mp.source.quiver;
    std::vector<Path> out, layer;
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
        if (!mp.in_v0(v))
            layer.push_back(Path::vertex(v));
    for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
        std::vector<Path> next;
        for (const auto& p : layer) {
            out.push_back(p);
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a)
                if (mp.kept_arrow(a) && q.arrows[a].src == p.tgt)
                    next.push_back(*concat(p, arrow_path(q, a)));
        }
        layer = std::move(next);
    }
    return out;
}

// Mixed monomials a' p b and a p b' over the given middle paths.
std::vector<Combo> mixed_monomials(const MirrorPresentation& mp, const std::vector<Path>& middles)
{
    const Quiver& q = mp.source.quiver;
    std::vector<Combo> out;
    int n1 = static_cast<int>(q.arrows.size());
    for (int a = 0; a < n1; ++a) {
        if (!mp.in_v0(q.arrows[a].src) || mp.in_v0(q.arrows[a].tgt))
            continue;
        for (const auto& p : middles) {
            if (p.src != q.arrows[a].tgt)
                continue;
            for (int b = 0; b < n1; ++b) {
                if (q.arrows[b].src != p.tgt || !mp.in_v0(q.arrows[b].tgt) || mp.in_v0(q.arrows[b].src))
                    continue;
                std::vector<int> bar_first{mp.arrow_bar[a]}, bar_last{a};
                for (int x : p.arrows) {
                    bar_first.push_back(x);
                    bar_last.push_back(x);
                }
                bar_first.push_back(b);
                bar_last.push_back(mp.arrow_bar[b]);
                out.push_back(single(Path{mp.vertex_bar[q.arrows[a].src], q.arrows[b].tgt, bar_first}));
                out.push_back(single(Path{q.arrows[a].src, mp.vertex_bar[q.arrows[b].tgt], bar_last}));
            }
        }
    }
    return out;
}

// Components e_i c e_j with fixed endpoints.
std::vector<Combo> split_by_endpoints(const Combo& c)
{
    std::map<std::pair<int, int>, Combo> parts;
    for (const auto& [p, s] : c)
        parts[{p.src, p.tgt}].emplace(p, s);
    std::vector<Combo> out;
    for (auto& [k, part] : parts)
        out.push_back(std::move(part));
    return out;
}

bool combo_in_ideal(const RewriteSystem& rs, const Combo& c)
{
    return normal_form(rs, c).empty();
}

bool is_barred_vertex(const MirrorPresentation& mp, int v)
{
    return v >= static_cast<int>(mp.source.quiver.vertices.size());
}

}  // namespace

bool MirrorPresentation::in_v0(int v) const
{
    return std::find(v0.begin(), v0.end(), v) != v0.end();
}

bool MirrorPresentation::kept_arrow(int a) const
{
    const auto& ar = source.quiver.arrows[a];
    return !in_v0(ar.src) && !in_v0(ar.tgt);
}

MirrorPresentation mirror_quiver(const Presentation& pres, const std::vector<int>& v0_in)
{
    const Quiver& q = pres.quiver;
    int n0 = static_cast<int>(q.vertices.size()), n1 = static_cast<int>(q.arrows.size());
    std::vector<int> v0 = v0_in;
    std::sort(v0.begin(), v0.end());
    v0.erase(std::unique(v0.begin(), v0.end()), v0.end());
    if (v0.empty())
        throw std::invalid_argument("mirror quiver: the mirrored vertex set is empty");
    for (int v : v0)
        if (v < 0 || v >= n0)
            throw std::invalid_argument("mirror quiver: vertex index out of range");

    MirrorPresentation mp;
    mp.source = pres;
    mp.v0 = v0;
    Presentation& d = mp.delta;
    d.field = pres.field;
    d.quiver = q;
    std::set<std::string> names(q.vertices.begin(), q.vertices.end());
    for (const auto& a : q.arrows)
        names.insert(a.name);
    auto fresh = [&](const std::string& base) {
        std::string s = base + kBarMark;
        if (!names.insert(s).second)
            throw std::invalid_argument("mirror quiver: copy name '" + s + "' already in use");
        return s;
    };
    mp.vertex_bar.resize(n0);
    for (int v = 0; v < n0; ++v) {
        mp.vertex_bar[v] = v;
        if (mp.in_v0(v)) {
            mp.vertex_bar[v] = static_cast<int>(d.quiver.vertices.size());
            d.quiver.vertices.push_back(fresh(q.vertices[v]));
        }
    }
    mp.arrow_bar.resize(n1);
    for (int a = 0; a < n1; ++a) {
        mp.arrow_bar[a] = a;
        if (!mp.kept_arrow(a)) {
            mp.arrow_bar[a] = static_cast<int>(d.quiver.arrows.size());
            d.quiver.arrows.push_back(
                Arrow{fresh(q.arrows[a].name), mp.vertex_bar[q.arrows[a].src], mp.vertex_bar[q.arrows[a].tgt]});
        }
    }

    // Middle paths: kept paths that are normal in the source algebra.
    RewriteSystem rs = complete_rewrite(pres, 30);
    std::vector<Path> middles;
    if (rs.complete) {
        for (const auto& p : rs.basis)
            if (!mp.in_v0(p.src) && !mp.in_v0(p.tgt) &&
                std::all_of(p.arrows.begin(), p.arrows.end(), [&](int a) { return mp.kept_arrow(a); }))
                middles.push_back(p);
    } else {
        middles = kept_paths(mp, 30);
    }
    mp.families[0] = mixed_monomials(mp, middles);
    for (const auto& sigma : pres.relations) {
        const Path& p = first_path(sigma);
        if (mp.in_v0(p.src) || mp.in_v0(p.tgt)) {
            mp.families[1].push_back(sigma);
            mp.families[2].push_back(bar_copy(mp, sigma));
        } else {
            mp.families[3].push_back(plus_relation(mp, sigma));
        }
    }
    for (const auto& fam : mp.families)
        for (const auto& r : fam)
            d.relations.push_back(r);
    std::vector<int> barred;
    for (int v : v0)
        barred.push_back(mp.vertex_bar[v]);
    d.idempotents.push_back(NamedIdempotent{"mirror", barred});
    return mp;
}

Combo bar_copy(const MirrorPresentation& mp, const Combo& c)
{
    Combo out;
    for (const auto& [p, s] : c) {
        Path b{mp.vertex_bar[p.src], mp.vertex_bar[p.tgt], {}};
        for (int a : p.arrows)
            b.arrows.push_back(mp.arrow_bar[a]);
        combo_add(mp.delta.field, out, b, s);
    }
    return out;
}

Combo plus_map(const MirrorPresentation& mp, const Path& p)
{
    const Field& f = mp.delta.field;
    const Quiver& dq = mp.delta.quiver;
    if (p.trivial()) {
        Combo c = single(Path::vertex(p.src));
        if (mp.in_v0(p.src))
            combo_add(f, c, Path::vertex(mp.vertex_bar[p.src]), 1);
        return c;
    }
    Combo acc;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        int a = p.arrows[k];
        Combo img = single(arrow_path(dq, a));
        if (!mp.kept_arrow(a))
            combo_add(f, img, arrow_path(dq, mp.arrow_bar[a]), 1);
        acc = k == 0 ? img : combo_mul(f, acc, img);
    }
    return acc;
}

Combo plus_map(const MirrorPresentation& mp, const Combo& c)
{
    const Field& f = mp.delta.field;
    Combo out;
    for (const auto& [p, s] : c)
        for (const auto& [q, t] : plus_map(mp, p))
            combo_add(f, out, q, f.mul(s, t));
    return out;
}

Combo plus_relation(const MirrorPresentation& mp, const Combo& sigma)
{
    const Field& f = mp.delta.field;
    Combo out = sigma;
    for (const auto& [p, s] : sigma) {
        bool kept = !mp.in_v0(p.src) && !mp.in_v0(p.tgt) &&
                    std::all_of(p.arrows.begin(), p.arrows.end(), [&](int a) { return mp.kept_arrow(a); });
        if (!kept)
            for (const auto& [b, t] : bar_copy(mp, single(p)))
                combo_add(f, out, b, f.mul(s, t));
    }
    return out;
}

std::optional<Path> collapse(const MirrorPresentation& mp, const Path& p)
{
    int n1 = static_cast<int>(mp.source.quiver.arrows.size());
    if (is_barred_vertex(mp, p.src) || is_barred_vertex(mp, p.tgt))
        return std::nullopt;
    for (int a : p.arrows)
        if (a >= n1)
            return std::nullopt;
    return p;
}

Path bar_swap(const MirrorPresentation& mp, const Path& p)
{
    int n0 = static_cast<int>(mp.source.quiver.vertices.size());
    int n1 = static_cast<int>(mp.source.quiver.arrows.size());
    std::vector<int> vswap(mp.delta.quiver.vertices.size()), aswap(mp.delta.quiver.arrows.size());
    for (std::size_t v = 0; v < vswap.size(); ++v)
        vswap[v] = static_cast<int>(v);
    for (std::size_t a = 0; a < aswap.size(); ++a)
        aswap[a] = static_cast<int>(a);
    for (int v = 0; v < n0; ++v)
        if (mp.vertex_bar[v] != v) {
            vswap[v] = mp.vertex_bar[v];
            vswap[mp.vertex_bar[v]] = v;
        }
    for (int a = 0; a < n1; ++a)
        if (mp.arrow_bar[a] != a) {
            aswap[a] = mp.arrow_bar[a];
            aswap[mp.arrow_bar[a]] = a;
        }
    Path out{vswap[p.src], vswap[p.tgt], {}};
    for (int a : p.arrows)
        out.arrows.push_back(aswap[a]);
    return out;
}

ThetaCertificate certify_theta(const Presentation& pres, const std::vector<int>& v0, int degree_cap)
{
    ThetaCertificate c;
    c.presentation = mirror_quiver(pres, v0);
    const MirrorPresentation& mp = c.presentation;
    c.source_system = complete_rewrite(pres, degree_cap);
    if (!c.source_system.complete)
        throw IncompleteError("source presentation: " + c.source_system.reason);
    c.delta_system = complete_rewrite(mp.delta, degree_cap);
    if (!c.delta_system.complete)
        throw IncompleteError("mirrored presentation: " + c.delta_system.reason);
    const RewriteSystem& rsA = c.source_system;
    const RewriteSystem& rsD = c.delta_system;
    c.source = share(structure_constants(rsA));
    c.delta = share(structure_constants(rsD));
    const Algebra& A = *c.source;
    const Algebra& D = *c.delta;
    const Field& f = A.field;
    c.mirror = mirror_reflective(c.source, vertex_sum(rsA, mp.v0));
    const MirrorData& m = c.mirror;
    const Algebra& R = *m.R;
    auto add = [&](std::string name, bool ok) { c.checks.push_back({std::move(name), ok}); };

    const Quiver& q = pres.quiver;
    std::size_t touching = 0;
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (!mp.kept_arrow(static_cast<int>(a)))
            ++touching;
    add("vertex count", mp.delta.quiver.vertices.size() == q.vertices.size() + mp.v0.size());
    add("arrow count", mp.delta.quiver.arrows.size() == q.arrows.size() + touching);
    add("dimension", D.dim == A.dim + m.tensor.dim());

    // Plus map on the source basis, and its collapse back.
    Mat mu(D.dim, A.dim, f);
    bool collapses = true;
    for (std::size_t k = 0; k < A.dim; ++k) {
        const Path& p = rsA.basis[k];
        Combo img = plus_map(mp, p);
        Combo back;
        for (const auto& [dp, s] : img)
            if (auto cp = collapse(mp, dp))
                combo_add(f, back, *cp, s);
        if (back != single(p))
            collapses = false;
        Vec v = combo_to_vec(rsD, normal_form(rsD, img));
        for (std::size_t r = 0; r < D.dim; ++r)
            mu.at(r, k) = v[r];
    }
    add("plus map followed by collapse is the identity", collapses);
    add("mu injective", rank(mu) == A.dim);
    add("mu multiplicative", is_algebra_map(A, D, mu));

    bool rho_plus = true;
    for (const auto& sigma : pres.relations)
        rho_plus = rho_plus && combo_in_ideal(rsD, plus_map(mp, sigma));
    add("images of the source relations vanish", rho_plus);
    bool mixed_zero = true;
    for (const auto& p : rsD.basis) {
        bool s_bar = is_barred_vertex(mp, p.src), t_bar = is_barred_vertex(mp, p.tgt);
        bool s_v0 = !s_bar && mp.in_v0(p.src), t_v0 = !t_bar && mp.in_v0(p.tgt);
        if ((s_v0 && t_bar) || (s_bar && t_v0))
            mixed_zero = false;
    }
    add("mixed spaces vanish", mixed_zero);

    // Generating set with every mixed monomial over kept paths up to the longest normal length.
    std::size_t longest = 0;
    for (const auto& p : rsA.basis)
        longest = std::max(longest, p.length());
    Presentation wide = mp.delta;
    wide.relations.clear();
    for (const auto& sigma : pres.relations)
        for (auto& part : split_by_endpoints(plus_map(mp, sigma)))
            wide.relations.push_back(std::move(part));
    for (auto& r : mixed_monomials(mp, kept_paths(mp, longest + 1)))
        wide.relations.push_back(std::move(r));
    RewriteSystem rsW = complete_rewrite(wide, degree_cap);
    bool same_ideal = rsW.complete && rsW.basis.size() == rsD.basis.size();
    if (same_ideal) {
        for (const auto& r : mp.delta.relations)
            same_ideal = same_ideal && combo_in_ideal(rsW, r);
        for (const auto& r : wide.relations)
            same_ideal = same_ideal && combo_in_ideal(rsD, r);
    }
    add("relation ideal equals the ideal of images and mixed paths", same_ideal);

    std::vector<int> barred;
    for (int v : mp.v0)
        barred.push_back(mp.vertex_bar[v]);
    Vec x = vertex_sum(rsD, barred);
    try {
        c.theta = lift_homomorphism(m, D, mu, x);
        add("theta multiplicative", true);
    } catch (const std::exception&) {
        add("theta multiplicative", false);
        throw std::logic_error("theta certification failed: theta multiplicative");
    }
    add("theta bijective", inverse(c.theta).has_value());
    add("theta restricts to mu", c.theta * m.include == mu);
    const CornerTensor& T = m.tensor;
    auto vertex_a = [&](int v) { return vertex_sum(rsA, {v}); };
    auto in_r = [&](const Vec& a) { return m.include * a; };
    auto bar_r = [&](int v) {
        Vec t = T.pure(vertex_a(v), vertex_a(v));
        Vec out(R.dim);
        for (std::size_t k = 0; k < t.size(); ++k)
            out[A.dim + k] = t[k];
        return out;
    };
    bool vertex_images = true;
    for (int v : mp.v0)
        vertex_images = vertex_images && c.theta * bar_r(v) == vertex_sum(rsD, {mp.vertex_bar[v]});
    add("theta sends each barred vertex idempotent to the copy vertex", vertex_images);

    // Inverse assignment on vertices and arrows, extended multiplicatively.
    int n0 = static_cast<int>(q.vertices.size()), n1 = static_cast<int>(q.arrows.size());
    auto vertex_image = [&](int t) {
        if (t >= n0) {
            int v = *std::find_if(mp.v0.begin(), mp.v0.end(), [&](int u) { return mp.vertex_bar[u] == t; });
            return bar_r(v);
        }
        if (mp.in_v0(t))
            return R.sub(in_r(vertex_a(t)), bar_r(t));
        return in_r(vertex_a(t));
    };
    auto arrow_image = [&](int k) {
        int src_arrow = k;
        if (k >= n1)
            src_arrow = static_cast<int>(std::find(mp.arrow_bar.begin(), mp.arrow_bar.end(), k) - mp.arrow_bar.begin());
        const Arrow& ar = q.arrows[src_arrow];
        Vec alpha = in_r(combo_to_vec(rsA, normal_form(rsA, arrow_path(q, src_arrow))));
        if (mp.kept_arrow(src_arrow))
            return alpha;
        Vec part = mp.in_v0(ar.tgt) ? R.mul(alpha, bar_r(ar.tgt)) : R.mul(bar_r(ar.src), alpha);
        return k >= n1 ? part : R.sub(alpha, part);
    };
    c.back = Mat(R.dim, D.dim, f);
    for (std::size_t k = 0; k < D.dim; ++k) {
        const Path& p = rsD.basis[k];
        Vec v = vertex_image(p.src);
        for (int a : p.arrows)
            v = R.mul(v, arrow_image(a));
        for (std::size_t r = 0; r < R.dim; ++r)
            c.back.at(r, k) = v[r];
    }
    add("inverse assignment multiplicative", is_algebra_map(D, R, c.back));
    add("theta then inverse is the identity", c.back * c.theta == Mat::identity(R.dim, f));

    Mat swap(D.dim, D.dim, f);
    for (std::size_t k = 0; k < D.dim; ++k) {
        Vec v = combo_to_vec(rsD, normal_form(rsD, bar_swap(mp, rsD.basis[k])));
        for (std::size_t r = 0; r < D.dim; ++r)
            swap.at(r, k) = v[r];
    }
    add("bar swap corresponds to phi", swap * c.theta == c.theta * m.phi);

    for (const auto& chk : c.checks)
        if (!chk.holds)
            throw std::logic_error("theta certification failed: " + chk.name);
    return c;
}

}  // namespace mra
