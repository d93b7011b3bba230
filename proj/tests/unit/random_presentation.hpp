#pragma once

#include "mra/algebra.hpp"
#include "mra/mirror.hpp"
#include "mra/quiver.hpp"
#include "mra/rng.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace randomq {

// Seeded bound quiver: at most 4 vertices and 6 arrows. Some paths of length two are killed
// or tied to a parallel path, and every path of length three is killed, so the algebra is finite.
inline std::string presentation_text(std::uint64_t seed)
{
    mra::Rng rng(seed);
    int nv = static_cast<int>(rng.range(1, 4));
    int na = static_cast<int>(rng.range(0, 6));
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < na; ++i)
        arrows.emplace_back(static_cast<int>(rng.range(0, nv - 1)), static_cast<int>(rng.range(0, nv - 1)));
    std::ostringstream os;
    os << "field Q\nvertex";
    for (int v = 1; v <= nv; ++v)
        os << " " << v;
    os << "\n";
    for (int i = 0; i < na; ++i)
        os << "arrow x" << i << " : " << arrows[i].first + 1 << " -> " << arrows[i].second + 1 << "\n";

    auto name = [](const std::vector<int>& p) {
        std::string s;
        for (std::size_t k = 0; k < p.size(); ++k)
            s += (k ? "." : "") + std::string("x") + std::to_string(p[k]);
        return s;
    };
    std::vector<std::vector<int>> two;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            if (arrows[a].second == arrows[b].first)
                two.push_back({a, b});
    std::vector<bool> used(two.size(), false);
    for (std::size_t i = 0; i < two.size(); ++i) {
        if (used[i])
            continue;
        long roll = rng.range(0, 3);
        if (roll == 0) {
            os << "relation " << name(two[i]) << " = 0\n";
        } else if (roll == 1) {
            for (std::size_t j = i + 1; j < two.size(); ++j) {
                int src = arrows[two[i][0]].first, tgt = arrows[two[i][1]].second;
                if (used[j] || arrows[two[j][0]].first != src || arrows[two[j][1]].second != tgt)
                    continue;
                long c = rng.range(1, 3) * (rng.coin() ? 1 : -1);
                os << "relation " << name(two[i]) << " = " << c << "*" << name(two[j]) << "\n";
                used[j] = true;
                break;
            }
        }
    }
    for (const auto& p : two)
        for (int c = 0; c < na; ++c)
            if (arrows[p[1]].second == arrows[c].first)
                os << "relation " << name({p[0], p[1], c}) << " = 0\n";
    std::vector<int> chosen;
    for (int v = 0; v < nv; ++v)
        if (rng.coin())
            chosen.push_back(v);
    if (chosen.empty())
        chosen.push_back(static_cast<int>(rng.range(0, nv - 1)));
    os << "idem e =";
    for (std::size_t k = 0; k < chosen.size(); ++k)
        os << (k ? " + " : " ") << chosen[k] + 1;
    os << "\n";
    return os.str();
}

// Random combination of paths obtained by walking along arrows.
inline mra::Combo random_combo(const mra::Presentation& p, mra::Rng& rng)
{
    mra::Combo c;
    int terms = static_cast<int>(rng.range(1, 3));
    int nv = static_cast<int>(p.quiver.vertices.size());
    for (int t = 0; t < terms; ++t) {
        mra::Path path = mra::Path::vertex(static_cast<int>(rng.range(0, nv - 1)));
        int len = static_cast<int>(rng.range(0, 4));
        for (int k = 0; k < len; ++k) {
            std::vector<int> out;
            for (std::size_t a = 0; a < p.quiver.arrows.size(); ++a)
                if (p.quiver.arrows[a].src == path.tgt)
                    out.push_back(static_cast<int>(a));
            if (out.empty())
                break;
            int a = out[static_cast<std::size_t>(rng.range(0, static_cast<long>(out.size()) - 1))];
            path.arrows.push_back(a);
            path.tgt = p.quiver.arrows[static_cast<std::size_t>(a)].tgt;
        }
        mra::combo_add(p.field, c, path, mra::Scalar(rng.range(-3, 3)));
    }
    return c;
}

inline bool cartan_symmetric(const mra::Algebra& A)
{
    auto c = mra::cartan_matrix(A);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[i][j] != c[j][i])
                return false;
    return true;
}

struct Outcome {
    std::vector<std::string> failures;
    std::string digest;
    std::size_t dim = 0;
    bool mirrored = false;
};

// Symmetric implies a symmetric Cartan matrix; a certified witness must verify.
inline void symmetry_consistency(const mra::Algebra& A, std::uint64_t seed, const std::string& tag, Outcome& out)
{
    auto r = mra::is_symmetric(A, 8, seed);
    bool cartan = cartan_symmetric(A);
    if (r.verdict.is_certified()) {
        if (!r.witness || !mra::verify_symmetrizing(A, *r.witness))
            out.failures.push_back(tag + ": symmetric without a verified witness");
        if (!cartan)
            out.failures.push_back(tag + ": symmetric with a non-symmetric Cartan matrix");
    }
    out.digest += tag + " symmetric " + r.verdict.str() + " cartan " + (cartan ? "sym" : "nonsym") + "\n";
}

inline void algebra_laws(const mra::Algebra& A, const std::string& tag, Outcome& out)
{
    if (auto err = mra::check_associative(A))
        out.failures.push_back(tag + ": " + *err);
    if (auto err = mra::check_unit(A))
        out.failures.push_back(tag + ": " + *err);
}

// Every property for one seeded presentation; the digest records all computed data.
inline Outcome run_properties(std::uint64_t seed, std::size_t mirror_dim_limit = 24)
{
    Outcome out;
    std::string text = presentation_text(seed);
    mra::Presentation pres = mra::parse_presentation(text);
    mra::RewriteSystem rs = mra::complete_rewrite(pres, 30);
    if (!rs.complete) {
        out.failures.push_back("completion: " + rs.reason);
        return out;
    }
    auto A = std::make_shared<const mra::Algebra>(mra::structure_constants(rs));
    out.dim = A->dim;
    out.digest = text + mra::algebra_to_json(*A) + "\n";
    algebra_laws(*A, "A", out);
    if (auto err = mra::check_idempotent_family(*A))
        out.failures.push_back("A: " + *err);

    mra::Rng rng(seed * 7919 + 1);
    for (int k = 0; k < 8; ++k) {
        mra::Combo c = random_combo(pres, rng);
        mra::Combo once = mra::normal_form(rs, c);
        if (mra::normal_form(rs, once) != once)
            out.failures.push_back("normal form not idempotent on " + mra::combo_str(pres.quiver, c));
        for (const auto& term : once)
            if (!mra::basis_index(rs, term.first))
                out.failures.push_back("normal form leaves the basis on " + mra::combo_str(pres.quiver, c));
        out.digest += mra::combo_str(pres.quiver, once) + "\n";
    }
    symmetry_consistency(*A, seed, "A", out);

    if (A->dim > mirror_dim_limit)
        return out;
    out.mirrored = true;
    mra::Vec e = mra::vertex_sum(rs, pres.idempotents.front().vertices);
    mra::MirrorData m = mra::mirror_reflective(A, e);
    if (auto err = mra::check_bimodule_mult(*A, m.tensor.mult, 20, seed))
        out.failures.push_back("extension: " + *err);
    if (auto err = mra::check_corner_tensor(m.tensor))
        out.failures.push_back("tensor: " + *err);
    algebra_laws(*m.R, "R", out);
    for (const auto& c : mra::mirror_checks(m))
        if (!c.holds)
            out.failures.push_back("R: " + c.name);
    mra::ReducedMirror s = mra::reduced_mirror(m);
    algebra_laws(*s.S, "S", out);
    for (const auto& c : mra::reduced_checks(m, s))
        if (!c.holds)
            out.failures.push_back("S: " + c.name);
    out.digest += mra::algebra_to_json(*m.R) + "\n" + mra::algebra_to_json(*s.S) + "\n";
    symmetry_consistency(*m.R, seed, "R", out);
    symmetry_consistency(*s.S, seed, "S", out);
    return out;
}

}  // namespace randomq
