#include "CLI11.hpp"
#include "json.hpp"

#include "mra/algebra.hpp"
#include "mra/mirror.hpp"
#include "mra/mirror_quiver.hpp"
#include "mra/module.hpp"
#include "mra/quiver.hpp"
#include "mra/stratification.hpp"
#include "mra/tower.hpp"
#include "mra/verdict.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mra;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kUsage = 2, kUnknown = 3 };

struct Options {
    int cap = 20;
    int degree_cap = 30;
    std::uint64_t seed = 0;
    std::size_t budget = kTowerBudget;
    std::string field;
    bool pretty = false;
    bool strict = false;
    std::string idem;
    std::string on = "A";
    std::string scale = "1";
    std::string v0;
    bool certify = false;
    std::string output;
    std::string source = "simple:0";
    std::string target = "simple:0";
    int levels = 2;
    bool strat = false;
    std::size_t limit = kStratSearchLimit;
};

class UsageError : public std::runtime_error {
public:
    UsageError(std::string location, const std::string& msg) : std::runtime_error(msg), location(std::move(location)) {}
    std::string location;
};

// Collects the verdicts a command produces and turns them into the exit code.
struct Tally {
    bool refuted = false;
    bool unknown = false;
    std::vector<std::string> failures;

    void note(const Verdict& v, const std::string& name)
    {
        if (v.is_refuted()) {
            refuted = true;
            failures.push_back(name);
        } else if (v.is_unknown()) {
            unknown = true;
        }
    }
    void check(bool holds, const std::string& name) { note(holds ? Verdict::yes() : Verdict::no(), name); }
    int code(bool strict) const
    {
        if (refuted)
            return kRefuted;
        if (unknown && strict)
            return kUnknown;
        return kOk;
    }
    std::string status() const { return refuted ? "refuted" : (unknown ? "unknown" : "ok"); }
};

Json verdict_json(const Verdict& v)
{
    Json j;
    j["state"] = v.state_name();
    if (v.is_certified() && v.infinite)
        j["infinite"] = true;
    else if (!v.is_unknown())
        j["value"] = v.value;
    else
        j["bound"] = v.bound;
    if (!v.reason.empty())
        j["reason"] = v.reason;
    return j;
}

Json checks_json(const std::vector<IdentityCheck>& checks, Tally& tally, const std::string& prefix)
{
    Json arr = Json::array();
    for (const auto& c : checks) {
        arr.push_back(Json{{"name", c.name}, {"holds", c.holds}});
        tally.check(c.holds, prefix + c.name);
    }
    return arr;
}

Json tower_checks_json(const std::vector<TowerCheck>& checks, Tally& tally)
{
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json j{{"level", c.level}, {"name", c.name}};
        j["verdict"] = verdict_json(c.verdict);
        arr.push_back(j);
        tally.note(c.verdict, "level " + std::to_string(c.level) + ": " + c.name);
    }
    return arr;
}

Json vec_json(const Vec& v)
{
    Json arr = Json::array();
    for (const auto& x : v)
        arr.push_back(scalar_str(x));
    return arr;
}

Json sizes_json(const std::vector<std::size_t>& v)
{
    Json arr = Json::array();
    for (auto x : v)
        arr.push_back(x);
    return arr;
}

Field parse_field(const std::string& s)
{
    if (s == "Q")
        return Field::rationals();
    if (s.size() >= 2 && s[0] == 'F') {
        long p = 0;
        try {
            std::size_t used = 0;
            p = std::stol(s.substr(1), &used);
            if (used != s.size() - 1)
                p = 0;
        } catch (const std::exception&) {
            p = 0;
        }
        if (p > 1 && is_prime(p))
            return Field::prime(p);
    }
    throw UsageError("--field", "expected Q or F<prime>, got '" + s + "'");
}

Presentation with_field(const Presentation& pres, const Field& f)
{
    Presentation out = pres;
    out.field = f;
    for (auto& rel : out.relations) {
        Combo c;
        for (const auto& [path, coeff] : rel)
            combo_add(f, c, path, coeff);
        rel = c;
    }
    return out;
}

struct Input {
    std::string path;
    Presentation pres;
    RewriteSystem rs;
    AlgebraPtr A;
};

Input load_input(const std::string& path, const Options& opt, bool need_algebra = true)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError(path, "cannot open input file");
    std::stringstream buf;
    buf << in.rdbuf();
    Input inp;
    inp.path = path;
    try {
        inp.pres = parse_presentation(buf.str());
    } catch (const ParseError& e) {
        std::string msg = e.what();
        auto colon = msg.find(": ");
        if (colon != std::string::npos)
            msg = msg.substr(colon + 2);
        throw UsageError(path + ":" + std::to_string(e.line) + ":" + std::to_string(e.col), msg);
    }
    if (!opt.field.empty())
        inp.pres = with_field(inp.pres, parse_field(opt.field));
    if (!need_algebra)
        return inp;
    inp.rs = complete_rewrite(inp.pres, opt.degree_cap);
    if (!inp.rs.complete)
        throw UsageError(path, "completion did not finish within degree cap " + std::to_string(opt.degree_cap) + ": " +
                                   inp.rs.reason);
    inp.A = share(structure_constants(inp.rs));
    return inp;
}

struct Idem {
    std::string name;
    std::vector<int> vertices;
    Vec element;
};

Idem chosen_idempotent(const Input& inp, const Options& opt)
{
    Idem out;
    std::string spec = opt.idem;
    if (spec.empty()) {
        if (inp.pres.idempotents.empty())
            throw UsageError("--idem", "no idempotent given and none named in the input");
        spec = inp.pres.idempotents.front().name;
    }
    auto eq = spec.find('=');
    out.name = eq == std::string::npos ? spec : spec.substr(0, eq);
    try {
        out.vertices = resolve_vertices(inp.pres, spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError("--idem", e.what());
    }
    if (out.vertices.empty())
        throw UsageError("--idem", "idempotent '" + spec + "' names no vertices");
    out.element = vertex_sum(inp.rs, out.vertices);
    return out;
}

Json idem_json(const Input& inp, const Idem& e)
{
    Json vs = Json::array();
    for (int v : e.vertices)
        vs.push_back(inp.pres.quiver.vertices[static_cast<std::size_t>(v)]);
    return Json{{"name", e.name}, {"vertices", vs}};
}

Scalar parse_scale(const std::string& s, const Field& f)
{
    Scalar x;
    try {
        x = Scalar(s);
        x.canonicalize();
    } catch (const std::exception&) {
        throw UsageError("--scale", "expected a rational number, got '" + s + "'");
    }
    return f.canon(x);
}

MirrorData build_mirror(const Input& inp, const Idem& e, const Options& opt)
{
    Scalar s = parse_scale(opt.scale, inp.A->field);
    return mirror_reflective(inp.A, e.element, inp.A->scale(s, e.element));
}

// The algebra selected by --on: the input A, its mirror R or the reduced mirror S.
AlgebraPtr target_algebra(const Input& inp, const Options& opt, Json& out)
{
    if (opt.on == "A")
        return inp.A;
    Idem e = chosen_idempotent(inp, opt);
    out["idempotent"] = idem_json(inp, e);
    MirrorData m = build_mirror(inp, e, opt);
    if (opt.on == "R")
        return m.R;
    return reduced_mirror(m).S;
}

Json algebra_summary(const Algebra& A)
{
    return Json{{"field", A.field.name()}, {"dim", A.dim}, {"simples", simple_count(A)}};
}

Module module_spec(AlgebraPtr A, const std::string& spec, const std::string& flag)
{
    if (spec == "regular")
        return regular_module(A);
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon);
        std::size_t k = 0;
        try {
            std::size_t used = 0;
            k = std::stoul(spec.substr(colon + 1), &used);
            if (used != spec.size() - colon - 1)
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw UsageError(flag, "bad class index in '" + spec + "'");
        }
        const auto& reps = A->class_representatives();
        if (k >= reps.size())
            throw UsageError(flag, "class index " + std::to_string(k) + " out of range (" +
                                       std::to_string(reps.size()) + " classes)");
        if (kind == "simple")
            return simple_module(A, k);
        if (kind == "projective")
            return projective(A, A->primitives()[reps[k]]);
    }
    throw UsageError(flag, "expected regular, simple:K or projective:K, got '" + spec + "'");
}

Verdict strong_as_verdict(const StrongIdemVerdict& v, int cap)
{
    switch (v.kind) {
    case StrongIdemVerdict::Kind::CertifiedStrong:
        return Verdict::yes(v.reason);
    case StrongIdemVerdict::Kind::RefutedAt:
        return Verdict::refuted_at(v.degree, v.str());
    case StrongIdemVerdict::Kind::NIdempotentUpTo:
        break;
    }
    return Verdict::unknown(cap, v.str());
}

Json degree_json(const IdempotencyDegree& d)
{
    return Json{{"degree", d.degree}, {"exact", d.bounded}, {"witness", sizes_json(d.witness)}};
}

// Both idempotency routes for one idempotent, aligned so that an empty search certifies the same degree.
Json idempotency_routes(AlgebraPtr A, const Vec& e, int cap, Tally& tally, const std::string& name)
{
    int top = std::max(cap, 2);
    auto tor = idempotency_via_tor(A, e, top - 1);
    auto ext = idempotency_via_ext(A, e, top);
    bool agree = tor.degree == ext.degree && tor.bounded == ext.bounded;
    tally.check(agree, name + ": routes agree");
    return Json{{"tor_route", degree_json(tor)}, {"ext_route", degree_json(ext)}, {"agree", agree}};
}

// Commands.

Json cmd_parse(const std::string& path, const Options& opt, Tally&)
{
    Input inp = load_input(path, opt, false);
    Json out;
    out["field"] = inp.pres.field.name();
    out["vertices"] = inp.pres.quiver.vertices;
    Json arrows = Json::array();
    for (const auto& a : inp.pres.quiver.arrows)
        arrows.push_back(Json{{"name", a.name},
                              {"source", inp.pres.quiver.vertices[static_cast<std::size_t>(a.src)]},
                              {"target", inp.pres.quiver.vertices[static_cast<std::size_t>(a.tgt)]}});
    out["arrows"] = arrows;
    Json rels = Json::array();
    for (const auto& r : inp.pres.relations)
        rels.push_back(combo_str(inp.pres.quiver, r));
    out["relations"] = rels;
    Json idems = Json::array();
    for (const auto& ni : inp.pres.idempotents) {
        Json vs = Json::array();
        for (int v : ni.vertices)
            vs.push_back(inp.pres.quiver.vertices[static_cast<std::size_t>(v)]);
        idems.push_back(Json{{"name", ni.name}, {"vertices", vs}});
    }
    out["idempotents"] = idems;
    out["text"] = presentation_to_text(inp.pres);
    return out;
}

Json cmd_basis(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Json out;
    out["complete"] = inp.rs.complete;
    out["rules"] = inp.rs.rules.size();
    Json basis = Json::array();
    for (const auto& p : inp.rs.basis)
        basis.push_back(path_str(inp.pres.quiver, p));
    out["basis"] = basis;
    out["algebra"] = algebra_summary(*inp.A);
    Json cartan = Json::array();
    for (const auto& row : cartan_matrix(*inp.A))
        cartan.push_back(row);
    out["cartan"] = cartan;
    auto assoc = check_associative(*inp.A);
    tally.check(!assoc, "associativity");
    out["associative"] = !assoc;
    return out;
}

Json cmd_mirror(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Idem e = chosen_idempotent(inp, opt);
    MirrorData m = build_mirror(inp, e, opt);
    Json out;
    out["idempotent"] = idem_json(inp, e);
    out["level_scale"] = scalar_str(parse_scale(opt.scale, inp.A->field));
    CornerData c = corner(*inp.A, e.element);
    std::size_t nA = simple_count(*inp.A), nC = simple_count(c.corner), nR = simple_count(*m.R);
    out["algebra"] = algebra_summary(*inp.A);
    out["corner"] = algebra_summary(c.corner);
    out["mirror"] = algebra_summary(*m.R);
    out["tensor_dim"] = m.tensor.dim();
    bool counts = nR == nA + nC;
    tally.check(counts, "simple count of the mirror");
    out["simple_count_identity"] = Json{{"mirror", nR}, {"algebra", nA}, {"corner", nC}, {"holds", counts}};
    out["checks"] = checks_json(mirror_checks(m), tally, "");
    return out;
}

Json cmd_reduced(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Idem e = chosen_idempotent(inp, opt);
    MirrorData m = build_mirror(inp, e, opt);
    ReducedMirror s = reduced_mirror(m);
    Json out;
    out["idempotent"] = idem_json(inp, e);
    out["algebra"] = algebra_summary(*inp.A);
    out["mirror"] = algebra_summary(*m.R);
    out["reduced"] = algebra_summary(*s.S);
    bool counts = simple_count(*s.S) == simple_count(*inp.A);
    tally.check(counts, "simple count of the reduced mirror");
    out["simple_count_matches"] = counts;
    out["checks"] = checks_json(reduced_checks(m, s), tally, "");
    return out;
}

Json cmd_mirror_quiver(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt, false);
    if (opt.v0.empty())
        throw UsageError("--v0", "mirror-quiver needs --v0 with a vertex list");
    std::vector<int> v0;
    try {
        v0 = resolve_vertices(inp.pres, opt.v0);
    } catch (const std::invalid_argument& e) {
        throw UsageError("--v0", e.what());
    }
    MirrorPresentation mp;
    try {
        mp = mirror_quiver(inp.pres, v0);
    } catch (const std::invalid_argument& e) {
        throw UsageError("--v0", e.what());
    }
    Json out;
    out["vertices"] = mp.delta.quiver.vertices.size();
    out["arrows"] = mp.delta.quiver.arrows.size();
    Json fams = Json::array();
    for (const auto& fam : mp.families) {
        Json f = Json::array();
        for (const auto& c : fam)
            f.push_back(combo_str(mp.delta.quiver, c));
        fams.push_back(f);
    }
    out["families"] = fams;
    std::string text = presentation_to_text(mp.delta);
    out["quiver"] = text;
    if (!opt.output.empty()) {
        std::ofstream f(opt.output);
        if (!f)
            throw UsageError(opt.output, "cannot write output file");
        f << text;
        out["written"] = opt.output;
    }
    if (opt.certify) {
        Json theta;
        try {
            ThetaCertificate cert = certify_theta(inp.pres, v0, opt.degree_cap);
            theta["delta_dim"] = cert.delta->dim;
            theta["mirror_dim"] = cert.mirror.R->dim;
            theta["checks"] = checks_json(cert.checks, tally, "theta: ");
            theta["verdict"] = verdict_json(Verdict::yes("algebra isomorphism certified"));
        } catch (const IncompleteError& e) {
            Verdict v = Verdict::unknown(opt.degree_cap, e.what());
            tally.note(v, "theta");
            theta["verdict"] = verdict_json(v);
        } catch (const std::logic_error& e) {
            Verdict v = Verdict::no(e.what());
            tally.note(v, "theta");
            theta["verdict"] = verdict_json(v);
        }
        out["theta"] = theta;
    }
    return out;
}

Json cmd_check_symmetric(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Json out;
    out["on"] = opt.on;
    AlgebraPtr T = target_algebra(inp, opt, out);
    out["algebra"] = algebra_summary(*T);
    SymmetryResult r = is_symmetric(*T, 16, opt.seed);
    tally.note(r.verdict, "symmetric");
    out["verdict"] = verdict_json(r.verdict);
    if (r.witness) {
        bool ok = verify_symmetrizing(*T, *r.witness);
        tally.check(ok, "symmetrizing witness");
        out["witness"] = Json{{"functional", vec_json(r.witness->functional)}, {"verified", ok}};
    }
    return out;
}

Json cmd_check_gendo(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Json out;
    out["on"] = opt.on;
    AlgebraPtr T = target_algebra(inp, opt, out);
    out["algebra"] = algebra_summary(*T);
    GendoResult g = gendo_symmetric(T, opt.cap, opt.seed);
    tally.note(g.verdict, "gendo-symmetric");
    out["verdict"] = verdict_json(g.verdict);
    out["dominant_dimension"] = verdict_json(g.domdim);
    out["faithful"] = g.faithful;
    if (g.idem)
        out["projective_injective_idempotent"] = vec_json(*g.idem);
    return out;
}

Json cmd_domdim(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Json out;
    out["on"] = opt.on;
    AlgebraPtr T = target_algebra(inp, opt, out);
    out["algebra"] = algebra_summary(*T);
    Verdict v = dominant_dimension(T, opt.cap);
    tally.note(v, "dominant dimension");
    out["dominant_dimension"] = verdict_json(v);
    return out;
}

Json cmd_ext(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Json out;
    out["on"] = opt.on;
    AlgebraPtr T = target_algebra(inp, opt, out);
    Module M = module_spec(T, opt.source, "--source");
    Module N = module_spec(T, opt.target, "--target");
    out["source"] = Json{{"spec", opt.source}, {"dim", M.dim}};
    out["target"] = Json{{"spec", opt.target}, {"dim", N.dim}};
    out["ext"] = sizes_json(ext_dims(M, N, static_cast<std::size_t>(opt.cap)));
    Verdict pd = projective_dimension(M, opt.cap);
    tally.note(pd, "projective dimension of the source");
    out["source_projective_dimension"] = verdict_json(pd);
    return out;
}

Json cmd_tor(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Idem e = chosen_idempotent(inp, opt);
    Json out;
    out["idempotent"] = idem_json(inp, e);
    out["tor"] = sizes_json(tor_corner_dims(inp.A, e.element, static_cast<std::size_t>(opt.cap)));
    out["ideal_dim"] = inp.A->ideal_generated({e.element}).dim();
    out["idempotency"] = idempotency_routes(inp.A, e.element, opt.cap, tally, "idempotency");
    return out;
}

Json cmd_strong_idem(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Idem e = chosen_idempotent(inp, opt);
    Json out;
    out["idempotent"] = idem_json(inp, e);
    StrongIdemVerdict s = strong_idempotent(inp.A, e.element, opt.cap, opt.seed);
    Verdict v = strong_as_verdict(s, opt.cap);
    tally.note(v, "strong idempotent");
    out["verdict"] = verdict_json(v);
    out["kind"] = s.kind_name();
    out["degree"] = s.degree;
    out["trivial"] = s.trivial;
    out["tor"] = sizes_json(s.tor);
    out["idempotency"] = idempotency_routes(inp.A, e.element, opt.cap, tally, "idempotency");
    return out;
}

Json cmd_strat_dim(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Json out;
    out["on"] = opt.on;
    AlgebraPtr T = target_algebra(inp, opt, out);
    out["algebra"] = algebra_summary(*T);
    try {
        StratificationReport r = stratified_dimension(T, opt.cap, opt.limit, opt.seed);
        RatioInterval q = stratified_ratio(r);
        Verdict v = r.lo == r.hi ? Verdict::certified(r.lo) : Verdict::unknown(opt.cap, "interval not closed");
        tally.note(v, "stratified dimension");
        out["verdict"] = verdict_json(v);
        out["lower"] = r.lo;
        out["upper"] = r.hi;
        out["ratio"] = Json{{"lower", scalar_str(q.lo)}, {"upper", scalar_str(q.hi)}};
        out["nodes"] = r.nodes;
        Json chain = Json::array();
        for (const auto& step : r.witness)
            chain.push_back(Json{{"classes", sizes_json(step.classes)}, {"step", step.verdict.str()}});
        out["chain"] = chain;
    } catch (const SearchLimitError& e) {
        Verdict v = Verdict::unknown(static_cast<int>(opt.limit), e.what());
        tally.note(v, "stratified dimension");
        out["verdict"] = verdict_json(v);
    }
    return out;
}

Json cmd_tower(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Idem e = chosen_idempotent(inp, opt);
    if (opt.levels < 1)
        throw UsageError("--levels", "need at least one level");
    Tower t;
    try {
        t = build_tower(inp.A, e.element, opt.levels, opt.budget);
    } catch (const std::invalid_argument& err) {
        throw UsageError("--idem", err.what());
    }
    Json out;
    out["idempotent"] = idem_json(inp, e);
    out["budget"] = t.budget;
    out["partial"] = t.partial;
    if (t.partial) {
        tally.note(Verdict::unknown(static_cast<int>(t.budget), t.stop_reason), "tower budget");
        out["stop_reason"] = t.stop_reason;
    }
    out["simples"] = Json{{"base", t.simples_base}, {"corner", t.simples_corner}, {"complement_corner", t.simples_b0}};
    Json levels = Json::array();
    for (const auto& lv : t.levels)
        levels.push_back(Json{{"n", lv.n},
                              {"A", algebra_summary(*lv.A)},
                              {"B", algebra_summary(*lv.B)},
                              {"R", algebra_summary(*lv.R())},
                              {"S", algebra_summary(*lv.S())}});
    out["levels"] = levels;
    out["counting"] = tower_checks_json(counting_report(t), tally);
    out["invariants"] = tower_checks_json(invariant_report(t, opt.cap, opt.seed), tally);
    out["dominant_dimension"] = tower_checks_json(domdim_growth_report(t, opt.cap), tally);
    out["global_dimension"] = tower_checks_json(dimension_bound_report(t, opt.cap), tally);
    if (opt.strat)
        out["stratified_dimension"] = tower_checks_json(strat_bound_report(t, opt.cap), tally);
    return out;
}

// Every applicable identity suite for the input and its named idempotent.
Json cmd_suite(const std::string& path, const Options& opt, Tally& tally)
{
    Input inp = load_input(path, opt);
    Json out;
    out["algebra"] = algebra_summary(*inp.A);
    Json base;
    auto assoc = check_associative(*inp.A);
    auto unit = check_unit(*inp.A);
    tally.check(!assoc, "associativity");
    tally.check(!unit, "unit");
    base["associative"] = !assoc;
    base["unit"] = !unit;
    out["algebra_checks"] = base;
    if (opt.idem.empty() && inp.pres.idempotents.empty()) {
        out["mirror"] = "not applicable: no idempotent";
        return out;
    }
    Idem e = chosen_idempotent(inp, opt);
    out["idempotent"] = idem_json(inp, e);
    MirrorData m = build_mirror(inp, e, opt);
    ReducedMirror s = reduced_mirror(m);
    out["identities"] = checks_json(mirror_checks(m), tally, "");
    out["reduced_identities"] = checks_json(reduced_checks(m, s), tally, "reduced: ");

    CornerData c = corner(*inp.A, e.element);
    std::size_t nA = simple_count(*inp.A), nC = simple_count(c.corner);
    std::size_t nR = simple_count(*m.R), nS = simple_count(*s.S);
    tally.check(nR == nA + nC, "simple count of the mirror");
    tally.check(nS == nA, "simple count of the reduced mirror");
    out["simple_counts"] = Json{{"algebra", nA}, {"corner", nC}, {"mirror", nR}, {"reduced", nS}};

    Json ideals;
    Vec rest = m.R->sub(m.include * e.element, m.ebar);
    for (const auto& [name, idem] : std::vector<std::pair<std::string, Vec>>{{"I", m.ebar}, {"J", rest}}) {
        StrongIdemVerdict two = n_idempotent(m.R, idem, 2);
        bool ok = two.strong() || (two.kind == StrongIdemVerdict::Kind::NIdempotentUpTo && two.degree >= 2);
        tally.check(ok, name + " is 2-idempotent");
        Json j{{"two_idempotent", ok}};
        j["routes"] = idempotency_routes(m.R, idem, std::min(opt.cap, 6), tally, name);
        ideals[name] = j;
    }
    out["mirror_ideals"] = ideals;

    GendoResult g = gendo_symmetric(inp.A, opt.cap, opt.seed);
    Json gendo{{"verdict", verdict_json(g.verdict)}};
    if (g.verdict.is_certified()) {
        SymmetryResult r = is_symmetric(*m.R, 16, opt.seed);
        SymmetryResult rs = is_symmetric(*s.S, 16, opt.seed);
        tally.note(r.verdict, "mirror symmetric");
        tally.note(rs.verdict, "reduced mirror symmetric");
        gendo["mirror_symmetric"] = verdict_json(r.verdict);
        gendo["reduced_symmetric"] = verdict_json(rs.verdict);
    } else {
        gendo["symmetry"] = "precondition not met";
    }
    out["gendo"] = gendo;

    Json theta;
    try {
        ThetaCertificate cert = certify_theta(inp.pres, e.vertices, opt.degree_cap);
        theta["checks"] = checks_json(cert.checks, tally, "theta: ");
        theta["verdict"] = verdict_json(Verdict::yes());
    } catch (const IncompleteError& err) {
        Verdict v = Verdict::unknown(opt.degree_cap, err.what());
        tally.note(v, "theta");
        theta["verdict"] = verdict_json(v);
    } catch (const std::logic_error& err) {
        Verdict v = Verdict::no(err.what());
        tally.note(v, "theta");
        theta["verdict"] = verdict_json(v);
    }
    out["theta"] = theta;
    return out;
}

void render_pretty(std::ostream& os, const Json& j, const std::string& indent)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string key = j.is_object() ? it.key() : "-";
        const Json& v = it.value();
        if (v.is_structured() && !v.empty()) {
            os << indent << key << ":\n";
            render_pretty(os, v, indent + "  ");
        } else if (v.is_string()) {
            os << indent << key << ": " << v.get<std::string>() << "\n";
        } else {
            os << indent << key << ": " << v.dump() << "\n";
        }
    }
}

using Command = Json (*)(const std::string&, const Options&, Tally&);

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mirror-reflective algebras of quivers with relations"};
    app.require_subcommand(1);
    Options opt;
    std::string input;

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", input, "presentation file (.quiver)")->required();
        sub->add_option("--cap", opt.cap, "homological degree bound")->check(CLI::Range(1, 1000));
        sub->add_option("--degree-cap", opt.degree_cap, "rewriting degree bound")->check(CLI::Range(1, 1000));
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--budget", opt.budget, "tower dimension budget")->check(CLI::Range(1, 1000000));
        sub->add_option("--field", opt.field, "field override: Q or F<prime>");
        sub->add_flag("--pretty", opt.pretty, "human-readable output");
        sub->add_flag("--json", [&](std::int64_t) { opt.pretty = false; }, "JSON output (default)");
        sub->add_flag("--strict", opt.strict, "exit 3 when an outcome is unknown");
        return sub;
    };
    auto with_idem = [&](CLI::App* sub) {
        sub->add_option("--idem", opt.idem, "idempotent: a name from the input or name=v1+v2");
        return sub;
    };
    auto with_target = [&](CLI::App* sub) {
        with_idem(sub);
        sub->add_option("--on", opt.on, "algebra: A, R (mirror) or S (reduced mirror)")
            ->check(CLI::IsMember({"A", "R", "S"}));
        sub->add_option("--scale", opt.scale, "level as a multiple of the idempotent");
        return sub;
    };

    std::vector<std::pair<CLI::App*, Command>> commands;
    auto add = [&](const char* name, const char* help, Command fn) {
        CLI::App* sub = common(app.add_subcommand(name, help));
        commands.emplace_back(sub, fn);
        return sub;
    };

    add("parse", "parse a presentation", cmd_parse);
    add("basis", "normal-path basis and structure constants", cmd_basis);
    auto* mirror = with_idem(add("mirror", "mirror-reflective algebra and its identities", cmd_mirror));
    mirror->add_option("--scale", opt.scale, "level as a multiple of the idempotent");
    auto* reduced = with_idem(add("reduced-mirror", "reduced mirror-reflective algebra", cmd_reduced));
    reduced->add_option("--scale", opt.scale, "level as a multiple of the idempotent");
    auto* mq = add("mirror-quiver", "glued quiver presentation of the mirror", cmd_mirror_quiver);
    mq->add_option("--v0", opt.v0, "mirrored vertices, comma separated");
    mq->add_flag("--certify-theta", opt.certify, "certify the isomorphism to the direct construction");
    mq->add_option("-o,--output", opt.output, "write the glued presentation to a file");
    with_target(add("check-symmetric", "symmetric algebra test", cmd_check_symmetric));
    with_target(add("check-gendo", "gendo-symmetric test", cmd_check_gendo));
    with_target(add("domdim", "dominant dimension", cmd_domdim));
    auto* ext = with_target(add("ext", "Ext dimensions between two modules", cmd_ext));
    ext->add_option("--source", opt.source, "regular, simple:K or projective:K");
    ext->add_option("--target", opt.target, "regular, simple:K or projective:K");
    with_idem(add("tor", "Tor over the corner algebra", cmd_tor));
    with_idem(add("strong-idem", "strong idempotent test", cmd_strong_idem));
    auto* strat = with_target(add("strat-dim", "stratified dimension", cmd_strat_dim));
    strat->add_option("--limit", opt.limit, "largest simple count searched")->check(CLI::Range(1, 30));
    auto* tower = with_idem(add("tower", "iterated mirror tower", cmd_tower));
    tower->add_option("--levels", opt.levels, "number of levels")->check(CLI::Range(1, 10));
    tower->add_flag("--strat", opt.strat, "include stratified dimension bounds");
    add("verify-paper-suite", "run every applicable identity suite", cmd_suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    Command fn = nullptr;
    for (const auto& [sub, f] : commands)
        if (sub == chosen)
            fn = f;

    Json report;
    report["command"] = chosen->get_name();
    report["input"] = input;
    report["flags"] = Json{{"cap", opt.cap},
                           {"degree_cap", opt.degree_cap},
                           {"seed", opt.seed},
                           {"budget", opt.budget},
                           {"field", opt.field.empty() ? "input" : opt.field}};
    Tally tally;
    int rc = kOk;
    try {
        if (!opt.field.empty())
            parse_field(opt.field);
        report["result"] = fn(input, opt, tally);
        rc = tally.code(opt.strict);
        report["status"] = tally.status();
        if (!tally.failures.empty())
            report["failures"] = tally.failures;
    } catch (const UsageError& e) {
        report["status"] = "error";
        report["error"] = Json{{"location", e.location}, {"message", e.what()}};
        std::cerr << "mra: " << e.location << ": " << e.what() << "\n";
        rc = kUsage;
    } catch (const IncompleteError& e) {
        report["status"] = "error";
        report["error"] = Json{{"location", input}, {"message", e.what()}};
        std::cerr << "mra: " << input << ": " << e.what() << "\n";
        rc = kUsage;
    } catch (const std::invalid_argument& e) {
        report["status"] = "error";
        report["error"] = Json{{"location", chosen->get_name()}, {"message", e.what()}};
        std::cerr << "mra: " << chosen->get_name() << ": " << e.what() << "\n";
        rc = kUsage;
    } catch (const NonSplitError& e) {
        report["status"] = "error";
        report["error"] = Json{{"location", input}, {"message", e.what()}};
        std::cerr << "mra: " << input << ": " << e.what() << "\n";
        rc = kUsage;
    } catch (const std::logic_error& e) {
        report["status"] = "refuted";
        report["error"] = Json{{"location", chosen->get_name()}, {"message", e.what()}};
        std::cerr << "mra: " << e.what() << "\n";
        rc = kRefuted;
    }
    report["exit"] = rc;
    if (opt.pretty)
        render_pretty(std::cout, report, "");
    else
        std::cout << report.dump(2) << "\n";
    return rc;
}
