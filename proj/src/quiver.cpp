#include "mra/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace mra {

std::optional<int> Quiver::vertex_index(std::string_view name) const
{
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name)
            return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> Quiver::arrow_index(std::string_view name) const
{
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name)
            return static_cast<int>(i);
    return std::nullopt;
}

bool operator<(const Path& a, const Path& b)
{
    if (a.arrows.size() != b.arrows.size())
        return a.arrows.size() < b.arrows.size();
    if (a.arrows.empty())
        return a.src < b.src;
    if (a.arrows != b.arrows)
        return a.arrows < b.arrows;
    return a.src < b.src;
}

bool operator==(const Path& a, const Path& b)
{
    return a.src == b.src && a.tgt == b.tgt && a.arrows == b.arrows;
}

std::optional<Path> concat(const Path& a, const Path& b)
{
    if (a.tgt != b.src)
        return std::nullopt;
    Path p{a.src, b.tgt, a.arrows};
    p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
    return p;
}

std::string path_str(const Quiver& q, const Path& p)
{
    if (p.trivial())
        return "e_" + q.vertices[p.src];
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i)
            s += '.';
        s += q.arrows[p.arrows[i]].name;
    }
    return s;
}

void combo_add(const Field& f, Combo& c, const Path& p, const Scalar& s)
{
    if (s == 0)
        return;
    auto it = c.find(p);
    if (it == c.end()) {
        c.emplace(p, f.canon(s));
        return;
    }
    it->second = f.add(it->second, s);
    if (it->second == 0)
        c.erase(it);
}

Combo combo_sub(const Field& f, const Combo& a, const Combo& b)
{
    Combo r = a;
    for (const auto& [p, s] : b)
        combo_add(f, r, p, f.neg(s));
    return r;
}

Combo combo_scale(const Field& f, const Scalar& s, const Combo& a)
{
    Combo r;
    if (s == 0)
        return r;
    for (const auto& [p, t] : a)
        r.emplace(p, f.mul(s, t));
    return r;
}

std::string combo_str(const Quiver& q, const Combo& c)
{
    if (c.empty())
        return "0";
    std::string s;
    bool first = true;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        Scalar coef = it->second;
        bool neg = coef < 0;
        if (neg)
            coef = -coef;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (coef != 1)
            s += scalar_str(coef) + "*";
        s += path_str(q, it->first);
        first = false;
    }
    return s;
}

ParseError::ParseError(int l, int c, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg), line(l), col(c)
{
}

namespace {

struct Token {
    enum Kind { Word, Sym } kind;
    std::string text;
    int col;
};

bool word_byte(unsigned char ch)
{
    return std::isalnum(ch) || ch == '_' || ch == '\'' || ch >= 0x80;
}

std::vector<Token> tokenize(std::string_view line, int lineno)
{
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        unsigned char ch = line[i];
        if (ch == '#')
            break;
        if (std::isspace(ch)) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (word_byte(ch)) {
            std::size_t j = i;
            while (j < line.size() && word_byte(static_cast<unsigned char>(line[j])))
                ++j;
            toks.push_back({Token::Word, std::string(line.substr(i, j - i)), col});
            i = j;
            continue;
        }
        if (ch == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            toks.push_back({Token::Sym, "->", col});
            i += 2;
            continue;
        }
        if (std::string_view(".+-*/=:,").find(static_cast<char>(ch)) != std::string_view::npos) {
            toks.push_back({Token::Sym, std::string(1, static_cast<char>(ch)), col});
            ++i;
            continue;
        }
        throw ParseError(lineno, col, std::string("unexpected character '") + static_cast<char>(ch) + "'");
    }
    return toks;
}

bool all_digits(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

class LineParser {
public:
    LineParser(const Quiver& q, std::vector<Token> toks, int lineno, int eol)
        : q_(q), t_(std::move(toks)), line_(lineno), eol_(eol)
    {
    }

    bool done() const { return pos_ >= t_.size(); }
    int col() const { return done() ? eol_ : t_[pos_].col; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col(), msg); }

    bool peek_sym(const char* s) const { return !done() && t_[pos_].kind == Token::Sym && t_[pos_].text == s; }
    bool peek_sym_at(std::size_t k, const char* s) const
    {
        return pos_ + k < t_.size() && t_[pos_ + k].kind == Token::Sym && t_[pos_ + k].text == s;
    }
    void expect_sym(const char* s)
    {
        if (!peek_sym(s))
            fail(std::string("expected '") + s + "'");
        ++pos_;
    }
    std::string word(const char* what)
    {
        if (done() || t_[pos_].kind != Token::Word)
            fail(std::string("expected ") + what);
        return t_[pos_++].text;
    }
    void expect_end()
    {
        if (!done())
            fail("unexpected '" + t_[pos_].text + "'");
    }

    int vertex(const char* what)
    {
        int c = col();
        std::string name = word(what);
        auto v = q_.vertex_index(name);
        if (!v)
            throw ParseError(line_, c, "unknown vertex '" + name + "'");
        return *v;
    }

    // combo := [sign] term (sign term)*
    std::vector<std::pair<Scalar, Path>> combo()
    {
        std::vector<std::pair<Scalar, Path>> terms;
        bool first = true;
        while (true) {
            Scalar sign = 1;
            if (peek_sym("+") || peek_sym("-")) {
                if (t_[pos_].text == "-")
                    sign = -1;
                ++pos_;
            } else if (!first) {
                break;
            }
            auto term = parse_term();
            if (term)
                terms.emplace_back(sign * term->first, term->second);
            first = false;
            if (done() || peek_sym("="))
                break;
        }
        return terms;
    }

private:
    std::optional<std::pair<Scalar, Path>> parse_term()
    {
        Scalar coef = 1;
        if (!done() && t_[pos_].kind == Token::Word && all_digits(t_[pos_].text) &&
            (peek_sym_at(1, "*") || peek_sym_at(1, "/"))) {
            coef = Scalar(mpz_class(t_[pos_].text));
            ++pos_;
            if (peek_sym("/")) {
                ++pos_;
                int c = col();
                std::string d = word("denominator");
                if (!all_digits(d) || mpz_class(d) == 0)
                    throw ParseError(line_, c, "bad denominator '" + d + "'");
                coef /= Scalar(mpz_class(d));
            }
            expect_sym("*");
        } else if (!done() && t_[pos_].kind == Token::Word && t_[pos_].text == "0" && !peek_sym_at(1, ".") &&
                   !q_.arrow_index("0")) {
            ++pos_;
            return std::nullopt;
        }
        return std::make_pair(coef, parse_path());
    }

    Path parse_path()
    {
        int start = col();
        std::vector<std::pair<std::string, int>> names;
        names.emplace_back(word("path"), start);
        while (peek_sym(".")) {
            ++pos_;
            int c = col();
            names.emplace_back(word("arrow"), c);
        }
        if (names.size() == 1 && !q_.arrow_index(names[0].first) && names[0].first.rfind("e_", 0) == 0) {
            auto v = q_.vertex_index(names[0].first.substr(2));
            if (!v)
                throw ParseError(line_, start, "unknown vertex in trivial path '" + names[0].first + "'");
            return Path::vertex(*v);
        }
        Path p;
        for (std::size_t i = 0; i < names.size(); ++i) {
            auto a = q_.arrow_index(names[i].first);
            if (!a)
                throw ParseError(line_, names[i].second, "unknown arrow '" + names[i].first + "'");
            const Arrow& ar = q_.arrows[*a];
            if (i == 0)
                p.src = ar.src;
            else if (ar.src != p.tgt)
                throw ParseError(line_, names[i].second, "arrow '" + ar.name + "' does not compose with the preceding path");
            p.tgt = ar.tgt;
            p.arrows.push_back(*a);
        }
        return p;
    }

    const Quiver& q_;
    std::vector<Token> t_;
    std::size_t pos_ = 0;
    int line_;
    int eol_;

public:
    std::size_t& pos() { return pos_; }
};

struct RawRelation {
    std::vector<std::pair<Scalar, Path>> terms;
    int line;
    int col;
};

}  // namespace

Presentation parse_presentation(std::string_view text)
{
    Presentation pres;
    std::vector<RawRelation> raw;
    std::size_t start = 0;
    int lineno = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        ++lineno;
        start = end + 1;
        auto toks = tokenize(line, lineno);
        if (toks.empty()) {
            if (end == text.size())
                break;
            continue;
        }
        LineParser lp(pres.quiver, toks, lineno, static_cast<int>(line.size()) + 1);
        std::string kw = lp.word("keyword");
        if (kw == "field") {
            int c = lp.col();
            std::string k = lp.word("field name");
            if (k == "Q") {
                pres.field = Field::rationals();
            } else if (k == "F" || (k.size() > 1 && k[0] == 'F' && all_digits(k.substr(1)))) {
                std::string ps = k == "F" ? lp.word("characteristic") : k.substr(1);
                if (!all_digits(ps) || ps.size() > 9 || !is_prime(std::stol(ps)))
                    throw ParseError(lineno, c, "field characteristic '" + ps + "' is not prime");
                pres.field = Field::prime(std::stol(ps));
            } else {
                throw ParseError(lineno, c, "unknown field '" + k + "'");
            }
            lp.expect_end();
        } else if (kw == "vertex") {
            if (lp.done())
                lp.fail("expected vertex name");
            while (!lp.done()) {
                int c = lp.col();
                std::string v = lp.word("vertex name");
                if (pres.quiver.vertex_index(v))
                    throw ParseError(lineno, c, "duplicate vertex '" + v + "'");
                pres.quiver.vertices.push_back(v);
            }
        } else if (kw == "arrow") {
            int c = lp.col();
            std::string name = lp.word("arrow name");
            if (pres.quiver.arrow_index(name))
                throw ParseError(lineno, c, "duplicate arrow '" + name + "'");
            lp.expect_sym(":");
            int s = lp.vertex("source vertex");
            lp.expect_sym("->");
            int t = lp.vertex("target vertex");
            lp.expect_end();
            pres.quiver.arrows.push_back({name, s, t});
        } else if (kw == "relation") {
            int c = lp.col();
            auto lhs = lp.combo();
            if (lp.peek_sym("=")) {
                ++lp.pos();
                auto rhs = lp.combo();
                for (auto& [s, p] : rhs)
                    lhs.emplace_back(-s, p);
            }
            lp.expect_end();
            raw.push_back({std::move(lhs), lineno, c});
        } else if (kw == "idem") {
            std::string name = lp.word("idempotent name");
            lp.expect_sym("=");
            NamedIdempotent ni{name, {}};
            ni.vertices.push_back(lp.vertex("vertex"));
            while (lp.peek_sym("+")) {
                ++lp.pos();
                ni.vertices.push_back(lp.vertex("vertex"));
            }
            lp.expect_end();
            std::sort(ni.vertices.begin(), ni.vertices.end());
            ni.vertices.erase(std::unique(ni.vertices.begin(), ni.vertices.end()), ni.vertices.end());
            pres.idempotents.push_back(std::move(ni));
        } else {
            throw ParseError(lineno, 1, "unknown keyword '" + kw + "'");
        }
        if (end == text.size())
            break;
    }
    for (auto& r : raw) {
        Combo c;
        for (auto& [s, p] : r.terms) {
            if (p.length() < 2)
                throw ParseError(r.line, r.col, "relation contains path '" + path_str(pres.quiver, p) + "' of length < 2");
            combo_add(pres.field, c, p, s);
        }
        if (c.empty())
            continue;
        const Path& lead = c.rbegin()->first;
        for (const auto& [p, s] : c)
            if (p.src != lead.src || p.tgt != lead.tgt)
                throw ParseError(r.line, r.col, "relation terms do not share source and target");
        pres.relations.push_back(std::move(c));
    }
    return pres;
}

Combo parse_combo(const Presentation& p, std::string_view text)
{
    auto toks = tokenize(text, 1);
    LineParser lp(p.quiver, toks, 1, static_cast<int>(text.size()) + 1);
    auto terms = lp.combo();
    lp.expect_end();
    Combo c;
    for (auto& [s, path] : terms)
        combo_add(p.field, c, path, s);
    return c;
}

Presentation load_presentation(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

std::string presentation_to_text(const Presentation& p)
{
    std::ostringstream os;
    if (p.field.is_rational())
        os << "field Q\n";
    else
        os << "field F " << p.field.characteristic() << "\n";
    if (!p.quiver.vertices.empty()) {
        os << "vertex";
        for (const auto& v : p.quiver.vertices)
            os << ' ' << v;
        os << "\n";
    }
    for (const auto& a : p.quiver.arrows)
        os << "arrow " << a.name << " : " << p.quiver.vertices[a.src] << " -> " << p.quiver.vertices[a.tgt] << "\n";
    for (const auto& r : p.relations)
        os << "relation " << combo_str(p.quiver, r) << "\n";
    for (const auto& ni : p.idempotents) {
        os << "idem " << ni.name << " =";
        for (std::size_t i = 0; i < ni.vertices.size(); ++i)
            os << (i ? " + " : " ") << p.quiver.vertices[ni.vertices[i]];
        os << "\n";
    }
    return os.str();
}

// ---- rewriting ----

namespace {

// Position of the first occurrence of tip inside p, if any.
std::optional<std::size_t> find_sub(const std::vector<int>& p, const std::vector<int>& tip)
{
    if (tip.size() > p.size())
        return std::nullopt;
    auto it = std::search(p.begin(), p.end(), tip.begin(), tip.end());
    if (it == p.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - p.begin());
}

Path splice(const Path& p, std::size_t pos, std::size_t len, const Path& mid)
{
    Path r;
    r.src = p.src;
    r.tgt = p.tgt;
    r.arrows.assign(p.arrows.begin(), p.arrows.begin() + static_cast<long>(pos));
    r.arrows.insert(r.arrows.end(), mid.arrows.begin(), mid.arrows.end());
    r.arrows.insert(r.arrows.end(), p.arrows.begin() + static_cast<long>(pos + len), p.arrows.end());
    return r;
}

class Completer {
public:
    Completer(const Presentation& p, int cap) : f_(p.field), q_(p.quiver), cap_(cap) {}

    static constexpr std::size_t kRuleBudget = 4000;
    static constexpr std::size_t kBasisBudget = 100000;

    void run(const std::vector<Combo>& rels)
    {
        std::vector<Combo> pending = rels;
        while (!failed_) {
            absorb(pending);
            pending.clear();
            if (failed_)
                break;
            critical_pairs(pending);
            if (pending.empty())
                break;
        }
        if (!failed_)
            for (auto& r : rules_)
                r.tail = reduce_combo(f_, rules_, r.tail);
    }

    std::vector<RewriteRule> rules_;
    bool failed_ = false;
    std::string reason_;

private:
    void fail(std::string why)
    {
        if (!failed_) {
            failed_ = true;
            reason_ = std::move(why);
        }
    }

    void absorb(std::vector<Combo> pending)
    {
        while (!pending.empty() && !failed_) {
            Combo c = reduce_combo(f_, rules_, pending.back());
            pending.pop_back();
            if (c.empty())
                continue;
            Path tip = c.rbegin()->first;
            Scalar lc = c.rbegin()->second;
            if (static_cast<int>(tip.length()) >= cap_) {
                fail("rule tip of length " + std::to_string(tip.length()) + " reaches degree cap");
                return;
            }
            c.erase(tip);
            RewriteRule rule{tip, combo_scale(f_, f_.neg(f_.inv(lc)), c)};
            std::vector<RewriteRule> kept;
            for (auto& r : rules_) {
                if (find_sub(r.tip.arrows, tip.arrows)) {
                    Combo back = r.tail;
                    combo_add(f_, back, r.tip, Scalar(-1));
                    pending.push_back(std::move(back));
                } else {
                    kept.push_back(std::move(r));
                }
            }
            rules_ = std::move(kept);
            rules_.push_back(std::move(rule));
            if (rules_.size() > kRuleBudget) {
                fail("rule budget exceeded");
                return;
            }
        }
    }

    void critical_pairs(std::vector<Combo>& out)
    {
        for (std::size_t i = 0; i < rules_.size() && !failed_; ++i)
            for (std::size_t j = 0; j < rules_.size() && !failed_; ++j) {
                const auto& t1 = rules_[i].tip.arrows;
                const auto& t2 = rules_[j].tip.arrows;
                std::size_t lim = std::min(t1.size(), t2.size());
                for (std::size_t k = 1; k < lim; ++k) {
                    if (!std::equal(t1.end() - static_cast<long>(k), t1.end(), t2.begin()))
                        continue;
                    auto key = std::make_tuple(t1, t2, k);
                    if (seen_.count(key))
                        continue;
                    seen_.insert(key);
                    std::size_t deg = t1.size() + t2.size() - k;
                    if (static_cast<int>(deg) > cap_) {
                        fail("overlap of degree " + std::to_string(deg) + " exceeds degree cap");
                        return;
                    }
                    Path u{rules_[i].tip.src, 0, std::vector<int>(t1.begin(), t1.end() - static_cast<long>(k))};
                    u.tgt = q_.arrows[u.arrows.back()].tgt;
                    Path v{0, rules_[j].tip.tgt, std::vector<int>(t2.begin() + static_cast<long>(k), t2.end())};
                    v.src = q_.arrows[v.arrows.front()].src;
                    Combo s;
                    for (const auto& [p, c] : rules_[i].tail)
                        combo_add(f_, s, *concat(p, v), c);
                    for (const auto& [p, c] : rules_[j].tail)
                        combo_add(f_, s, *concat(u, p), f_.neg(c));
                    s = reduce_combo(f_, rules_, s);
                    if (!s.empty())
                        out.push_back(std::move(s));
                }
            }
    }

    const Field& f_;
    const Quiver& q_;
    int cap_;
    std::set<std::tuple<std::vector<int>, std::vector<int>, std::size_t>> seen_;
};

}  // namespace

Combo reduce_combo(const Field& f, const std::vector<RewriteRule>& rules, const Combo& c)
{
    Combo work = c;
    Combo out;
    while (!work.empty()) {
        auto it = std::prev(work.end());
        Path p = it->first;
        Scalar s = it->second;
        work.erase(it);
        bool hit = false;
        for (const auto& r : rules) {
            auto pos = find_sub(p.arrows, r.tip.arrows);
            if (!pos)
                continue;
            for (const auto& [q, t] : r.tail)
                combo_add(f, work, splice(p, *pos, r.tip.length(), q), f.mul(s, t));
            hit = true;
            break;
        }
        if (!hit)
            combo_add(f, out, p, s);
    }
    return out;
}

RewriteSystem complete_rewrite(const Presentation& pres, int degree_cap)
{
    RewriteSystem rs;
    rs.pres = pres;
    rs.degree_cap = degree_cap;
    Completer comp(pres, degree_cap);
    comp.run(pres.relations);
    rs.rules = comp.rules_;
    if (comp.failed_) {
        rs.reason = comp.reason_;
        return rs;
    }
    std::vector<Path> frontier;
    for (std::size_t v = 0; v < pres.quiver.vertices.size(); ++v)
        frontier.push_back(Path::vertex(static_cast<int>(v)));
    std::vector<Path> basis = frontier;
    while (!frontier.empty()) {
        std::vector<Path> next;
        for (const auto& p : frontier)
            for (std::size_t a = 0; a < pres.quiver.arrows.size(); ++a) {
                if (pres.quiver.arrows[a].src != p.tgt)
                    continue;
                Path np = p;
                np.arrows.push_back(static_cast<int>(a));
                np.tgt = pres.quiver.arrows[a].tgt;
                bool reducible = false;
                for (const auto& r : rs.rules) {
                    const auto& t = r.tip.arrows;
                    if (t.size() <= np.arrows.size() &&
                        std::equal(t.begin(), t.end(), np.arrows.end() - static_cast<long>(t.size()))) {
                        reducible = true;
                        break;
                    }
                }
                if (reducible)
                    continue;
                if (static_cast<int>(np.length()) >= degree_cap) {
                    rs.reason = "normal path of length " + std::to_string(np.length()) + " reaches degree cap";
                    return rs;
                }
                next.push_back(std::move(np));
            }
        basis.insert(basis.end(), next.begin(), next.end());
        if (basis.size() > Completer::kBasisBudget) {
            rs.reason = "normal basis budget exceeded";
            return rs;
        }
        frontier = std::move(next);
    }
    std::sort(basis.begin(), basis.end());
    rs.basis = std::move(basis);
    rs.complete = true;
    return rs;
}

Combo normal_form(const RewriteSystem& rs, const Combo& c)
{
    if (!rs.complete)
        throw IncompleteError("rewrite system is not complete: " + rs.reason);
    return reduce_combo(rs.pres.field, rs.rules, c);
}

Combo normal_form(const RewriteSystem& rs, const Path& p)
{
    Combo c;
    c.emplace(p, Scalar(1));
    return normal_form(rs, c);
}

std::optional<std::size_t> basis_index(const RewriteSystem& rs, const Path& p)
{
    auto it = std::lower_bound(rs.basis.begin(), rs.basis.end(), p);
    if (it == rs.basis.end() || !(*it == p))
        return std::nullopt;
    return static_cast<std::size_t>(it - rs.basis.begin());
}

Vec combo_to_vec(const RewriteSystem& rs, const Combo& c)
{
    Vec v(rs.basis.size());
    for (const auto& [p, s] : normal_form(rs, c)) {
        auto i = basis_index(rs, p);
        if (!i)
            throw std::logic_error("normal form left the normal basis");
        v[*i] = s;
    }
    return v;
}

Vec vertex_sum(const RewriteSystem& rs, const std::vector<int>& verts)
{
    Vec v(rs.basis.size());
    for (int x : verts)
        v[*basis_index(rs, Path::vertex(x))] += 1;
    return v;
}

Algebra structure_constants(const RewriteSystem& rs)
{
    if (!rs.complete)
        throw IncompleteError("rewrite system is not complete: " + rs.reason);
    const auto& q = rs.pres.quiver;
    std::size_t n = rs.basis.size();
    std::vector<std::string> labels;
    for (const auto& p : rs.basis)
        labels.push_back(path_str(q, p));
    std::vector<std::vector<Term>> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto pq = concat(rs.basis[i], rs.basis[j]);
            if (!pq)
                continue;
            Combo c;
            c.emplace(*pq, Scalar(1));
            for (const auto& [p, s] : normal_form(rs, c))
                table[i * n + j].push_back({*basis_index(rs, p), s});
        }
    Vec unit(n);
    std::vector<Vec> idems;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        std::size_t k = *basis_index(rs, Path::vertex(static_cast<int>(v)));
        unit[k] = 1;
        idems.push_back(unit_vec(n, k));
    }
    Algebra A = make_algebra(rs.pres.field, n, std::move(labels), std::move(table), std::move(unit), std::move(idems),
                             "quiver");
    Subspace rad(n, rs.pres.field);
    for (std::size_t i = 0; i < n; ++i)
        if (!rs.basis[i].trivial())
            rad.add(unit_vec(n, i));
    A.radical_hint = rad;
    return A;
}

std::vector<int> resolve_vertices(const Presentation& p, const std::string& spec)
{
    std::string s = spec;
    auto eq = s.find('=');
    if (eq != std::string::npos) {
        s = s.substr(eq + 1);
    } else {
        for (const auto& ni : p.idempotents)
            if (ni.name == spec)
                return ni.vertices;
    }
    std::vector<int> out;
    std::string cur;
    auto flush = [&]() {
        std::string t;
        for (char ch : cur)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                t += ch;
        cur.clear();
        if (t.empty())
            return;
        auto v = p.quiver.vertex_index(t);
        if (!v)
            throw std::invalid_argument("unknown vertex '" + t + "' in idempotent '" + spec + "'");
        out.push_back(*v);
    };
    for (char ch : s) {
        if (ch == '+' || ch == ',')
            flush();
        else
            cur += ch;
    }
    flush();
    if (out.empty())
        throw std::invalid_argument("empty idempotent '" + spec + "'");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace mra
