#pragma once

#include "mra/algebra.hpp"
#include "mra/linalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mra {

struct Arrow {
    std::string name;
    int src;
    int tgt;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    std::optional<int> vertex_index(std::string_view name) const;
    std::optional<int> arrow_index(std::string_view name) const;
};

// A path composed left to right. Empty arrow list = trivial path at src.
struct Path {
    int src = 0;
    int tgt = 0;
    std::vector<int> arrows;

    std::size_t length() const { return arrows.size(); }
    bool trivial() const { return arrows.empty(); }
    static Path vertex(int v) { return Path{v, v, {}}; }
};

// Degree first, then trivial paths by vertex, then lexicographic in arrow order.
bool operator<(const Path& a, const Path& b);
bool operator==(const Path& a, const Path& b);
inline bool operator!=(const Path& a, const Path& b) { return !(a == b); }
std::optional<Path> concat(const Path& a, const Path& b);
std::string path_str(const Quiver& q, const Path& p);

// Linear combination of paths; zero coefficients are never stored.
using Combo = std::map<Path, Scalar>;
void combo_add(const Field& f, Combo& c, const Path& p, const Scalar& s);
Combo combo_sub(const Field& f, const Combo& a, const Combo& b);
Combo combo_scale(const Field& f, const Scalar& s, const Combo& a);
std::string combo_str(const Quiver& q, const Combo& c);

struct NamedIdempotent {
    std::string name;
    std::vector<int> vertices;
};

struct Presentation {
    Field field;
    Quiver quiver;
    std::vector<Combo> relations;
    std::vector<NamedIdempotent> idempotents;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& msg);
    int line;
    int col;
};

Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);
std::string presentation_to_text(const Presentation& p);
// Parse a combination against a fixed quiver (used by tests and tools).
Combo parse_combo(const Presentation& p, std::string_view text);

struct RewriteRule {
    Path tip;
    Combo tail;  // tip == tail modulo the ideal
};

struct RewriteSystem {
    Presentation pres;
    std::vector<RewriteRule> rules;
    std::vector<Path> basis;  // normal paths in path order
    bool complete = false;
    int degree_cap = 0;
    std::string reason;  // why completion failed
};

class IncompleteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RewriteSystem complete_rewrite(const Presentation& pres, int degree_cap = 30);
// Reduction by the current rules (no completeness requirement).
Combo reduce_combo(const Field& f, const std::vector<RewriteRule>& rules, const Combo& c);
Combo normal_form(const RewriteSystem& rs, const Combo& c);
Combo normal_form(const RewriteSystem& rs, const Path& p);
Algebra structure_constants(const RewriteSystem& rs);
// Index of a normal path in the basis, if present.
std::optional<std::size_t> basis_index(const RewriteSystem& rs, const Path& p);
Vec combo_to_vec(const RewriteSystem& rs, const Combo& c);
// Sum of vertex idempotents as an element of the algebra.
Vec vertex_sum(const RewriteSystem& rs, const std::vector<int>& verts);
std::vector<int> resolve_vertices(const Presentation& p, const std::string& spec);

}  // namespace mra
