#pragma once

#include "mra/mirror.hpp"
#include "mra/quiver.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mra {

// Quiver glued from Q and a barred copy of Q along the full subquiver on the
// complement of v0, with the four relation families.
struct MirrorPresentation {
    Presentation source;
    std::vector<int> v0;           // source vertex indices being mirrored
    Presentation delta;            // the glued quiver; relations = all families in order
    std::vector<int> vertex_bar;   // source vertex -> glued index of its copy
    std::vector<int> arrow_bar;    // source arrow -> glued index of its copy
    std::array<std::vector<Combo>, 4> families;
    bool in_v0(int v) const;
    bool kept_arrow(int a) const;  // both ends outside v0
};

// Copy names carry this suffix.
inline constexpr const char* kBarMark = "'";

MirrorPresentation mirror_quiver(const Presentation& pres, const std::vector<int>& v0);

// Image of a source path: vertices in v0 go to i + i', arrows touching v0 to a + a'.
Combo plus_map(const MirrorPresentation& mp, const Path& p);
Combo plus_map(const MirrorPresentation& mp, const Combo& c);
// sigma + sum of the barred copies of its terms that leave the kept subquiver.
Combo plus_relation(const MirrorPresentation& mp, const Combo& sigma);
// Barred copy of a source combination.
Combo bar_copy(const MirrorPresentation& mp, const Combo& c);
// Collapse of the glued path algebra onto the source: paths avoiding every copy survive.
std::optional<Path> collapse(const MirrorPresentation& mp, const Path& p);
// Exchange of each mirrored vertex and arrow with its copy.
Path bar_swap(const MirrorPresentation& mp, const Path& p);

struct ThetaCertificate {
    MirrorPresentation presentation;
    RewriteSystem source_system;
    RewriteSystem delta_system;
    AlgebraPtr source;
    AlgebraPtr delta;
    MirrorData mirror;
    Mat theta;  // dim delta x dim R
    Mat back;   // dim R x dim delta, built from the inverse assignment on arrows
    std::vector<IdentityCheck> checks;
};

// Throws IncompleteError if either completion fails and std::logic_error if a check fails.
ThetaCertificate certify_theta(const Presentation& pres, const std::vector<int>& v0, int degree_cap = 30);

}  // namespace mra
