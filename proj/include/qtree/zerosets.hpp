#pragma once

#include <string>
#include <vector>

#include "qtree/determinants.hpp"

namespace qtree {

// All roots in y of D_n(., z) at fixed z, increasing.  Robin has n+1 roots,
// Dirichlet root condition has n.  Refines the bracketing grid until the
// expected count is found; throws if the cap is hit.
std::vector<double> y_roots_at(const GraphParams& params, double z);

// Rank (0-based) of the component curve through (y, z): the index of y among
// the sorted y-roots of D_n(., z).
int component_index(const GraphParams& params, double y, double z);

enum class ComponentKind { ConstrainedStrip, Rogue };

struct CurveComponent {
    int k = 0;
    ComponentKind kind = ComponentKind::ConstrainedStrip;
    std::vector<double> z, y;
    bool truncated = false;  // rogue tracing left the resolvable range
};

// Traces C_n^k (Robin: 0 <= k <= n) or C°_n^k (Dirichlet: 1 <= k <= n) as a
// graph y = g(z) over npts uniform z samples.  alpha = 0 (vertical-line
// degenerate case) is rejected.
CurveComponent trace_component(const GraphParams& params, int k, double z_lo,
                               double z_hi, int npts);

struct StripCheck {
    bool inside = false;
    std::string active;  // the inequality that was tested
};

// Slanted-strip membership for alpha < 0, z > 0.
StripCheck strip_membership(const GraphParams& params, int k, double y, double z);

enum class RogueCurve { Cnn, CnnMinus1, CnnRing };

// Asymptote z(y) of the unconstrained components for y > 1:
// alpha z + beta (y - 1/y) ~ 0 with beta = 1 (Cnn, CnnRing) or b (CnnMinus1).
double rogue_asymptote(RogueCurve kind, double b, double alpha, double y);

}  // namespace qtree
