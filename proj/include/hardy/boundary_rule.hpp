#pragma once

#include <vector>

#include "hardy/disk_geometry.hpp"
#include "hardy/symbols.hpp"

namespace hardy {

// A quadrature node on the circle: the point, its image under a symbol and the normalized
// weight (weights sum to 1, i.e. normalized arc length).
struct boundary_node {
    disk_point point;
    disk_point image;
    double weight = 0.0;
};

struct boundary_rule_options {
    // Gauss-Legendre order per panel (8, 20 or 40).
    int panel_points = 20;
    // Subpanels per dyadic level near contacts.
    int subdivisions = 4;
    // Smallest angular offset resolved near a contact.
    double min_offset = 1e-300;
    // Longest panel allowed anywhere.
    double max_panel = 0.1;
};

// Composite Gauss-Legendre rule on the circle, graded dyadically toward every declared contact
// prevertex of phi; nodes near a contact are anchored at its prevertex and their images at its
// image. Without contacts the rule is uniform.
std::vector<boundary_node> graded_boundary_rule(const symbol& phi,
                                                const boundary_rule_options& options = {});

// Uniform grid t_k = 2 pi k / grid with weight 1/grid for grid fractions. Cells adjacent to
// declared contacts are replaced by the graded rule.
std::vector<boundary_node> hybrid_boundary_rule(const symbol& phi, int grid,
                                                double min_offset = 1e-300);

}  // namespace hardy
