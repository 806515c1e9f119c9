#include "hardy/boundary_rule.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

struct anchor_span {
    complex prevertex;
    double angle;
    // Offsets reach from 0 (at the prevertex) to reach, on the side given by sign.
    double reach;
    double sign;
};

void add_panel(std::vector<boundary_node>& out, const symbol& phi, const gauss_rule& rule,
               const anchor_span& span, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double delta = span.sign * (mid + half * rule.nodes[i]);
        boundary_node node;
        node.point = disk_point::anchored(span.prevertex, boundary_gap(delta));
        node.image = phi.at(node.point);
        node.weight = half * rule.weights[i] / (2.0 * pi);
        out.push_back(node);
    }
}

void add_graded(std::vector<boundary_node>& out, const symbol& phi, const gauss_rule& rule,
                const anchor_span& span, const boundary_rule_options& options,
                double stop_at = 0.0) {
    double hi = span.reach;
    const double floor = std::max(options.min_offset, stop_at);
    while (hi > floor) {
        const double lo = 0.5 * hi;
        int pieces = options.subdivisions;
        while ((hi - lo) / pieces > options.max_panel) {
            pieces *= 2;
        }
        for (int k = 0; k < pieces; ++k) {
            add_panel(out, phi, rule, span, lo + (hi - lo) * k / pieces,
                      lo + (hi - lo) * (k + 1) / pieces);
        }
        hi = lo;
    }
}

std::vector<anchor_span> spans_for(const symbol& phi) {
    std::vector<contact> sorted = phi.contacts();
    std::sort(sorted.begin(), sorted.end(),
              [](const contact& a, const contact& b) { return a.angle < b.angle; });
    std::vector<anchor_span> spans;
    const std::size_t m = sorted.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double next = (i + 1 < m) ? sorted[i + 1].angle : sorted[0].angle + 2.0 * pi;
        const double previous = (i > 0) ? sorted[i - 1].angle : sorted[m - 1].angle - 2.0 * pi;
        spans.push_back({sorted[i].prevertex, sorted[i].angle, 0.5 * (next - sorted[i].angle), 1.0});
        spans.push_back(
            {sorted[i].prevertex, sorted[i].angle, 0.5 * (sorted[i].angle - previous), -1.0});
    }
    return spans;
}

}  // namespace

std::vector<boundary_node> graded_boundary_rule(const symbol& phi,
                                                const boundary_rule_options& options) {
    const gauss_rule& rule = gauss_legendre(options.panel_points);
    std::vector<boundary_node> out;
    if (phi.contacts().empty()) {
        const int panels = static_cast<int>(std::ceil(2.0 * pi / options.max_panel));
        for (int k = 0; k < panels; ++k) {
            const double lo = -pi + 2.0 * pi * k / panels;
            const double hi = -pi + 2.0 * pi * (k + 1) / panels;
            const double mid = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                boundary_node node;
                node.point = disk_point(unit_point(mid + half * rule.nodes[i]));
                node.image = disk_point(phi(node.point.value()));
                node.weight = half * rule.weights[i] / (2.0 * pi);
                out.push_back(node);
            }
        }
        return out;
    }
    for (const anchor_span& span : spans_for(phi)) {
        add_graded(out, phi, rule, span, options);
    }
    return out;
}

std::vector<boundary_node> hybrid_boundary_rule(const symbol& phi, int grid, double min_offset) {
    if (grid < 8) {
        throw argument_error("boundary grid must have at least 8 points");
    }
    const double step = 2.0 * pi / grid;
    // Grid point k stands for the cell [t_k - step/2, t_k + step/2]. The three cells around
    // each contact are replaced by graded panels reaching from the contact to the cell edges.
    std::vector<bool> removed(grid, false);
    std::vector<long> centers;
    for (const contact& c : phi.contacts()) {
        const long kc = std::lround(c.angle / step);
        centers.push_back(kc);
        for (long k = kc - 1; k <= kc + 1; ++k) {
            removed[((k % grid) + grid) % grid] = true;
        }
    }
    std::vector<boundary_node> out;
    for (int k = 0; k < grid; ++k) {
        if (removed[k]) {
            continue;
        }
        const double t = step * k;
        boundary_node node;
        node.point = disk_point(unit_point(t));
        node.image = disk_point(phi.boundary(t));
        node.weight = 1.0 / grid;
        out.push_back(node);
    }
    boundary_rule_options options;
    options.min_offset = min_offset;
    options.max_panel = step;
    options.panel_points = 8;
    options.subdivisions = 1;
    const gauss_rule& rule = gauss_legendre(8);
    for (std::size_t j = 0; j < phi.contacts().size(); ++j) {
        const contact& c = phi.contacts()[j];
        const double upper_edge = (centers[j] + 1.5) * step;
        const double lower_edge = (centers[j] - 1.5) * step;
        add_graded(out, phi, rule, {c.prevertex, c.angle, upper_edge - c.angle, 1.0}, options);
        add_graded(out, phi, rule, {c.prevertex, c.angle, c.angle - lower_edge, -1.0}, options);
    }
    return out;
}

}  // namespace hardy
