#pragma once

#include <cmath>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

template <class F>
auto integrate(F&& f, double a, double b, double rel_tol, int max_doublings) -> decltype(f(a)) {
    using value_type = decltype(f(a));
    const gauss_rule& rule = gauss_legendre(20);
    auto composite = [&](int panels) {
        value_type total{};
        const double h = (b - a) / panels;
        for (int k = 0; k < panels; ++k) {
            const double lo = a + k * h;
            const double mid = lo + 0.5 * h;
            value_type part{};
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                part += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
            }
            total += 0.5 * h * part;
        }
        return total;
    };
    value_type previous = composite(1);
    double change = 0.0;
    for (int level = 1, panels = 2; level <= max_doublings; ++level, panels *= 2) {
        const value_type current = composite(panels);
        change = std::abs(current - previous);
        if (change <= rel_tol * std::abs(current) || change <= 1e-300) {
            return current;
        }
        previous = current;
    }
    throw numeric_error("quadrature did not converge: last change " + std::to_string(change));
}

}  // namespace hardy
