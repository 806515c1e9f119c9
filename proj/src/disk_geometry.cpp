#include "hardy/disk_geometry.hpp"

#include <cmath>
#include <limits>

#include "hardy/errors.hpp"

namespace hardy {

boundary_angle::boundary_angle(double t) : t_(reduce_angle(t)) {
    if (!std::isfinite(t)) {
        throw argument_error("boundary angle must be finite");
    }
}

disk_point disk_point::anchored(complex anchor, complex gap) {
    disk_point p;
    p.anchor_ = anchor;
    p.gap_ = gap;
    p.anchored_ = true;
    p.value_ = anchor * (1.0 - gap);
    return p;
}

double disk_point::one_minus_abs2() const {
    if (anchored_) {
        return 2.0 * gap_.real() - std::norm(gap_);
    }
    const double r = std::abs(value_);
    return (1.0 - r) * (1.0 + r);
}

double disk_point::one_minus_abs() const {
    if (anchored_) {
        return one_minus_abs2() / (1.0 + std::abs(value_));
    }
    return 1.0 - std::abs(value_);
}

bool disk_point::operator==(const disk_point& other) const {
    if (anchored_ && other.anchored_ && anchor_ == other.anchor_) {
        return gap_ == other.gap_;
    }
    return value_ == other.value_;
}

complex boundary_gap(double delta) {
    const double s = std::sin(0.5 * delta);
    return {2.0 * s * s, -std::sin(delta)};
}

complex one_minus_conj_product(const disk_point& a, const disk_point& z) {
    if (a.is_anchored() && z.is_anchored() && a.anchor() == z.anchor()) {
        const complex ga = std::conj(a.gap());
        return ga + z.gap() - ga * z.gap();
    }
    return 1.0 - std::conj(a.value()) * z.value();
}

complex difference(const disk_point& z, const disk_point& a) {
    if (a.is_anchored() && z.is_anchored() && a.anchor() == z.anchor()) {
        return z.anchor() * (a.gap() - z.gap());
    }
    return z.value() - a.value();
}

complex blaschke_factor(const disk_point& a, const disk_point& z) {
    return difference(z, a) / one_minus_conj_product(a, z);
}

double pseudo_hyperbolic(const disk_point& z, const disk_point& w) {
    if (!z.is_interior() || !w.is_interior()) {
        throw domain_error("pseudo_hyperbolic requires interior points");
    }
    return std::abs(difference(z, w)) / std::abs(one_minus_conj_product(z, w));
}

blaschke_product::blaschke_product(std::vector<std::pair<disk_point, int>> zeros)
    : zeros_(std::move(zeros)) {
    for (const auto& [a, m] : zeros_) {
        if (m <= 0) {
            throw argument_error("Blaschke multiplicities must be positive");
        }
        if (!a.is_interior()) {
            throw domain_error("Blaschke zeros must be interior points");
        }
    }
}

int blaschke_product::degree() const {
    int d = 0;
    for (const auto& zero : zeros_) {
        d += zero.second;
    }
    return d;
}

complex blaschke_product::operator()(complex z) const {
    if (std::abs(z) > 1.0 + 4.0 * unit_roundoff) {
        throw domain_error("Blaschke evaluation outside the closed disk");
    }
    return (*this)(disk_point(z));
}

complex blaschke_product::operator()(const disk_point& z) const {
    complex result{1.0, 0.0};
    for (const auto& [a, m] : zeros_) {
        result *= std::pow(blaschke_factor(a, z), m);
    }
    return result;
}

double blaschke_product::log_abs(const disk_point& z) const {
    double total = 0.0;
    for (const auto& [a, m] : zeros_) {
        const double f = std::abs(blaschke_factor(a, z));
        if (f == 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        total += m * std::log(f);
    }
    return total;
}

complex blaschke_eval(const blaschke_product& b, complex z) { return b(z); }

carleson_window::carleson_window(boundary_angle c, double radius) : center(c), h(radius) {
    if (!(h > 0.0 && h <= 2.0)) {
        throw argument_error("Carleson window radius must lie in (0, 2]");
    }
}

double log_carleson_delta(std::span<const disk_point> points) {
    for (const auto& p : points) {
        if (!p.is_interior()) {
            throw domain_error("carleson_delta requires interior points");
        }
    }
    double best = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        double total = 0.0;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == k) {
                continue;
            }
            const double rho = pseudo_hyperbolic(points[k], points[j]);
            if (rho == 0.0) {
                throw degenerate_input_error("carleson_delta: duplicate points " + std::to_string(j) +
                                             " and " + std::to_string(k));
            }
            total += std::log(rho);
        }
        best = (k == 0) ? total : std::min(best, total);
    }
    return best;
}

double carleson_delta(std::span<const disk_point> points) {
    return std::exp(log_carleson_delta(points));
}

mobius_check mobius_bound_check(const disk_point& w, const disk_point& w0, double M) {
    if (!(M > 0.0)) {
        throw argument_error("mobius_bound_check requires M > 0");
    }
    if (!w.is_interior() || !w0.is_interior()) {
        throw domain_error("mobius_bound_check requires interior points");
    }
    mobius_check result;
    result.bound = M / std::sqrt(M * M + 1.0);
    const double gap = std::min(w.one_minus_abs(), w0.one_minus_abs());
    result.applicable = std::abs(difference(w, w0)) <= M * gap;
    if (result.applicable) {
        result.quotient = pseudo_hyperbolic(w, w0);
        result.holds = result.quotient <= result.bound;
    }
    return result;
}

bool window_pullback_indicator(complex value, const carleson_window& window) {
    return std::abs(value - window.center.point()) <= window.h;
}

bool window_pullback_indicator(const disk_point& value, const carleson_window& window) {
    const complex xi = window.center.point();
    if (value.is_anchored() && value.anchor() == xi) {
        return std::abs(value.gap()) <= window.h;
    }
    return std::abs(value.value() - xi) <= window.h;
}

}  // namespace hardy
