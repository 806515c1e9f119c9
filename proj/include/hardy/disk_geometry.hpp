#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "hardy/numerics.hpp"

namespace hardy {

// A point of the circle e^{it}, with t reduced to (-pi, pi].
class boundary_angle {
public:
    boundary_angle() = default;
    explicit boundary_angle(double t);
    double value() const { return t_; }
    complex point() const { return unit_point(t_); }

private:
    double t_ = 0.0;
};

// A point of the closed disk. Points near the circle carry an exact unit anchor zeta and a
// gap alpha with value = zeta * (1 - alpha), so that distances to zeta stay resolvable far
// below the spacing of doubles near the circle.
class disk_point {
public:
    disk_point() = default;
    disk_point(complex z) : value_(z) {}
    disk_point(double x) : value_(x, 0.0) {}

    static disk_point anchored(complex anchor, complex gap);

    complex value() const { return value_; }
    bool is_anchored() const { return anchored_; }
    complex anchor() const { return anchor_; }
    // 1 - conj(anchor) * value; only meaningful for anchored points.
    complex gap() const { return gap_; }

    // 1 - |z|^2, accurate for anchored points.
    double one_minus_abs2() const;
    // 1 - |z|, accurate for anchored points.
    double one_minus_abs() const;
    bool is_interior() const { return one_minus_abs2() > 0.0; }

    bool operator==(const disk_point& other) const;

private:
    complex value_{0.0, 0.0};
    complex anchor_{1.0, 0.0};
    complex gap_{1.0, 0.0};
    bool anchored_ = false;
};

// Gap alpha with e^{i delta} = 1 - alpha, accurate for tiny delta.
complex boundary_gap(double delta);

// 1 - conj(a) * z.
complex one_minus_conj_product(const disk_point& a, const disk_point& z);
// z - a.
complex difference(const disk_point& z, const disk_point& a);
// Blaschke factor (z - a) / (1 - conj(a) z).
complex blaschke_factor(const disk_point& a, const disk_point& z);

double pseudo_hyperbolic(const disk_point& z, const disk_point& w);

class blaschke_product {
public:
    blaschke_product() = default;
    explicit blaschke_product(std::vector<std::pair<disk_point, int>> zeros);

    const std::vector<std::pair<disk_point, int>>& zeros() const { return zeros_; }
    int degree() const;

    complex operator()(complex z) const;
    complex operator()(const disk_point& z) const;
    // log |B(z)|, free of underflow for high multiplicities.
    double log_abs(const disk_point& z) const;

private:
    std::vector<std::pair<disk_point, int>> zeros_;
};

complex blaschke_eval(const blaschke_product& b, complex z);

// S(xi, h) = { z : |z - xi| <= h } for xi = e^{i center}.
struct carleson_window {
    carleson_window(boundary_angle center, double h);
    boundary_angle center;
    double h;
};

// Product-form Carleson constant min_k prod_{j != k} rho(z_k, z_j).
double carleson_delta(std::span<const disk_point> points);
double log_carleson_delta(std::span<const disk_point> points);

struct mobius_check {
    bool applicable = false;
    bool holds = false;
    double quotient = 0.0;
    double bound = 0.0;
};

// Tests |w - w0| <= M min(1 - |w|, 1 - |w0|) and, when it holds, rho(w, w0) <= M / sqrt(M^2 + 1).
mobius_check mobius_bound_check(const disk_point& w, const disk_point& w0, double M);

bool window_pullback_indicator(complex value, const carleson_window& window);
bool window_pullback_indicator(const disk_point& value, const carleson_window& window);

}  // namespace hardy
