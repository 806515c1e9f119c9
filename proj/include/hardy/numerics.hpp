#pragma once

#include <complex>
#include <string>
#include <vector>

namespace hardy {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double unit_roundoff = 1.1102230246251565e-16;

// e^{it} with exact values at integer multiples of pi/2.
complex unit_point(double t);

// Reduces an angle to (-pi, pi].
double reduce_angle(double t);

// exp(z) - 1 without cancellation for small z.
complex expm1(complex z);

// log(1 + z) without cancellation for small z.
complex log1p(complex z);

// z^n by repeated squaring, exact for unit-point powers of roots of unity.
complex ipow(complex z, int n);

// 1 - (1 - x)^p for integer p >= 1, accurate for small x.
complex one_minus_power(complex x, int p);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], n in {8, 20, 40}.
struct gauss_rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const gauss_rule& gauss_legendre(int n);

// Integrates f over [a, b] with composite Gauss-Legendre panels, doubling until two
// successive totals agree to rel_tol. Throws numeric_error after max_doublings.
template <class F>
auto integrate(F&& f, double a, double b, double rel_tol = 1e-13, int max_doublings = 12)
    -> decltype(f(a));

}  // namespace hardy

#include "hardy/numerics_impl.hpp"

namespace hardy {

// Parses "a", "a+bi", "a-bi", "bi", "i", "-i"; throws argument_error otherwise.
complex parse_complex(const std::string& text);
// Parses a finite double consuming the whole string; throws argument_error otherwise.
double parse_real(const std::string& text);
int parse_int(const std::string& text);

}  // namespace hardy
