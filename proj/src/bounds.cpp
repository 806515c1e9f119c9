#include "hardy/bounds.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <quadmath.h>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include "hardy/boundary_rule.hpp"
#include "hardy/errors.hpp"

namespace hardy {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double log_abs_factor(const disk_point& zero, const disk_point& z) {
    return std::log(std::abs(blaschke_factor(zero, z)));
}

// Distance |z - xi| computed from the anchored gap when z is anchored at xi.
double distance_to(const disk_point& z, complex xi) {
    if (z.is_anchored() && z.anchor() == xi) {
        return std::abs(z.gap());
    }
    return std::abs(z.value() - xi);
}

// 1 - Re z for points on [0, 1), read from the gap when anchored at 1.
double real_gap(const disk_point& z) {
    if (z.is_anchored() && z.anchor() == complex(1.0, 0.0)) {
        return z.gap().real();
    }
    return 1.0 - z.value().real();
}

void require_schedule_matches(const symbol& phi, const blaschke_schedule& schedule) {
    if (schedule.points.empty() || schedule.points.size() != schedule.counts.size()) {
        throw argument_error("Blaschke schedule needs contact points with counts");
    }
    if (schedule.N < 1 || schedule.d < 0) {
        throw argument_error("Blaschke schedule needs N >= 1 and d >= 0");
    }
    for (std::size_t j = 0; j < schedule.points.size(); ++j) {
        const complex xi = schedule.points[j];
        if (schedule.counts[j] < 1 || std::abs(std::abs(xi) - 1.0) > 1e-14) {
            throw argument_error("Blaschke schedule points must be unimodular with positive counts");
        }
        const bool declared =
            std::any_of(phi.contacts().begin(), phi.contacts().end(),
                        [&](const contact& c) { return std::abs(c.image - xi) <= 1e-12; });
        if (!declared && std::abs(phi.boundary(std::arg(xi)) - xi) > 1e-9) {
            throw argument_error(phi.id() + ": schedule point is not a contact point");
        }
    }
}

// min 1 - |gamma(t)| over t farther than the window radius from every declared contact.
double off_contact_gap(const symbol& phi) {
    if (phi.contacts().empty()) {
        return std::numeric_limits<double>::infinity();
    }
    constexpr int samples = 4096;
    double out = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double t = -pi + 2.0 * pi * (i + 0.5) / samples;
        bool near = false;
        for (std::size_t j = 0; j < phi.contacts().size(); ++j) {
            const double offset = std::abs(reduce_angle(t - phi.contacts()[j].angle));
            near = near || offset <= phi.window_radii().at(j);
        }
        if (!near) {
            out = std::min(out, 1.0 - std::abs(phi.boundary(t)));
        }
    }
    return out;
}

// Quadrature nodes, Carleson windows and per-node cumulative log |b_k| for a set of contact points.
class blaschke_sampler {
public:
    blaschke_sampler(const symbol& phi, const std::vector<complex>& points,
                     const std::vector<int>& counts, int n_levels, int max_N,
                     const blaschke_options& options)
        : counts_(counts), n_levels_(n_levels) {
        if (n_levels < 1 || options.grid < 8 || options.xi_grid < 0) {
            throw argument_error("Blaschke statistic needs n_levels >= 1 and positive grids");
        }
        nodes_ = hybrid_boundary_rule(phi, options.grid);
        for (complex xi : points) {
            xis_.push_back(std::arg(xi));
        }
        for (int m = 0; m < options.xi_grid; ++m) {
            xis_.push_back(2.0 * pi * m / options.xi_grid);
        }
        const double reach = off_contact_gap(phi);
        for (int n = 1; n <= n_levels; ++n) {
            const double h = std::ldexp(1.0, -n);
            // Grid windows wider than the off-contact gap would measure the bulk of the image.
            const std::size_t centers = h < reach ? xis_.size() : points.size();
            for (std::size_t x = 0; x < centers; ++x) {
                const carleson_window window(boundary_angle(xis_[x]), h);
                window_entry entry{n, x, {}};
                for (std::size_t i = 0; i < nodes_.size(); ++i) {
                    if (window_pullback_indicator(nodes_[i].image, window)) {
                        entry.members.push_back(static_cast<int>(i));
                    }
                }
                windows_.push_back(std::move(entry));
            }
        }
        cumulative_.assign(max_N + 1, std::vector<double>(nodes_.size(), 0.0));
        for (int k = 1; k <= max_N; ++k) {
            const double g = std::ldexp(1.0, -k);
            std::vector<disk_point> zeros;
            for (complex xi : points) {
                zeros.push_back(disk_point::anchored(xi, g));
            }
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                double total = 0.0;
                for (std::size_t j = 0; j < zeros.size(); ++j) {
                    total += counts_[j] * log_abs_factor(zeros[j], nodes_[i].image);
                }
                cumulative_[k][i] = cumulative_[k - 1][i] + total;
            }
        }
    }

    blaschke_statistic evaluate(int N, int d) const {
        std::vector<double> values(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            values[i] = d == 0 ? nodes_[i].weight
                               : nodes_[i].weight * std::exp(2.0 * d * cumulative_[N][i]);
        }
        blaschke_statistic out;
        out.levels.resize(n_levels_);
        for (int n = 1; n <= n_levels_; ++n) {
            out.levels[n - 1] = {n, std::ldexp(1.0, -n), 0.0, 0.0};
        }
        double best = 0.0;
        for (const window_entry& w : windows_) {
            double total = 0.0;
            for (int i : w.members) {
                total += values[i];
            }
            const double mean = total / std::ldexp(1.0, -w.level);
            blaschke_level& level = out.levels[w.level - 1];
            if (mean > level.value) {
                level.value = mean;
                level.xi = xis_[w.xi];
            }
            best = std::max(best, mean);
        }
        out.statistic = std::sqrt(best);
        return out;
    }

private:
    struct window_entry {
        int level;
        std::size_t xi;
        std::vector<int> members;
    };

    std::vector<int> counts_;
    int n_levels_;
    std::vector<boundary_node> nodes_;
    std::vector<double> xis_;
    std::vector<window_entry> windows_;
    std::vector<std::vector<double>> cumulative_;
};

}  // namespace

blaschke_schedule blaschke_schedule::for_symbol(const symbol& phi, int N, int d) {
    if (phi.contacts().empty()) {
        throw argument_error(phi.id() + ": Blaschke schedule needs declared contacts");
    }
    blaschke_schedule out;
    out.N = N;
    out.d = d;
    for (const contact& c : phi.contacts()) {
        const auto it = std::find(out.points.begin(), out.points.end(), c.image);
        if (it == out.points.end()) {
            out.points.push_back(c.image);
            out.counts.push_back(1);
        } else {
            ++out.counts[it - out.points.begin()];
        }
    }
    return out;
}

int blaschke_schedule::total_count() const {
    int total = 0;
    for (int c : counts) {
        total += c;
    }
    return total;
}

blaschke_product blaschke_schedule::product() const {
    std::vector<std::pair<disk_point, int>> zeros;
    if (d > 0) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            for (int k = 1; k <= N; ++k) {
                zeros.emplace_back(disk_point::anchored(points[j], std::ldexp(1.0, -k)),
                                   counts[j] * d);
            }
        }
    }
    return blaschke_product(std::move(zeros));
}

blaschke_statistic blaschke_upper_statistic(const symbol& phi, const blaschke_schedule& schedule,
                                            int n_levels, const blaschke_options& options) {
    require_schedule_matches(phi, schedule);
    const blaschke_sampler sampler(phi, schedule.points, schedule.counts, n_levels, schedule.N,
                                   options);
    return sampler.evaluate(schedule.N, schedule.d);
}

std::vector<double> blaschke_proxy_curve(const symbol& phi, int n_max, int n_levels,
                                         const blaschke_options& options) {
    const blaschke_schedule base = blaschke_schedule::for_symbol(phi, 1, 1);
    require_schedule_matches(phi, base);
    const int L = base.total_count();
    std::vector<double> curve(std::max(n_max, 0), nan);
    const int max_N = (n_max - 1) / L;
    if (max_N < 1) {
        return curve;
    }
    const blaschke_sampler sampler(phi, base.points, base.counts, n_levels, max_N, options);
    std::map<std::pair<int, int>, double> cache;
    for (int n = L + 1; n <= n_max; ++n) {
        double best = std::numeric_limits<double>::infinity();
        for (int N = 1; L * N + 1 <= n; ++N) {
            // The statistic decreases in d, so only the largest admissible d matters.
            const int d = (n - 1) / (L * N);
            const auto key = std::make_pair(N, d);
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, sampler.evaluate(N, d).statistic).first;
            }
            best = std::min(best, it->second);
        }
        curve[n - 1] = best;
    }
    return curve;
}

double claim_chi(double C) {
    const double M = 2.0 * C + 1.0;
    return M / std::sqrt(M * M + 1.0);
}

double claim_sigma(double C) {
    const double M = 2.0 * C + 1.0;
    return 1.0 / std::log1p(1.0 / (M * M));
}

namespace {

void require_regularity(const regularity_report& regularity) {
    if (!regularity.holds || !(regularity.C > 0.0) || !std::isfinite(regularity.C) ||
        !(regularity.c > 0.0) || !(regularity.window > 0.0)) {
        throw argument_error("claim needs a passed regularity check with constants C, c and a window");
    }
}

}  // namespace

int claim_multiplicity(const modulus_of_continuity& omega, const regularity_report& regularity,
                       int N) {
    require_regularity(regularity);
    return schedule_multiplicity(omega, regularity.C / regularity.c, claim_sigma(regularity.C), N);
}

claim_result claim_check(const symbol& phi, const blaschke_schedule& schedule,
                         const modulus_of_continuity& omega, const regularity_report& regularity,
                         int samples_per_side) {
    require_regularity(regularity);
    require_schedule_matches(phi, schedule);
    if (phi.contacts().empty() || samples_per_side < 2) {
        throw argument_error(phi.id() + ": claim needs declared contacts and a sweep grid");
    }
    const blaschke_product B = schedule.product();
    const double scale = std::ldexp(1.0, -schedule.N);

    struct sample {
        double delta;
        double log_b;
    };
    std::vector<sample> samples;
    double C = regularity.C;
    double c = regularity.c;
    const double x0 = C / c * scale;
    const double lower = x0 < omega.range_bound() ? omega_inverse(omega, x0) : omega.domain_bound();
    for (std::size_t j = 0; j < phi.contacts().size(); ++j) {
        const contact& k = phi.contacts()[j];
        const double r = std::min(phi.window_radii().at(j), regularity.window);
        if (!(lower < r)) {
            continue;
        }
        const double step = std::log(r / lower) / samples_per_side;
        for (int i = 1; i <= samples_per_side; ++i) {
            const double delta = i == samples_per_side ? r : lower * std::exp(step * i);
            for (double side : {1.0, -1.0}) {
                const disk_point image =
                    phi.at(disk_point::anchored(k.prevertex, boundary_gap(side * delta)));
                const double near = distance_to(image, k.image);
                C = std::max(C, near / image.one_minus_abs());
                c = std::min(c, near / omega(delta));
                samples.push_back({delta, B.log_abs(image)});
            }
        }
    }
    claim_result out;
    out.C = C;
    out.c = c;
    out.M = 2.0 * C + 1.0;
    out.chi = claim_chi(C);
    const double x = C / c * scale;
    out.s_N = x < omega.range_bound() ? omega_inverse(omega, x) : omega.domain_bound();
    out.log_max_modulus = -std::numeric_limits<double>::infinity();
    for (const sample& s : samples) {
        if (s.delta > out.s_N) {
            out.log_max_modulus = std::max(out.log_max_modulus, s.log_b);
            ++out.swept;
        }
    }
    out.max_modulus = std::exp(out.log_max_modulus);
    out.log_bound = schedule.d * std::log(out.chi);
    out.bound = std::exp(out.log_bound);
    out.holds = out.swept == 0 || out.log_max_modulus <= out.log_bound + 1e-10;
    return out;
}

double norm_bound(const symbol& phi) {
    const double r = std::abs(phi(0.0));
    return std::sqrt((1.0 + r) / (1.0 - r));
}

namespace {

struct image_set {
    std::vector<disk_point> v;
    bool identical = true;
    bool duplicated = false;
};

image_set images_of(const symbol& phi, std::span<const disk_point> points) {
    if (points.empty()) {
        throw argument_error("kernel bound needs at least one point");
    }
    image_set out;
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (!points[j].is_interior()) {
            throw domain_error("kernel bound points must be interior");
        }
        for (std::size_t k = 0; k < j; ++k) {
            if (points[k] == points[j]) {
                throw degenerate_input_error("kernel bound points must be distinct");
            }
        }
        const disk_point v = phi.at(points[j]);
        out.identical = out.identical && v.value() == points[j].value();
        for (const disk_point& w : out.v) {
            out.duplicated = out.duplicated || w == v || w.value() == v.value();
        }
        out.v.push_back(v);
    }
    return out;
}

Eigen::MatrixXcd kernel_gram(std::span<const disk_point> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd G(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            G(j, k) = 1.0 / one_minus_conj_product(points[k], points[j]);
        }
    }
    return G;
}

}  // namespace

double kernel_lower_bound(const symbol& phi, std::span<const disk_point> points) {
    const image_set images = images_of(phi, points);
    if (images.identical) {
        return 1.0;
    }
    if (images.duplicated) {
        return 0.0;
    }
    const Eigen::MatrixXcd Gu = kernel_gram(points);
    const Eigen::MatrixXcd Gv = kernel_gram(images.v);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> spectrum(Gu, Eigen::EigenvaluesOnly);
    const double lambda_min = spectrum.eigenvalues().minCoeff();
    const double lambda_max = spectrum.eigenvalues().maxCoeff();
    if (!(lambda_min > 0.0) || lambda_max / lambda_min > 1.0 / (100.0 * unit_roundoff)) {
        std::size_t first = 0;
        std::size_t second = points.size() > 1 ? 1 : 0;
        double closest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < points.size(); ++j) {
            for (std::size_t k = j + 1; k < points.size(); ++k) {
                const double rho = pseudo_hyperbolic(points[j], points[k]);
                if (rho < closest) {
                    closest = rho;
                    first = j;
                    second = k;
                }
            }
        }
        throw conditioning_error("kernel Gram matrix is numerically singular for points " +
                                     std::to_string(first) + " and " + std::to_string(second),
                                 first, second);
    }
    const Eigen::LLT<Eigen::MatrixXcd> llt(Gu);
    const Eigen::MatrixXcd X = llt.matrixL().solve(Gv);
    const Eigen::MatrixXcd reduced = llt.matrixL().solve(X.adjoint()).adjoint();
    const Eigen::MatrixXcd hermitian = 0.5 * (reduced + reduced.adjoint());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> generalized(hermitian,
                                                                      Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(generalized.eigenvalues().minCoeff(), 0.0));
}

namespace {

template <class R>
struct wide_complex {
    R re;
    R im;
};

template <class R>
wide_complex<R> operator+(const wide_complex<R>& a, const wide_complex<R>& b) {
    return {a.re + b.re, a.im + b.im};
}

template <class R>
wide_complex<R> operator-(const wide_complex<R>& a, const wide_complex<R>& b) {
    return {a.re - b.re, a.im - b.im};
}

template <class R>
wide_complex<R> operator*(const wide_complex<R>& a, const wide_complex<R>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class R>
wide_complex<R> operator/(const wide_complex<R>& a, const wide_complex<R>& b) {
    const R norm = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

template <class R>
wide_complex<R> conj(const wide_complex<R>& a) {
    return {a.re, -a.im};
}

template <class R>
struct wide_point {
    wide_complex<R> value;
    wide_complex<R> anchor;
    wide_complex<R> gap;
    bool anchored = false;
};

template <class R>
wide_complex<R> widen(complex z) {
    return {R(z.real()), R(z.imag())};
}

template <class R>
wide_point<R> widen(const disk_point& p) {
    wide_point<R> out;
    out.anchored = p.is_anchored();
    if (out.anchored) {
        out.anchor = widen<R>(p.anchor());
        out.gap = widen<R>(p.gap());
        out.value = out.anchor * (wide_complex<R>{R(1), R(0)} - out.gap);
    } else {
        out.value = widen<R>(p.value());
    }
    return out;
}

template <class R>
bool same_anchor(const wide_point<R>& a, const wide_point<R>& b) {
    return a.anchored && b.anchored && a.anchor.re == b.anchor.re && a.anchor.im == b.anchor.im;
}

// 1 - conj(a) z.
template <class R>
wide_complex<R> wide_defect(const wide_point<R>& a, const wide_point<R>& z) {
    if (same_anchor(a, z)) {
        return conj(a.gap) + z.gap - conj(a.gap) * z.gap;
    }
    return wide_complex<R>{R(1), R(0)} - conj(a.value) * z.value;
}

template <class R>
wide_complex<R> wide_difference(const wide_point<R>& z, const wide_point<R>& a) {
    if (same_anchor(a, z)) {
        return z.anchor * (a.gap - z.gap);
    }
    return z.value - a.value;
}

template <class R>
R wide_one_minus_abs2(const wide_point<R>& a) {
    if (a.anchored) {
        return R(2) * a.gap.re - (a.gap.re * a.gap.re + a.gap.im * a.gap.im);
    }
    return R(1) - (a.value.re * a.value.re + a.value.im * a.value.im);
}

template <class R>
R wide_sqrt(const R& x) {
    using std::sqrt;
    return sqrt(x);
}

template <>
__float128 wide_sqrt(const __float128& x) {
    return sqrtq(x);
}

template <class R>
using wide_matrix = std::vector<std::vector<wide_complex<R>>>;

// Lower triangular E[i][k] = e_k(z_i) for the Malmquist-Takenaka basis with zeros z, so that
// E E^* is the kernel Gram matrix of the points.
template <class R>
wide_matrix<R> kernel_factor(std::span<const disk_point> points) {
    const std::size_t n = points.size();
    std::vector<wide_point<R>> z;
    for (const disk_point& p : points) {
        z.push_back(widen<R>(p));
    }
    wide_matrix<R> E(n, std::vector<wide_complex<R>>(n, {R(0), R(0)}));
    for (std::size_t i = 0; i < n; ++i) {
        wide_complex<R> running{R(1), R(0)};
        for (std::size_t k = 0; k <= i; ++k) {
            const wide_complex<R> defect = wide_defect(z[k], z[i]);
            E[i][k] = wide_complex<R>{wide_sqrt(wide_one_minus_abs2(z[k])), R(0)} / defect * running;
            running = running * (wide_difference(z[i], z[k]) / defect);
        }
    }
    return E;
}

// Largest singular value of E_v^{-1} E_u, the inverse of the compressed adjoint operator.
template <class R>
double inverse_norm(std::span<const disk_point> points, std::span<const disk_point> images) {
    const wide_matrix<R> Eu = kernel_factor<R>(points);
    const wide_matrix<R> Ev = kernel_factor<R>(images);
    const std::size_t n = points.size();
    Eigen::MatrixXcd X(n, n);
    std::vector<wide_complex<R>> x(n);
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < n; ++i) {
            wide_complex<R> rhs = Eu[i][m];
            for (std::size_t k = 0; k < i; ++k) {
                rhs = rhs - Ev[i][k] * x[k];
            }
            x[i] = rhs / Ev[i][i];
            X(i, m) = complex(static_cast<double>(x[i].re), static_cast<double>(x[i].im));
        }
    }
    if (!X.allFinite()) {
        return std::numeric_limits<double>::infinity();
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X);
    return svd.singularValues()(0);
}

template <unsigned Digits>
using wide_real =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>,
                                  boost::multiprecision::et_off>;

}  // namespace

double model_space_lower_bound(const symbol& phi, std::span<const disk_point> points) {
    const image_set images = images_of(phi, points);
    if (images.identical) {
        return 1.0;
    }
    if (images.duplicated) {
        return 0.0;
    }
    // Digits double until two consecutive precisions agree.
    const std::array<double (*)(std::span<const disk_point>, std::span<const disk_point>), 7> ladder{
        &inverse_norm<double>,          &inverse_norm<long double>,     &inverse_norm<__float128>,
        &inverse_norm<wide_real<60>>,   &inverse_norm<wide_real<120>>, &inverse_norm<wide_real<240>>,
        &inverse_norm<wide_real<480>>};
    double previous = ladder[0](points, images.v);
    for (std::size_t k = 1; k < ladder.size(); ++k) {
        const double current = ladder[k](points, images.v);
        if (std::isfinite(current) && std::abs(current - previous) <= 1e-9 * current) {
            return 1.0 / current;
        }
        previous = current;
    }
    throw conditioning_error(phi.id() + ": kernel points too clustered for 480 digits", 0,
                             points.size() > 1 ? 1 : 0);
}

radial_chain lastmin_points(const symbol& phi, double sigma, int n) {
    if (!(sigma > 0.0 && sigma < 1.0) || n < 1) {
        throw argument_error("lastmin_points needs 0 < sigma < 1 and n >= 1");
    }
    if (!phi.real_on_reals()) {
        throw argument_error(phi.id() + ": lastmin_points needs a real symbol");
    }
    const auto image_gap = [&](double g) {
        return real_gap(phi.at(disk_point::anchored(complex(1.0, 0.0), g)));
    };
    double previous = image_gap(1.0);
    for (int k = 1; k <= 400; ++k) {
        const double g = k <= 100 ? 1.0 - 0.0099 * k : 0.01 * std::exp2(-0.5 * (k - 100));
        const double current = image_gap(g);
        if (!(current <= previous)) {
            throw argument_error(phi.id() + ": symbol is not increasing on [0, 1)");
        }
        previous = current;
    }

    radial_chain chain;
    chain.sigma = sigma;
    chain.u.push_back(disk_point(0.0));
    chain.v.push_back(phi.at(disk_point(0.0)));
    chain.a = real_gap(chain.v[0]);
    double log_g = 0.0;
    const double log_floor = std::log(1e-300);
    for (int j = 1; j <= n; ++j) {
        const double target = chain.a * std::pow(sigma, j);
        double lo = log_floor;
        double hi = log_g;
        if (!(image_gap(std::exp(lo)) < target)) {
            throw numeric_error(phi.id() + ": lastmin chain leaves the resolvable range at step " +
                                std::to_string(j));
        }
        for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (image_gap(std::exp(mid)) < target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        log_g = 0.5 * (lo + hi);
        const disk_point u = disk_point::anchored(complex(1.0, 0.0), std::exp(log_g));
        chain.u.push_back(u);
        chain.v.push_back(phi.at(u));
    }
    for (int j = 0; j < n; ++j) {
        const double ratio = real_gap(chain.v[j + 1]) / real_gap(chain.v[j]);
        chain.max_ratio_error = std::max(chain.max_ratio_error, std::abs(ratio - sigma));
    }
    chain.end_error = std::abs(real_gap(chain.v[n]) - chain.a * std::pow(sigma, n));
    if (chain.max_ratio_error > 1e-10 || chain.end_error > 1e-8) {
        throw numeric_error(phi.id() + ": lastmin chain fails its recursion invariants");
    }
    return chain;
}

double newman_floor(double sigma) { return std::exp(-5.0 / (1.0 - sigma)); }

double newman_product(double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw argument_error("newman_product needs 0 < sigma < 1");
    }
    double log_total = 0.0;
    double power = sigma;
    while (power >= 0.5e-15) {
        log_total += 2.0 * (std::log1p(-power) - std::log1p(power));
        power *= sigma;
    }
    return std::exp(log_total);
}

lastmin_result lastmin_lower_bound(const radial_chain& chain, double c_prime) {
    if (chain.u.size() < 2 || chain.u.size() != chain.v.size()) {
        throw argument_error("lastmin bound needs a chain with at least one step");
    }
    lastmin_result out;
    double mu2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < chain.u.size(); ++j) {
        mu2 = std::min(mu2, chain.u[j].one_minus_abs2() / chain.v[j].one_minus_abs2());
    }
    out.mu = std::sqrt(mu2);
    const std::span<const disk_point> v(chain.v.data() + 1, chain.v.size() - 1);
    out.log_delta_v = v.size() > 1 ? log_carleson_delta(v) : 0.0;
    out.delta_v = std::exp(out.log_delta_v);
    out.log_bound = std::log(c_prime) + 4.0 * out.log_delta_v + std::log(out.mu);
    out.bound = std::exp(out.log_bound);
    out.newman_floor = newman_floor(chain.sigma);
    out.newman_holds = out.log_delta_v >= -5.0 / (1.0 - chain.sigma);
    return out;
}

lastmin_result lastmin_lower_bound(const symbol& phi, double sigma, int n, double c_prime) {
    return lastmin_lower_bound(lastmin_points(phi, sigma, n), c_prime);
}

kernel_candidate best_kernel_lower_bound(const symbol& phi, int n) {
    if (n < 1) {
        throw argument_error("best_kernel_lower_bound needs n >= 1");
    }
    const complex zeta = phi.contacts().empty() ? complex(1.0, 0.0) : phi.contacts()[0].prevertex;
    kernel_candidate best{0.0, "none", 0.0};
    const auto consider = [&](const std::vector<disk_point>& points, const char* family,
                              double parameter) {
        try {
            const double value = model_space_lower_bound(phi, points);
            if (value > best.value) {
                best = {value, family, parameter};
            }
        } catch (const numeric_error&) {
        }
    };
    if (phi.real_on_reals() && zeta == complex(1.0, 0.0)) {
        const auto chain_value = [&](double x) {
            const double sigma = -std::expm1(-x);
            try {
                const radial_chain chain = lastmin_points(phi, sigma, n);
                const std::vector<disk_point> u(chain.u.begin() + 1, chain.u.end());
                const double value = model_space_lower_bound(phi, u);
                if (value > best.value) {
                    best = {value, "lastmin", sigma};
                }
                return value;
            } catch (const numeric_error&) {
            } catch (const argument_error&) {
            }
            return 0.0;
        };
        // sigma = 1 - e^{-x}; coarse scan, then golden-section refinement around the best.
        double x_best = 0.0;
        double f_best = -1.0;
        std::vector<double> xs;
        for (int k = 1; k <= 16; ++k) {
            xs.push_back(0.5 * k);
        }
        for (double sigma : default_sigma_grid(n)) {
            xs.push_back(-std::log1p(-sigma));
        }
        std::sort(xs.begin(), xs.end());
        for (double x : xs) {
            const double f = chain_value(x);
            if (f > f_best) {
                f_best = f;
                x_best = x;
            }
        }
        if (f_best > 0.0) {
            const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
            double a = x_best - 0.5;
            double b = x_best + 0.5;
            double c = b - ratio * (b - a);
            double d = a + ratio * (b - a);
            double fc = chain_value(c);
            double fd = chain_value(d);
            for (int it = 0; it < 10; ++it) {
                if (fc > fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - ratio * (b - a);
                    fc = chain_value(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + ratio * (b - a);
                    fd = chain_value(d);
                }
            }
        }
    }
    for (int k = 1; k <= 9; ++k) {
        const double rho = 0.1 * k;
        std::vector<disk_point> points;
        for (int j = 1; j <= n; ++j) {
            const double g = std::pow(rho, j);
            if (!(g > 1e-300)) {
                break;
            }
            points.push_back(disk_point::anchored(zeta, g));
        }
        if (static_cast<int>(points.size()) == n) {
            consider(points, "geometric", rho);
        }
    }
    std::vector<disk_point> chebyshev;
    for (int j = 1; j <= n; ++j) {
        const double s = std::sin((2.0 * j - 1.0) * pi / (4.0 * n));
        chebyshev.push_back(disk_point::anchored(zeta, s * s));
    }
    consider(chebyshev, "chebyshev", 0.0);
    return best;
}

bound_curves compute_bound_curves(const symbol& phi, int n_max, const bound_options& options) {
    if (n_max < 1) {
        throw argument_error("bound curves need n_max >= 1");
    }
    bound_curves out;
    const std::vector<double> proxy =
        phi.contacts().empty() ? std::vector<double>(n_max, nan)
                               : blaschke_proxy_curve(phi, n_max, options.n_levels,
                                                      options.blaschke);
    nlohmann::json choices = nlohmann::json::array();
    for (int n = 1; n <= n_max; ++n) {
        out.n.push_back(n);
        const kernel_candidate kernel = best_kernel_lower_bound(phi, n);
        out.lower_kernel.push_back(kernel.value);
        double log_best = -std::numeric_limits<double>::infinity();
        double sigma_best = nan;
        if (phi.real_on_reals()) {
            for (double sigma : default_sigma_grid(n)) {
                try {
                    const lastmin_result r = lastmin_lower_bound(phi, sigma, n, options.c_prime);
                    if (r.log_bound > log_best) {
                        log_best = r.log_bound;
                        sigma_best = sigma;
                    }
                } catch (const numeric_error&) {
                } catch (const argument_error&) {
                }
            }
        }
        out.log_lower_lastmin.push_back(std::isfinite(log_best) ? log_best : nan);
        out.lower_lastmin.push_back(std::isfinite(log_best) ? std::exp(log_best) : nan);
        out.upper_blaschke_proxy.push_back(proxy[n - 1]);
        choices.push_back({{"n", n},
                           {"kernel_family", kernel.family},
                           {"kernel_parameter", kernel.parameter},
                           {"lastmin_sigma", std::isfinite(sigma_best)
                                                 ? nlohmann::json(sigma_best)
                                                 : nlohmann::json(nullptr)}});
    }
    out.provenance["choices"] = choices;
    out.provenance["c_prime"] = options.c_prime;
    out.provenance["n_levels"] = options.n_levels;
    out.provenance["grid_t"] = options.blaschke.grid;
    out.provenance["grid_xi"] = options.blaschke.xi_grid;
    out.provenance["constants"] = "bounds are reported up to absolute constants";
    if (phi.modulus() && !phi.contacts().empty()) {
        const regularity_report reg =
            regularity_check(phi, *phi.modulus(), phi.window_radii().front());
        out.provenance["C"] = reg.C;
        out.provenance["c"] = reg.c;
        out.provenance["M"] = 2.0 * reg.C + 1.0;
        out.provenance["chi"] = claim_chi(reg.C);
        out.provenance["sigma_sched"] = claim_sigma(reg.C);
    }
    return out;
}

void write_bounds_csv(std::ostream& out, const bound_curves& curves) {
    out << "n,lower_kernel,lower_lastmin,upper_blaschke_proxy\n";
    char buffer[128];
    for (std::size_t i = 0; i < curves.n.size(); ++i) {
        std::snprintf(buffer, sizeof buffer, "%d,%.17g,%.17g,%.17g\n", curves.n[i],
                      curves.lower_kernel[i], curves.lower_lastmin[i],
                      curves.upper_blaschke_proxy[i]);
        out << buffer;
    }
}

}  // namespace hardy
