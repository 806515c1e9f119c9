#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hardy/disk_geometry.hpp"
#include "hardy/modulus.hpp"
#include "hardy/symbols.hpp"
#include "json.hpp"

namespace hardy {

// Zeros p_{j,k} = (1 - 2^{-k}) xi_j, k = 1..N, each with multiplicity counts_j * d.
struct blaschke_schedule {
    std::vector<complex> points;
    std::vector<int> counts;
    int N = 1;
    int d = 1;

    // Contact images of phi, merged when several contacts share an image.
    static blaschke_schedule for_symbol(const symbol& phi, int N, int d);

    int total_count() const;
    int degree() const { return total_count() * N * d; }
    blaschke_product product() const;
};

struct blaschke_level {
    int n = 0;
    double h = 0.0;
    double value = 0.0;
    double xi = 0.0;
};

struct blaschke_statistic {
    double statistic = 0.0;
    std::vector<blaschke_level> levels;
};

struct blaschke_options {
    int grid = 65536;
    int xi_grid = 64;
};

// sqrt of max over h = 2^{-n}, n = 1..n_levels, and xi over schedule points plus a global grid of
// (1/h) int_{gamma(t) in S(xi, h)} |B(gamma(t))|^2 dm(t).
blaschke_statistic blaschke_upper_statistic(const symbol& phi, const blaschke_schedule& schedule,
                                            int n_levels, const blaschke_options& options = {});

// U(n) = min over (N, d) with L N d + 1 <= n of the statistic; entry n - 1, NaN where no pair fits.
std::vector<double> blaschke_proxy_curve(const symbol& phi, int n_max, int n_levels,
                                         const blaschke_options& options = {});

struct claim_result {
    double max_modulus = 0.0;
    double log_max_modulus = 0.0;
    double bound = 1.0;
    double log_bound = 0.0;
    bool holds = true;
    double C = 0.0;
    double c = 0.0;
    double M = 0.0;
    double chi = 0.0;
    double s_N = 0.0;
    int swept = 0;
};

// M = 2C + 1, chi = M / sqrt(M^2 + 1), sigma_sched = 1 / log(chi^{-2}).
double claim_chi(double C);
double claim_sigma(double C);

// Max |B(gamma(t))| over s_N < |t - t_j| <= r_j against chi^d.
claim_result claim_check(const symbol& phi, const blaschke_schedule& schedule,
                         const modulus_of_continuity& omega, const regularity_report& regularity,
                         int samples_per_side = 32768);

// Multiplicity d_N of the proof for measured regularity constants.
int claim_multiplicity(const modulus_of_continuity& omega, const regularity_report& regularity,
                       int N);

// Classical bound sqrt((1 + |phi(0)|) / (1 - |phi(0)|)) on the norm of C_phi.
double norm_bound(const symbol& phi);

// sqrt(lambda_min(G_v, G_u)) by Cholesky reduction of the kernel Gram matrices.
double kernel_lower_bound(const symbol& phi, std::span<const disk_point> points);

// The same quantity as sigma_min of <e_k, e'_m o phi>, with e and e' orthonormal bases of the
// kernel spans at the points and at their images, by graded boundary quadrature.
double model_space_lower_bound(const symbol& phi, std::span<const disk_point> points);

struct radial_chain {
    std::vector<disk_point> u;
    std::vector<disk_point> v;
    double sigma = 0.5;
    double a = 1.0;
    double max_ratio_error = 0.0;
    double end_error = 0.0;
};

// u_0 = 0 and 1 - phi(u_{j+1}) = sigma (1 - phi(u_j)); points anchored at 1.
radial_chain lastmin_points(const symbol& phi, double sigma, int n);

struct lastmin_result {
    double bound = 0.0;
    double log_bound = 0.0;
    double delta_v = 0.0;
    double log_delta_v = 0.0;
    double mu = 0.0;
    double newman_floor = 0.0;
    bool newman_holds = false;
};

lastmin_result lastmin_lower_bound(const symbol& phi, double sigma, int n, double c_prime = 1.0);
lastmin_result lastmin_lower_bound(const radial_chain& chain, double c_prime = 1.0);

// prod_{l >= 1} ((1 - sigma^l) / (1 + sigma^l))^2.
double newman_product(double sigma);
double newman_floor(double sigma);

struct kernel_candidate {
    double value = 0.0;
    std::string family;
    double parameter = 0.0;
};

// Best lower bound over lastmin chains, geometric chains and Chebyshev grids with n points.
kernel_candidate best_kernel_lower_bound(const symbol& phi, int n);

struct bound_curves {
    std::vector<int> n;
    std::vector<double> lower_kernel;
    std::vector<double> lower_lastmin;
    std::vector<double> log_lower_lastmin;
    std::vector<double> upper_blaschke_proxy;
    nlohmann::json provenance = nlohmann::json::object();
};

struct bound_options {
    int n_levels = 8;
    blaschke_options blaschke;
    double c_prime = 1.0;
};

bound_curves compute_bound_curves(const symbol& phi, int n_max, const bound_options& options = {});

void write_bounds_csv(std::ostream& out, const bound_curves& curves);

}  // namespace hardy
