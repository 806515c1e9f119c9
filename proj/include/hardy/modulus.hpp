#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hardy {

// A concave increasing function vanishing at zero on [0, A].
class modulus_of_continuity {
public:
    using function = std::function<double(double)>;

    // log_inverse, when given, maps x to log(omega^{-1}(x)) in closed form.
    modulus_of_continuity(std::string name, double domain_bound, function omega,
                          function log_inverse = {});

    // h^alpha on [0, pi], 0 < alpha <= 1.
    static modulus_of_continuity power(double alpha);
    // h log(1/h) on [0, 1/e].
    static modulus_of_continuity h_log();
    // (log 1/h)^{-alpha} on [0, e^{-(alpha+1)}].
    static modulus_of_continuity inverse_log(double alpha);

    double operator()(double h) const;
    const std::string& name() const { return name_; }
    double domain_bound() const { return A_; }
    double range_bound() const { return range_bound_; }
    bool has_closed_inverse() const { return static_cast<bool>(log_inverse_); }
    // omega(h)/h increasing along h = 2^{-k}, k = 10..40.
    bool satisfies_growth_assumption() const { return growth_; }

    // log(omega^{-1}(x)); bisection unless a closed form exists or force_bisection is set.
    double log_inverse(double x, bool force_bisection = false) const;

private:
    std::string name_;
    double A_;
    function omega_;
    function log_inverse_;
    double range_bound_ = 0.0;
    bool growth_ = false;
};

double omega_inverse(const modulus_of_continuity& omega, double x);
double r_omega(const modulus_of_continuity& omega, double x);
double log_r_omega(const modulus_of_continuity& omega, double x);

struct schedule_result {
    int N = 1;
    int d_N = 1;
    int q = 1;
    int p = 1;
};

// d_N = floor(sigma_sched log(kappa 2^{-N} / omega^{-1}(kappa 2^{-N}))) + 1.
int schedule_multiplicity(const modulus_of_continuity& omega, double kappa, double sigma_sched,
                          int N);
// N_q = largest N with p N d_N < q, or 1 if none exists.
schedule_result schedule(const modulus_of_continuity& omega, double kappa, double sigma_sched,
                         int p, int q);

double surprise_bound(const modulus_of_continuity& omega, double kappa, double K, int N_q);
double log_surprise_bound(const modulus_of_continuity& omega, double kappa, double K, int N_q);

// sigma = 1 - 2^{-k} for k = 1..20, 1 - 1/sqrt(n) and exp(-log n / 2n).
std::vector<double> default_sigma_grid(int n);

// c max_sigma sqrt(r_omega(a sigma^n)) exp(-20/(1-sigma)); grid entries with a sigma^n outside
// the range of omega are skipped.
double lastmin_bound_value(const modulus_of_continuity& omega, double a, int n, double c,
                           const std::vector<double>& sigma_grid);
double log_lastmin_bound_value(const modulus_of_continuity& omega, double a, int n, double c,
                               const std::vector<double>& sigma_grid);

}  // namespace hardy
