#include "hardy/modulus.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hardy/errors.hpp"
#include "hardy/numerics.hpp"

namespace hardy {

modulus_of_continuity::modulus_of_continuity(std::string name, double domain_bound, function omega,
                                             function log_inverse)
    : name_(std::move(name)), A_(domain_bound), omega_(std::move(omega)),
      log_inverse_(std::move(log_inverse)) {
    if (!(A_ > 0.0) || !omega_) {
        throw argument_error("modulus " + name_ + ": needs A > 0 and an evaluator");
    }
    if (omega_(0.0) != 0.0) {
        throw argument_error("modulus " + name_ + ": omega(0) must vanish");
    }
    constexpr int grid = 1024;
    std::vector<double> values(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        values[i] = omega_(A_ * i / grid);
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw argument_error("modulus " + name_ + ": not strictly increasing");
        }
    }
    for (int i = 0; i + 2 <= grid; ++i) {
        if (values[i + 1] < 0.5 * (values[i] + values[i + 2]) - 1e-12) {
            throw argument_error("modulus " + name_ + ": not concave");
        }
    }
    for (int stride = 4; stride <= grid / 2; stride *= 4) {
        for (int i = 0; i + 2 * stride <= grid; i += stride) {
            if (values[i + stride] < 0.5 * (values[i] + values[i + 2 * stride]) - 1e-12) {
                throw argument_error("modulus " + name_ + ": not concave");
            }
        }
    }
    range_bound_ = values[grid];
    growth_ = true;
    double previous = 0.0;
    for (int k = 10; k <= 40; ++k) {
        const double h = std::ldexp(1.0, -k);
        if (h > A_) {
            continue;
        }
        const double ratio = omega_(h) / h;
        if (previous != 0.0 && !(ratio > previous)) {
            growth_ = false;
        }
        previous = ratio;
    }
}

modulus_of_continuity modulus_of_continuity::power(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw argument_error("power modulus requires 0 < alpha <= 1");
    }
    return modulus_of_continuity(
        "h^" + std::to_string(alpha), pi, [alpha](double h) { return std::pow(h, alpha); },
        [alpha](double x) { return std::log(x) / alpha; });
}

modulus_of_continuity modulus_of_continuity::h_log() {
    return modulus_of_continuity("h*log(1/h)", std::exp(-1.0), [](double h) {
        return h == 0.0 ? 0.0 : -h * std::log(h);
    });
}

modulus_of_continuity modulus_of_continuity::inverse_log(double alpha) {
    if (!(alpha > 0.0)) {
        throw argument_error("inverse_log modulus requires alpha > 0");
    }
    return modulus_of_continuity(
        "log(1/h)^-" + std::to_string(alpha), std::exp(-(alpha + 1.0)),
        [alpha](double h) { return h == 0.0 ? 0.0 : std::pow(-std::log(h), -alpha); },
        [alpha](double x) { return -std::pow(x, -1.0 / alpha); });
}

double modulus_of_continuity::operator()(double h) const {
    if (!(h >= 0.0 && h <= A_ * (1.0 + 1e-15))) {
        throw range_error("modulus " + name_ + ": argument outside [0, A]");
    }
    return omega_(std::min(h, A_));
}

double modulus_of_continuity::log_inverse(double x, bool force_bisection) const {
    if (!(x > 0.0 && x <= range_bound_ * (1.0 + 1e-14))) {
        throw range_error("omega_inverse: " + std::to_string(x) + " outside (0, omega(A)] for " +
                          name_);
    }
    if (log_inverse_ && !force_bisection) {
        return std::min(log_inverse_(x), std::log(A_));
    }
    // Bisection on s = log h; omega(e^s) is increasing in s.
    double hi = std::log(A_);
    double lo = std::log(std::numeric_limits<double>::min());
    if (omega_(std::exp(lo)) > x) {
        throw range_error("omega_inverse: preimage of " + std::to_string(x) +
                          " below the representable range");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double value = omega_(std::exp(mid));
        if (std::abs(value - x) <= 1e-15 * x || mid == lo || mid == hi) {
            return mid;
        }
        if (value < x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double omega_inverse(const modulus_of_continuity& omega, double x) {
    return std::exp(omega.log_inverse(x));
}

double log_r_omega(const modulus_of_continuity& omega, double x) {
    return omega.log_inverse(x) - std::log(x);
}

double r_omega(const modulus_of_continuity& omega, double x) {
    return std::exp(log_r_omega(omega, x));
}

int schedule_multiplicity(const modulus_of_continuity& omega, double kappa, double sigma_sched,
                          int N) {
    if (!(kappa > 0.0) || !(sigma_sched > 0.0) || N < 1) {
        throw argument_error("schedule requires kappa > 0, sigma_sched > 0 and N >= 1");
    }
    const double x = kappa * std::ldexp(1.0, -N);
    const double d = std::floor(sigma_sched * -log_r_omega(omega, x)) + 1.0;
    if (!(d < std::numeric_limits<int>::max())) {
        throw range_error("schedule: d_" + std::to_string(N) + " exceeds the integer range");
    }
    return static_cast<int>(d);
}

schedule_result schedule(const modulus_of_continuity& omega, double kappa, double sigma_sched,
                         int p, int q) {
    if (p < 1 || q < 1) {
        throw argument_error("schedule requires p >= 1 and q >= 1");
    }
    schedule_result result{1, schedule_multiplicity(omega, kappa, sigma_sched, 1), q, p};
    for (int N = 1; N <= 1000; ++N) {
        const double x = kappa * std::ldexp(1.0, -N);
        const double d = std::floor(sigma_sched * -log_r_omega(omega, x)) + 1.0;
        if (static_cast<double>(p) * N * d < q) {
            result.N = N;
            result.d_N = static_cast<int>(d);
        } else {
            break;
        }
    }
    return result;
}

double log_surprise_bound(const modulus_of_continuity& omega, double kappa, double K, int N_q) {
    const double x = kappa * std::ldexp(1.0, -N_q);
    return std::log(K) + 0.5 * log_r_omega(omega, x);
}

double surprise_bound(const modulus_of_continuity& omega, double kappa, double K, int N_q) {
    return std::exp(log_surprise_bound(omega, kappa, K, N_q));
}

std::vector<double> default_sigma_grid(int n) {
    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) {
        grid.push_back(1.0 - std::ldexp(1.0, -k));
    }
    if (n >= 2) {
        grid.push_back(1.0 - 1.0 / std::sqrt(static_cast<double>(n)));
        grid.push_back(std::exp(-std::log(static_cast<double>(n)) / (2.0 * n)));
    }
    return grid;
}

double log_lastmin_bound_value(const modulus_of_continuity& omega, double a, int n, double c,
                               const std::vector<double>& sigma_grid) {
    if (sigma_grid.empty()) {
        throw argument_error("lastmin_bound_value: empty sigma grid");
    }
    if (!(a > 0.0 && a <= 2.0) || n < 1 || !(c > 0.0)) {
        throw argument_error("lastmin_bound_value: needs a in (0,2], n >= 1, c > 0");
    }
    double best = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (double sigma : sigma_grid) {
        if (!(sigma > 0.0 && sigma < 1.0)) {
            throw argument_error("lastmin_bound_value: sigma must lie in (0,1)");
        }
        const double x = a * std::pow(sigma, n);
        if (!(x > 0.0) || x > omega.range_bound()) {
            continue;
        }
        any = true;
        best = std::max(best, 0.5 * log_r_omega(omega, x) - 20.0 / (1.0 - sigma));
    }
    if (!any) {
        throw range_error("lastmin_bound_value: no grid point with a sigma^n in range");
    }
    return std::log(c) + best;
}

double lastmin_bound_value(const modulus_of_continuity& omega, double a, int n, double c,
                           const std::vector<double>& sigma_grid) {
    return std::exp(log_lastmin_bound_value(omega, a, n, c, sigma_grid));
}

}  // namespace hardy
