#include <random>

#include "doctest.h"
#include "hardy/errors.hpp"
#include "hardy/modulus.hpp"

using namespace hardy;

namespace {

// Least-squares R^2 of y against x.
double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double cov = sxy - sx * sy / n;
    return cov * cov / ((sxx - sx * sx / n) * (syy - sy * sy / n));
}

}  // namespace

TEST_SUITE("modulus") {

TEST_CASE("construction checks") {
    CHECK_THROWS_AS(modulus_of_continuity("bad", 1.0, [](double h) { return h + 1.0; }),
                    argument_error);
    CHECK_THROWS_AS(modulus_of_continuity("square", 1.0, [](double h) { return h * h; }),
                    argument_error);
    CHECK_THROWS_AS(modulus_of_continuity("flat", 1.0, [](double) { return 0.0; }),
                    argument_error);
    CHECK(modulus_of_continuity::power(0.5).satisfies_growth_assumption());
    CHECK(modulus_of_continuity::h_log().satisfies_growth_assumption());
    CHECK(modulus_of_continuity::inverse_log(1.0).satisfies_growth_assumption());
    CHECK_FALSE(modulus_of_continuity::power(1.0).satisfies_growth_assumption());
}

TEST_CASE("inverse") {
    const auto sqrt_h = modulus_of_continuity::power(0.5);
    CHECK(omega_inverse(sqrt_h, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    const auto inv_log = modulus_of_continuity::inverse_log(1.0);
    for (double x : {0.05, 0.1, 0.2, 0.5}) {
        CHECK(omega_inverse(inv_log, x) == doctest::Approx(std::exp(-1.0 / x)).epsilon(1e-14));
    }
    const auto p07 = modulus_of_continuity::power(0.7);
    CHECK(std::exp(p07.log_inverse(0.3, true)) ==
          doctest::Approx(std::pow(0.3, 1.0 / 0.7)).epsilon(1e-12));
    const auto hl = modulus_of_continuity::h_log();
    for (double x : {1e-6, 1e-3, 0.1, 0.3}) {
        const double h = omega_inverse(hl, x);
        CHECK(std::abs(hl(h) - x) <= 1e-14 * x);
    }
    CHECK_THROWS_AS(omega_inverse(sqrt_h, 0.0), range_error);
    CHECK_THROWS_AS(omega_inverse(sqrt_h, 10.0), range_error);
    CHECK_THROWS_AS(omega_inverse(inv_log, 0.6), range_error);
}

TEST_CASE("r_omega") {
    const auto sqrt_h = modulus_of_continuity::power(0.5);
    CHECK(r_omega(sqrt_h, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
    const auto inv_log = modulus_of_continuity::inverse_log(1.0);
    CHECK(r_omega(inv_log, 0.25) == doctest::Approx(std::exp(-4.0) / 0.25).epsilon(1e-14));
    for (const auto& omega :
         {sqrt_h, inv_log, modulus_of_continuity::h_log(), modulus_of_continuity::power(0.3),
          modulus_of_continuity::inverse_log(2.0)}) {
        double previous = 0.0;
        for (int i = 1; i <= 256; ++i) {
            const double r = r_omega(omega, omega.range_bound() * i / 256);
            CHECK(r >= previous * (1.0 - 1e-12));
            previous = r;
        }
    }
}

TEST_CASE("schedule") {
    const auto sqrt_h = modulus_of_continuity::power(0.5);
    CHECK(schedule_multiplicity(sqrt_h, 1.0, 1.0, 4) == 3);
    CHECK(schedule_multiplicity(sqrt_h, 1.0, 1.0, 5) == 4);
    const schedule_result s = schedule(sqrt_h, 1.0, 1.0, 1, 20);
    CHECK(s.N == 4);
    CHECK(s.d_N == 3);
    CHECK(schedule(sqrt_h, 1.0, 1.0, 1, 1).N == 1);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<modulus_of_continuity> moduli{
        sqrt_h, modulus_of_continuity::power(0.8), modulus_of_continuity::h_log(),
        modulus_of_continuity::inverse_log(1.0)};
    for (int trial = 0; trial < 200; ++trial) {
        const auto& omega = moduli[trial % moduli.size()];
        const double kappa = 0.1 + 0.9 * unit(rng) * std::min(1.0, omega.range_bound());
        const double sigma = 0.2 + 2.0 * unit(rng);
        const int p = 1 + trial % 4;
        const int q = 2 + static_cast<int>(2000 * unit(rng));
        const schedule_result r = schedule(omega, kappa, sigma, p, q);
        CHECK(r.d_N >= 1);
        if (p * r.N * r.d_N < q) {
            const int next = schedule_multiplicity(omega, kappa, sigma, r.N + 1);
            CHECK(p * (r.N + 1) * next >= q);
        } else {
            CHECK(r.N == 1);
        }
    }
}

TEST_CASE("surprise bound") {
    const auto sqrt_h = modulus_of_continuity::power(0.5);
    CHECK(surprise_bound(sqrt_h, 1.0, 1.0, 4) == doctest::Approx(0.25).epsilon(1e-14));
    for (int N = 1; N < 20; ++N) {
        CHECK(surprise_bound(sqrt_h, 1.0, 1.0, N + 1) <= surprise_bound(sqrt_h, 1.0, 1.0, N));
    }
    const auto inv_log = modulus_of_continuity::inverse_log(1.0);
    for (int N = 2; N <= 8; ++N) {
        const double two_n = std::ldexp(1.0, N);
        CHECK(2.0 * log_surprise_bound(inv_log, 1.0, 1.0, N) ==
              doctest::Approx(-two_n + std::log(two_n)).epsilon(1e-12));
    }
}

TEST_CASE("surprise bound rates along the schedule") {
    struct rate_case {
        modulus_of_continuity omega;
        double (*regressor)(double);
    };
    const std::vector<rate_case> cases{
        {modulus_of_continuity::power(0.5), [](double q) { return std::sqrt(q); }},
        {modulus_of_continuity::inverse_log(1.0), [](double q) { return q / std::log(q); }}};
    for (const rate_case& c : cases) {
        // N_q is a step function of q; sample q where it steps, q_N = N d_N + 1.
        std::vector<double> x, y;
        for (int N = 1; N <= 200; ++N) {
            const double q_N = N * static_cast<double>(schedule_multiplicity(c.omega, 0.25, 1.0, N)) + 1.0;
            if (q_N > 4096) {
                break;
            }
            if (q_N < 16) {
                continue;
            }
            const int q = static_cast<int>(q_N);
            const schedule_result s = schedule(c.omega, 0.25, 1.0, 1, q);
            REQUIRE(s.N == N);
            x.push_back(c.regressor(q));
            y.push_back(log_surprise_bound(c.omega, 0.25, 1.0, s.N));
        }
        REQUIRE(x.size() >= 4);
        CHECK(r_squared(x, y) > 0.99);
    }
}

TEST_CASE("lastmin bound value") {
    const auto sqrt_h = modulus_of_continuity::power(0.5);
    CHECK(lastmin_bound_value(sqrt_h, 1.0, 4, 1.0, {0.5}) ==
          doctest::Approx(0.25 * std::exp(-40.0)).epsilon(1e-13));
    CHECK_THROWS_AS(lastmin_bound_value(sqrt_h, 1.0, 4, 1.0, {}), argument_error);
    const std::vector<double> coarse{0.5, 0.75};
    std::vector<double> fine = coarse;
    fine.push_back(0.9);
    fine.push_back(0.6);
    CHECK(lastmin_bound_value(sqrt_h, 1.0, 10, 1.0, fine) >=
          lastmin_bound_value(sqrt_h, 1.0, 10, 1.0, coarse));

    const auto inv_log = modulus_of_continuity::inverse_log(1.0);
    std::vector<double> x, y;
    for (int n = 10; n <= 200; n += 10) {
        const double sigma = std::exp(-std::log(n) / (2.0 * n));
        const double value = log_lastmin_bound_value(inv_log, 0.1, n, 1.0, {sigma});
        CHECK(value >= log_lastmin_bound_value(inv_log, 0.1, n, 1.0, {sigma}) - 1e-12);
        x.push_back(n / std::log(n));
        y.push_back(value);
    }
    CHECK(r_squared(x, y) > 0.98);
}

TEST_CASE("default sigma grid") {
    const std::vector<double> grid = default_sigma_grid(16);
    CHECK(grid.size() == 22);
    CHECK(grid.front() == 0.5);
    for (double s : grid) {
        CHECK(s > 0.0);
        CHECK(s < 1.0);
    }
}

}
