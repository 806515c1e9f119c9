#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hardy/bounds.hpp"
#include "hardy/errors.hpp"
#include "hardy/hardy_operator.hpp"

using namespace hardy;

namespace {

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

// Oracle for a single point: ||K_{phi(u)}|| / ||K_u||.
double one_point_ratio(complex u, complex v) {
    return std::sqrt((1.0 - std::norm(u)) / (1.0 - std::norm(v)));
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("schedule layout") {
    const symbol_ptr cusp = make_cusp();
    const blaschke_schedule s = blaschke_schedule::for_symbol(*cusp, 4, 3);
    CHECK(s.total_count() == 1);
    CHECK(s.degree() == 12);
    CHECK(s.product().zeros().size() == 4);
    const symbol_ptr polygon = make_polygon(4);
    CHECK(blaschke_schedule::for_symbol(*polygon, 2, 5).degree() == 4 * 2 * 5);
    CHECK_THROWS_AS(blaschke_schedule::for_symbol(*make_constant(0.5), 2, 1), argument_error);
}

TEST_CASE("Blaschke statistic for the identity stays near 1/pi") {
    const symbol_ptr id = make_identity();
    blaschke_schedule schedule;
    schedule.points = {1.0};
    schedule.counts = {1};
    const blaschke_statistic stat = blaschke_upper_statistic(*id, schedule, 8);
    REQUIRE(stat.levels.size() >= 8);
    for (const blaschke_level& level : stat.levels) {
        if (level.xi == 0.0) {
            CHECK(level.value >= 0.9 / pi);
            CHECK(level.value <= 1.1 / pi);
        }
    }
    CHECK(stat.statistic >= std::sqrt(0.9 / pi));
}

TEST_CASE("Blaschke statistic without zeros is the pullback measure") {
    const symbol_ptr cusp = make_cusp();
    const blaschke_statistic stat =
        blaschke_upper_statistic(*cusp, blaschke_schedule::for_symbol(*cusp, 3, 0), 6);
    for (const blaschke_level& level : stat.levels) {
        const double expected =
            window_pullback_measure(*cusp, boundary_angle(level.xi), level.h) / level.h;
        CHECK(level.value == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("Blaschke statistic below the surprise bound") {
    const symbol_ptr cusp = make_cusp();
    const modulus_of_continuity& omega = *cusp->modulus();
    const regularity_report reg = regularity_check(*cusp, omega, cusp->window_radii().front());
    for (int N = 2; N <= 8; ++N) {
        const int d = claim_multiplicity(omega, reg, N);
        const double stat =
            blaschke_upper_statistic(*cusp, blaschke_schedule::for_symbol(*cusp, N, d), 8)
                .statistic;
        const double x = std::ldexp(1.0, -N);
        CHECK(stat <= std::sqrt(omega_inverse(omega, x) / x));
    }
}

TEST_CASE("claim examples") {
    const symbol_ptr cusp = make_cusp();
    const modulus_of_continuity& omega = *cusp->modulus();
    const regularity_report reg = regularity_check(*cusp, omega, cusp->window_radii().front());
    REQUIRE(reg.holds);

    const claim_result trivial =
        claim_check(*cusp, blaschke_schedule::for_symbol(*cusp, 5, 0), omega, reg);
    CHECK(trivial.bound == 1.0);
    CHECK(trivial.holds);

    const claim_result r = claim_check(*cusp, blaschke_schedule::for_symbol(*cusp, 5, 3), omega,
                                       reg, 1 << 15);
    CHECK(r.holds);
    CHECK(r.M == doctest::Approx(2.0 * reg.C + 1.0));
    CHECK(r.chi == doctest::Approx(r.M / std::sqrt(r.M * r.M + 1.0)));
    CHECK(r.bound == doctest::Approx(std::pow(r.chi, 3)));

    const symbol_ptr lens = make_lens(0.5);
    const regularity_report lens_reg =
        regularity_check(*lens, *lens->modulus(), lens->window_radii().front());
    REQUIRE(lens_reg.holds);
    CHECK(claim_check(*lens, blaschke_schedule::for_symbol(*lens, 6, 4), *lens->modulus(),
                      lens_reg, 1 << 15)
              .holds);

    regularity_report failed = reg;
    failed.holds = false;
    CHECK_THROWS_AS(claim_check(*cusp, blaschke_schedule::for_symbol(*cusp, 5, 3), omega, failed),
                    argument_error);
}

TEST_CASE("claim holds with the proof multiplicity") {
    for (const char* id : {"cusp", "lens:0.5"}) {
        CAPTURE(id);
        const symbol_ptr phi = parse_symbol(id);
        const modulus_of_continuity& omega = *phi->modulus();
        const regularity_report reg = regularity_check(*phi, omega, phi->window_radii().front());
        for (int N = 2; N <= 8; ++N) {
            CAPTURE(N);
            const int d = claim_multiplicity(omega, reg, N);
            CHECK(d >= 1);
            CHECK(claim_check(*phi, blaschke_schedule::for_symbol(*phi, N, d), omega, reg).holds);
        }
    }
}

TEST_CASE("kernel lower bound closed forms") {
    const symbol_ptr id = make_identity();
    const std::vector<disk_point> points = {0.1, complex(0.2, 0.5), -0.7,
                                            disk_point::anchored(1.0, 1e-9)};
    CHECK(kernel_lower_bound(*id, points) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(model_space_lower_bound(*id, std::span(points).first(3)) ==
          doctest::Approx(1.0).epsilon(1e-9));

    for (double r : {0.3, 0.6, 0.9}) {
        const symbol_ptr rz = make_dilation(r);
        for (double u : {0.0, 0.5, 0.9, 0.999}) {
            const std::vector<disk_point> one = {u};
            CHECK(std::abs(kernel_lower_bound(*rz, one) - one_point_ratio(u, r * u)) <= 1e-12);
        }
    }

    const std::vector<disk_point> two = {0.2, 0.6};
    CHECK(kernel_lower_bound(*make_constant(0.3), two) == 0.0);

    const std::vector<disk_point> close = {0.5, std::nextafter(0.5, 1.0)};
    CHECK_THROWS_AS(kernel_lower_bound(*make_dilation(0.5), close), conditioning_error);
}

TEST_CASE("kernel lower bound stays below the norm bound") {
    for (const char* id : {"cusp", "lens:0.5", "polygon:4", "shapiro-taylor:3", "rz:0.6",
                           "const:0.3", "id"}) {
        CAPTURE(id);
        const symbol_ptr phi = parse_symbol(id);
        for (int n = 1; n <= 8; ++n) {
            const kernel_candidate k = best_kernel_lower_bound(*phi, n);
            CHECK(k.value >= 0.0);
            CHECK(k.value <= norm_bound(*phi) + 1e-12);
        }
    }
    CHECK(best_kernel_lower_bound(*make_identity(), 6).value == doctest::Approx(1.0));
}

TEST_CASE("lastmin chains") {
    const radial_chain id_chain = lastmin_points(*make_identity(), 0.5, 10);
    for (int j = 1; j <= 10; ++j) {
        CHECK(id_chain.u[j].value().real() == doctest::Approx(1.0 - std::ldexp(1.0, -j)));
        CHECK(id_chain.v[j].value().real() == doctest::Approx(1.0 - std::ldexp(1.0, -j)));
    }

    const symbol_ptr cusp = make_cusp();
    const radial_chain chain = lastmin_points(*cusp, 0.5, 8);
    CHECK(chain.max_ratio_error <= 1e-10);
    CHECK(chain.end_error <= 1e-8);
    const double a = 1.0 - (*cusp)(0.0).real();
    CHECK(chain.a == doctest::Approx(a));
    CHECK(chain.v[8].one_minus_abs() == doctest::Approx(a * std::ldexp(1.0, -8)).epsilon(1e-8));
    for (int j = 1; j <= 8; ++j) {
        CHECK(chain.u[j].one_minus_abs() < chain.u[j - 1].one_minus_abs());
    }

    CHECK_THROWS_AS(lastmin_points(*cusp, 1.5, 4), argument_error);
    CHECK_THROWS_AS(lastmin_points(*make_polynomial({0.5, 0.0, -0.5}), 0.5, 4), argument_error);
}

TEST_CASE("lastmin lower bound for the identity") {
    const lastmin_result r = lastmin_lower_bound(*make_identity(), 0.5, 2, 1.0);
    CHECK(r.delta_v == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(r.mu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.bound == doctest::Approx(0.0256).epsilon(1e-12));
    for (int n : {3, 7, 12}) {
        CHECK(lastmin_lower_bound(*make_identity(), 0.3, n).mu == doctest::Approx(1.0));
    }
}

TEST_CASE("cusp lastmin bound decays like exp(-c n / log n)") {
    const symbol_ptr cusp = make_cusp();
    std::vector<double> x, y;
    for (int n = 4; n <= 40; ++n) {
        double best = -std::numeric_limits<double>::infinity();
        for (double sigma : default_sigma_grid(n)) {
            try {
                best = std::max(best, lastmin_lower_bound(*cusp, sigma, n).log_bound);
            } catch (const numeric_error&) {
            }
        }
        REQUIRE(std::isfinite(best));
        x.push_back(n / std::log(static_cast<double>(n)));
        y.push_back(best);
    }
    CHECK(r_squared(x, y) > 0.98);
}

TEST_CASE("Newman product") {
    CHECK_THROWS_AS(newman_product(1.0), argument_error);
    for (int k = 0; k <= 22; ++k) {
        const double sigma = 0.06 + 0.04 * k;
        CAPTURE(sigma);
        long double oracle = 1.0L;
        for (int l = 1; l <= 5000; ++l) {
            const long double s = std::pow(static_cast<long double>(sigma), l);
            oracle *= ((1.0L - s) / (1.0L + s)) * ((1.0L - s) / (1.0L + s));
        }
        CHECK(newman_product(sigma) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));
        CHECK(newman_product(sigma) >= std::exp(-5.0 / (1.0 - sigma)));
        CHECK(newman_floor(sigma) == doctest::Approx(std::exp(-5.0 / (1.0 - sigma))));
    }
}

TEST_CASE("bounds CSV") {
    bound_curves curves;
    curves.n = {1, 2};
    curves.lower_kernel = {1.0, 0.5};
    curves.lower_lastmin = {0.25, std::nan("")};
    curves.upper_blaschke_proxy = {std::nan(""), 0.125};
    std::ostringstream csv;
    write_bounds_csv(csv, curves);
    CHECK(csv.str() ==
          "n,lower_kernel,lower_lastmin,upper_blaschke_proxy\n1,1,0.25,nan\n2,0.5,nan,0.125\n");
}

}
