#include <random>

#include "doctest.h"
#include "hardy/disk_geometry.hpp"
#include "hardy/errors.hpp"
#include "hardy/symbols.hpp"

using namespace hardy;

namespace {

// Direct Moebius quotient, independent of the anchored representation.
double rho_oracle(complex z, complex w) { return std::abs((z - w) / (1.0 - std::conj(z) * w)); }

}  // namespace

TEST_SUITE("disk_geometry") {

TEST_CASE("pseudo-hyperbolic distance") {
    CHECK(pseudo_hyperbolic(0.0, complex(0.3, -0.4)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pseudo_hyperbolic(complex(0.2, 0.1), complex(0.2, 0.1)) == 0.0);
    CHECK(pseudo_hyperbolic(0.5, -0.5) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(pseudo_hyperbolic(1.0, 0.0), domain_error);
    CHECK_THROWS_AS(pseudo_hyperbolic(complex(0.0, 2.0), 0.0), domain_error);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int k = 0; k < 100; ++k) {
        const complex z(u(rng), u(rng));
        const complex w(u(rng), u(rng));
        CHECK(pseudo_hyperbolic(z, w) == doctest::Approx(rho_oracle(z, w)).epsilon(1e-12));
        CHECK(pseudo_hyperbolic(z, w) == doctest::Approx(pseudo_hyperbolic(w, z)).epsilon(1e-14));
    }
}

TEST_CASE("anchored points resolve gaps below double spacing") {
    const disk_point z = disk_point::anchored(complex(0.0, 1.0), complex(1e-30, 0.0));
    CHECK(z.one_minus_abs() == doctest::Approx(1e-30).epsilon(1e-12));
    const disk_point w = disk_point::anchored(complex(0.0, 1.0), complex(2e-30, 0.0));
    // rho = (1e-30) / (1 - (1 - 1e-30)(1 - 2e-30)) = 1 / 3 to leading order.
    CHECK(pseudo_hyperbolic(z, w) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("Blaschke product evaluation") {
    const blaschke_product z_factor({{disk_point(0.0), 1}});
    CHECK(std::abs(blaschke_eval(z_factor, 0.3) - complex(0.3)) < 1e-16);
    const blaschke_product double_zero({{disk_point(0.5), 2}});
    CHECK(std::abs(blaschke_eval(double_zero, 0.5)) == 0.0);
    CHECK(double_zero.degree() == 2);
    const blaschke_product one({{disk_point(0.5), 1}});
    for (int k = 0; k < 1024; ++k) {
        const double t = 2.0 * pi * k / 1024;
        CHECK(std::abs(std::abs(blaschke_eval(one, unit_point(t))) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(blaschke_eval(one, complex(1.5, 0.0)), domain_error);
    const blaschke_product empty;
    CHECK(empty.degree() == 0);
    CHECK(blaschke_eval(empty, complex(0.2, 0.3)) == complex(1.0, 0.0));
}

TEST_CASE("Blaschke maximum principle and log modulus") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::pair<disk_point, int>> zeros;
        for (int j = 0; j < 4; ++j) {
            zeros.emplace_back(disk_point(complex(u(rng), u(rng))), 1 + j % 2);
        }
        const blaschke_product b(zeros);
        double boundary_max = 0.0;
        for (int k = 0; k < 256; ++k) {
            boundary_max = std::max(boundary_max, std::abs(b(unit_point(2.0 * pi * k / 256))));
        }
        double interior_max = 0.0;
        for (int a = 0; a < 8; ++a) {
            for (int r = 0; r < 8; ++r) {
                const complex z = std::polar(0.1 + 0.11 * r, 2.0 * pi * a / 8);
                interior_max = std::max(interior_max, std::abs(b(z)));
                CHECK(b.log_abs(disk_point(z)) ==
                      doctest::Approx(std::log(std::abs(b(z)))).epsilon(1e-10));
            }
        }
        CHECK(interior_max <= boundary_max + 1e-10);
    }
    // High multiplicity: log|B| stays finite where |B| underflows.
    const blaschke_product high({{disk_point(0.9), 5000}});
    CHECK(high.log_abs(disk_point(0.0)) == doctest::Approx(5000.0 * std::log(0.9)));
}

TEST_CASE("Carleson constant") {
    const std::vector<disk_point> single{disk_point(0.3)};
    CHECK(carleson_delta(single) == 1.0);
    const std::vector<disk_point> two{disk_point(0.0), disk_point(0.5)};
    CHECK(carleson_delta(two) == doctest::Approx(0.5).epsilon(1e-15));
    const std::vector<disk_point> three{disk_point(0.0), disk_point(0.5), disk_point(-0.5)};
    CHECK(carleson_delta(three) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(log_carleson_delta(three) == doctest::Approx(std::log(0.25)).epsilon(1e-14));
    const std::vector<disk_point> dup{disk_point(0.2), disk_point(0.2)};
    CHECK_THROWS_AS(carleson_delta(dup), degenerate_input_error);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<disk_point> points;
        for (int j = 0; j < 5; ++j) {
            points.emplace_back(complex(u(rng), u(rng)));
        }
        const double before = carleson_delta(points);
        points.emplace_back(complex(u(rng), u(rng)));
        CHECK(carleson_delta(points) <= before + 1e-15);
    }
}

TEST_CASE("Mobius distance bound on random triples") {
    const mobius_check m1 = mobius_bound_check(0.0, 0.0, 1.0);
    CHECK(m1.bound == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(m1.applicable);
    CHECK(m1.quotient == 0.0);
    CHECK(m1.holds);

    const mobius_check m2 = mobius_bound_check(0.9, 0.8, 1.0);
    CHECK(m2.applicable);
    CHECK(m2.quotient == doctest::Approx(0.1 / 0.28).epsilon(1e-12));
    CHECK(m2.holds);

    CHECK_FALSE(mobius_bound_check(0.9, 0.0, 1.0).applicable);
    CHECK_THROWS_AS(mobius_bound_check(1.0, 0.0, 1.0), domain_error);
    CHECK_THROWS_AS(mobius_bound_check(0.1, 0.0, 0.0), argument_error);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int applicable = 0;
    while (applicable < 10000) {
        const double gap = std::exp(-20.0 * unit(rng));
        const disk_point w0 = disk_point::anchored(unit_point(2.0 * pi * unit(rng)), gap);
        const double M = 0.1 + 9.9 * unit(rng);
        const complex w = w0.value() + std::polar(M * gap * unit(rng), 2.0 * pi * unit(rng));
        if (std::abs(w) >= 1.0) {
            continue;
        }
        const mobius_check m = mobius_bound_check(disk_point(w), w0, M);
        if (m.applicable) {
            ++applicable;
            REQUIRE(m.holds);
        }
    }
}

TEST_CASE("window membership") {
    const carleson_window w1(boundary_angle(0.7), 1e-3);
    CHECK(window_pullback_indicator(unit_point(0.7), w1));
    CHECK(window_pullback_indicator(complex(-1.0, 0.0), carleson_window(boundary_angle(0.0), 2.0)));
    CHECK_FALSE(window_pullback_indicator(complex(0.0, 1.0), carleson_window(boundary_angle(0.0), 1.0)));
}

TEST_CASE("Schwarz-Pick contraction for gallery symbols") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const char* id : {"cusp", "lens:0.5", "polygon:4", "shapiro-taylor:3", "spread:cusp:0:4",
                           "rz:0.7", "id", "const:0.5"}) {
        const symbol_ptr phi = parse_symbol(id);
        for (int k = 0; k < 200; ++k) {
            const complex z = std::polar(std::sqrt(unit(rng)) * 0.999, 2.0 * pi * unit(rng));
            const complex w = std::polar(std::sqrt(unit(rng)) * 0.999, 2.0 * pi * unit(rng));
            const double before = pseudo_hyperbolic(z, w);
            const double after = pseudo_hyperbolic((*phi)(z), (*phi)(w));
            CHECK_MESSAGE(after <= before + 1e-12, id);
        }
    }
}

}
