#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>

#include "hardy/analysis.hpp"
#include "hardy/bounds.hpp"
#include "hardy/experiment.hpp"
#include "hardy/hardy_operator.hpp"

using namespace hardy;

namespace {

struct outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* format, double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, x);
    return buffer;
}

outcome preset_outcome(const std::string& preset) {
    experiment_config cfg;
    cfg.preset = preset;
    cfg.out = std::filesystem::temp_directory_path() / ("hardylab-acceptance-" + preset);
    std::string name = cfg.out.filename().string();
    for (char& ch : name) {
        if (ch == ':') ch = '_';
    }
    cfg.out = cfg.out.parent_path() / name;
    std::filesystem::remove_all(cfg.out);
    const experiment_report report = run_preset(cfg);
    outcome o{report.passed(), ""};
    for (const preset_check& c : report.checks) {
        if (!c.passed) {
            o.detail += (o.detail.empty() ? "failed: " : "; ") + c.name + " " + c.detail;
        }
    }
    std::filesystem::remove_all(cfg.out);
    if (o.detail.empty()) {
        o.detail = std::to_string(report.checks.size()) + " preset checks";
    }
    return o;
}

outcome cusp_point_values() {
    const complex I(0.0, 1.0);
    const std::vector<std::pair<complex, complex>> phi = {
        {1.0, 1.0}, {-1.0, 0.0}, {I, complex(0.5, 0.5)}, {-I, complex(0.5, -0.5)}};
    const std::vector<std::pair<complex, complex>> phi0 = {
        {1.0, 0.0}, {-1.0, 1.0}, {I, -I}, {-I, I}};
    double worst = 0.0;
    for (const auto& [z, w] : phi) worst = std::max(worst, std::abs(cusp(z) - w));
    for (const auto& [z, w] : phi0) worst = std::max(worst, std::abs(cusp_phi0(z) - w));
    return {worst < 1e-10, "max error " + fmt("%.3g", worst)};
}

outcome local_behaviour() {
    double worst = 0.0;
    for (int k = 0; k <= 9; ++k) {
        const double r = 0.1 * k;
        worst = std::max(worst, std::abs(cusp_phi0(r).real() -
                                         std::tan((pi / 4.0 - std::atan(r)) / 2.0)));
    }
    worst = std::max(worst, std::abs(cusp_phi0(0.99).real() -
                                     std::tan((pi / 4.0 - std::atan(0.99)) / 2.0)));
    const double gap = 1e-6;
    const double one_minus_phi = 1.0 - cusp(1.0 - gap).real();
    const double ratio = one_minus_phi * std::log(1.0 / gap) * 2.0 / pi;
    return {worst < 1e-10 && ratio >= 0.95 && ratio <= 1.05,
            "phi0 error " + fmt("%.3g", worst) + ", (1-phi(r)) log(1/(1-r)) 2/pi = " +
                fmt("%.6f", ratio) + " at 1-r = 1e-6"};
}

outcome galerkin_sanity() {
    const singular_value_spectrum rz = singular_values(build_matrix(*make_dilation(0.7), 64));
    double worst = 0.0;
    for (int n = 1; n <= rz.reliable_count; ++n) {
        worst = std::max(worst, std::abs(rz.values[n - 1] - std::pow(0.7, n - 1)));
    }
    const singular_value_spectrum c = singular_values(build_matrix(*make_constant(0.5), 64));
    const double s1_error = std::abs(c.values[0] - 2.0 / std::sqrt(3.0));
    return {worst <= 1e-12 && s1_error <= 1e-6 && c.values[1] < 1e-12,
            "rz error " + fmt("%.3g", worst) + " over " + std::to_string(rz.reliable_count) +
                " reliable values, const s_1 error " + fmt("%.3g", s1_error) + ", s_2 " +
                fmt("%.3g", c.values[1])};
}

outcome lens_rate() {
    const singular_value_spectrum s = approx_numbers(*make_lens(0.5), 60);
    const model_ranking r = model_select(series::from(s), {10, 60});
    const double sq = r.get(decay_model::sqrt_n).residual;
    const double lin = r.get(decay_model::linear_n).residual;
    const double nl = r.get(decay_model::n_over_log).residual;
    const double r2 = r.get(decay_model::sqrt_n).r2;
    return {r.best().model == decay_model::sqrt_n && 2.0 * sq <= lin && 2.0 * sq <= nl && r2 > 0.99,
            std::string("first ") + model_name(r.best().model) + ", residuals sqrt " +
                fmt("%.4g", sq) + " linear " + fmt("%.4g", lin) + " nlog " + fmt("%.4g", nl) +
                ", R^2 " + fmt("%.6f", r2)};
}

outcome polygon_rate() {
    const symbol_ptr phi = make_polygon(4);
    const singular_value_spectrum s = approx_numbers(*phi, 50);
    const model_ranking r = model_select(series::from(s), {10, 50});
    bool exponents = true;
    std::string detail = std::string("first ") + model_name(r.best().model) + ", exponents";
    for (const contact& c : phi->contacts()) {
        const double beta = holder_exponent(*phi, boundary_angle(c.angle), holder_model::power);
        exponents = exponents && std::abs(beta - 0.5) <= 0.05;
        detail += " " + fmt("%.4f", beta);
    }
    return {r.best().model == decay_model::sqrt_n && exponents, detail};
}

outcome claim_and_lemma() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int triples = 0;
    int violations = 0;
    while (triples < 10000) {
        const disk_point w0 = disk_point::anchored(unit_point(2.0 * pi * unit(rng) - pi),
                                                   complex(std::exp(-20.0 * unit(rng)), 0.0));
        const double M = 0.1 + 9.9 * unit(rng);
        const complex w = w0.value() + std::polar(M * w0.one_minus_abs() * unit(rng),
                                                  2.0 * pi * unit(rng));
        if (std::abs(w) >= 1.0) continue;
        const mobius_check check = mobius_bound_check(disk_point(w), w0, M);
        if (!check.applicable) continue;
        ++triples;
        violations += check.holds ? 0 : 1;
    }
    bool claims = true;
    for (const char* id : {"cusp", "lens:0.5"}) {
        const symbol_ptr phi = parse_symbol(id);
        const modulus_of_continuity& omega = *phi->modulus();
        const regularity_report reg = regularity_check(*phi, omega, phi->window_radii().front());
        for (int N = 2; N <= 8; ++N) {
            const int d = claim_multiplicity(omega, reg, N);
            claims = claims &&
                     claim_check(*phi, blaschke_schedule::for_symbol(*phi, N, d), omega, reg).holds;
        }
    }
    return {claims && violations == 0,
            std::string("claims ") + (claims ? "hold" : "fail") + ", " + std::to_string(triples) +
                " triples with " + std::to_string(violations) + " violations"};
}

outcome kernel_consistency() {
    bool below_norm = true;
    for (const char* id : {"cusp", "lens:0.5", "polygon:4", "shapiro-taylor:3",
                           "spread:cusp:0:4", "rz:0.6", "const:0.3", "id"}) {
        const symbol_ptr phi = parse_symbol(id);
        const complex zeta = phi->contacts().empty() ? complex(1.0) : phi->contacts()[0].prevertex;
        for (int n = 1; n <= 8; ++n) {
            std::vector<disk_point> radial;
            std::vector<disk_point> spread;
            for (int j = 1; j <= n; ++j) {
                radial.push_back(disk_point::anchored(zeta, std::ldexp(1.0, -2 * j)));
                spread.push_back(std::polar(0.5, 2.0 * pi * j / n));
            }
            below_norm = below_norm && kernel_lower_bound(*phi, radial) <= norm_bound(*phi) &&
                         kernel_lower_bound(*phi, spread) <= norm_bound(*phi);
        }
    }
    const symbol_ptr id = make_identity();
    bool identity = true;
    const std::vector<std::vector<disk_point>> families = {
        {0.3}, {0.1, -0.4, complex(0.2, 0.6)}, {0.5, 0.75, 0.875, 0.9375}};
    for (const auto& points : families) {
        identity = identity && kernel_lower_bound(*id, points) == 1.0;
    }
    double worst = 0.0;
    for (double r : {0.2, 0.6, 0.9}) {
        for (double u : {0.0, 0.4, 0.8, 0.99}) {
            const std::vector<disk_point> one = {u};
            const double exact = std::sqrt((1.0 - u * u) / (1.0 - r * r * u * u));
            worst = std::max(worst, std::abs(kernel_lower_bound(*make_dilation(r), one) - exact));
        }
    }
    return {below_norm && identity && worst <= 1e-12,
            std::string("norm bound ") + (below_norm ? "respected" : "exceeded") + ", identity " +
                (identity ? "exact" : "inexact") + ", rz error " + fmt("%.3g", worst)};
}

outcome newman() {
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 9; ++k) {
        const double sigma = 0.1 * k;
        margin = std::min(margin, newman_product(sigma) / std::exp(-5.0 / (1.0 - sigma)));
    }
    return {margin >= 1.0, "min product / floor " + fmt("%.4g", margin)};
}

outcome carleson() {
    const symbol_ptr id = make_identity();
    const symbol_ptr cusp_map = make_cusp();
    bool identity = true;
    bool decreasing = true;
    double previous = std::numeric_limits<double>::infinity();
    std::string ratios;
    for (int k = 3; k <= 8; ++k) {
        const double h = std::ldexp(1.0, -k);
        const double r = carleson_function(*id, h) / h;
        identity = identity && r >= 1.0 / 1.1 && r <= 1.1;
        const double c = carleson_function(*cusp_map, h) / h;
        decreasing = decreasing && c < previous;
        previous = c;
        ratios += (ratios.empty() ? "" : " ") + fmt("%.3g", c);
    }
    return {identity && decreasing, std::string("identity within 1.1: ") +
                                        (identity ? "yes" : "no") + ", cusp ratios " + ratios};
}

struct criterion {
    int number;
    std::string name;
    double budget_seconds;
    std::function<outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<criterion> criteria = {
        {1, "cusp point values", 1.0, cusp_point_values},
        {2, "local behaviour of the cusp map", 1.0, local_behaviour},
        {3, "Galerkin sanity", 5.0, galerkin_sanity},
        {4, "lens rate", 120.0, lens_rate},
        {5, "cusp rate", 300.0, [] { return preset_outcome("cusp-rates"); }},
        {6, "polygon rate and vertex exponents", 300.0, polygon_rate},
        {7, "Blaschke modulus bound and Mobius distance bound", 60.0, claim_and_lemma},
        {8, "certified lower bound consistency", 1.0, kernel_consistency},
        {9, "Newman product", 1.0, newman},
        {10, "spread map and Schatten behaviour", 300.0,
         [] { return preset_outcome("spread-schatten:4"); }},
        {11, "Shapiro-Taylor diagnostics", 300.0,
         [] { return preset_outcome("shapiro-taylor:3"); }},
        {12, "Carleson function", 60.0, carleson},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (const criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.number)) continue;
        const auto start = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = seconds <= c.budget_seconds;
        const bool passed = o.passed && in_budget;
        failures += passed ? 0 : 1;
        std::cout << (passed ? "PASS" : "FAIL") << " AC" << c.number << ' ' << c.name << " ("
                  << o.detail << "; " << fmt("%.2f", seconds) << " s of "
                  << fmt("%.0f", c.budget_seconds) << " s" << (in_budget ? "" : ", over budget")
                  << ")" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
