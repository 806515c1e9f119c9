#include "hardy/hardy_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unsupported/Eigen/FFT>

#include "hardy/boundary_rule.hpp"
#include "hardy/errors.hpp"
#include "hardy/model_space.hpp"

namespace hardy {

precision precision::parse(const std::string& text) {
    if (text == "double") {
        return {};
    }
    const std::string prefix = "extended-";
    if (text.rfind(prefix, 0) == 0) {
        const int digits = parse_int(text.substr(prefix.size()));
        if (digits < 1) {
            throw argument_error("extended precision needs a positive digit count");
        }
        return {true, digits};
    }
    throw argument_error("unknown precision '" + text + "' (expected double or extended-<k>)");
}

std::string precision::name() const {
    return extended ? "extended-" + std::to_string(digits) : "double";
}

void precision::require_supported() const {
    if (extended) {
        throw numeric_error("precision " + name() + " is not available in this build");
    }
}

namespace {

Eigen::MatrixXcd exact_matrix(const std::vector<complex>& coefficients, int N) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
    std::vector<complex> column(N, 0.0);
    column[0] = 1.0;
    for (int m = 0; m < N; ++m) {
        for (int n = 0; n < N; ++n) {
            out(n, m) = column[n];
        }
        std::vector<complex> next(N, 0.0);
        for (int n = 0; n < N; ++n) {
            if (column[n] == 0.0) {
                continue;
            }
            for (std::size_t k = 0; k < coefficients.size() && n + static_cast<int>(k) < N; ++k) {
                next[n + k] += column[n] * coefficients[k];
            }
        }
        column.swap(next);
    }
    return out;
}

Eigen::MatrixXcd sampled_matrix(const symbol& phi, int N, int M, double rho) {
    std::vector<complex> samples(M);
    for (int k = 0; k < M; ++k) {
        samples[k] = phi(rho * unit_point(2.0 * pi * k / M));
    }
    Eigen::FFT<double> fft;
    Eigen::MatrixXcd out(N, N);
    std::vector<complex> power(M, 1.0);
    std::vector<complex> spectrum;
    std::vector<double> scale(N);
    for (int n = 0; n < N; ++n) {
        scale[n] = std::pow(rho, -n) / M;
    }
    for (int m = 0; m < N; ++m) {
        fft.fwd(spectrum, power);
        for (int n = 0; n < N; ++n) {
            out(n, m) = spectrum[n] * scale[n];
        }
        for (int k = 0; k < M; ++k) {
            power[k] *= samples[k];
        }
    }
    return out;
}

}  // namespace

galerkin_matrix build_matrix(const symbol& phi, int N, const precision& prec) {
    prec.require_supported();
    if (N < 1) {
        throw argument_error("build_matrix requires N >= 1");
    }
    galerkin_matrix result;
    result.N = N;
    if (auto coefficients = phi.polynomial_coefficients()) {
        result.entries = exact_matrix(*coefficients, N);
        result.provenance.exact = true;
        return result;
    }
    const double rho = 1.0 - 1.0 / (8.0 * N);
    // Aliasing decays like rho^M = exp(-M / 8N); 512N samples reach the 1e-12 target.
    int M = 1;
    while (M < 64 * N) {
        M *= 2;
    }
    Eigen::MatrixXcd current = sampled_matrix(phi, N, M, rho);
    double error = 0.0;
    for (int doubling = 1; doubling <= 4; ++doubling) {
        M *= 2;
        Eigen::MatrixXcd next = sampled_matrix(phi, N, M, rho);
        error = (next - current).cwiseAbs().maxCoeff();
        current = std::move(next);
        if (error <= 1e-12) {
            result.entries = std::move(current);
            result.provenance = {rho, M, error, false};
            return result;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%d samples, change %.3g", M, error);
    throw numeric_error(std::string("build_matrix: entries did not stabilize after 4 doublings (") +
                        detail + ")");
}

singular_value_spectrum make_spectrum(std::vector<double> values, std::string method) {
    std::sort(values.begin(), values.end(), std::greater<>());
    singular_value_spectrum out;
    out.values = std::move(values);
    out.method = std::move(method);
    out.floor = out.values.empty() ? 0.0 : 1000.0 * unit_roundoff * out.values.front();
    out.reliable_count = static_cast<int>(
        std::count_if(out.values.begin(), out.values.end(), [&](double s) { return s > out.floor; }));
    return out;
}

singular_value_spectrum singular_values(const galerkin_matrix& matrix) {
    if (!matrix.entries.allFinite()) {
        throw numeric_error("singular_values: non-finite matrix entries");
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix.entries);
    if (svd.info() != Eigen::Success) {
        throw numeric_error("singular_values: decomposition failed");
    }
    const Eigen::VectorXd s = svd.singularValues();
    singular_value_spectrum out =
        make_spectrum(std::vector<double>(s.data(), s.data() + s.size()), "galerkin");
    out.provenance = {{"N", matrix.N},
                      {"radius", matrix.provenance.radius},
                      {"samples", matrix.provenance.samples},
                      {"stabilization_error", matrix.provenance.stabilization_error},
                      {"exact", matrix.provenance.exact}};
    return out;
}

singular_value_spectrum ritz_spectrum(const symbol& phi, const ritz_options& options) {
    std::vector<disk_point> zeros(std::max(options.monomials, 0), disk_point(0.0));
    double smallest = 1.0;
    for (const contact& c : phi.contacts()) {
        for (int k = 1; k <= options.fan_levels; ++k) {
            const double delta = std::pow(options.fan_ratio, k);
            for (double beta : options.fan_angles) {
                const disk_point image =
                    phi.at(disk_point::anchored(c.prevertex, delta * unit_point(beta)));
                if (!(image.one_minus_abs2() > 0.0)) {
                    continue;
                }
                if (std::find(zeros.begin(), zeros.end(), image) != zeros.end()) {
                    continue;
                }
                zeros.push_back(image);
                smallest = std::min(smallest, delta);
            }
        }
    }
    if (zeros.empty()) {
        throw argument_error("ritz_spectrum: empty basis");
    }
    boundary_rule_options rule_options;
    rule_options.panel_points = options.panel_points;
    rule_options.subdivisions = options.subdivisions;
    rule_options.min_offset = std::max(1e-300, smallest * options.node_depth_factor);
    rule_options.max_panel = std::min(0.25, 8.0 / std::max(options.monomials, 1));
    const std::vector<boundary_node> rule = graded_boundary_rule(phi, rule_options);
    std::vector<disk_point> images;
    std::vector<double> weights;
    images.reserve(rule.size());
    weights.reserve(rule.size());
    for (const boundary_node& node : rule) {
        images.push_back(node.image);
        weights.push_back(node.weight);
    }
    const Eigen::MatrixXcd Q = model_space_basis(zeros, images, weights);
    if (!Q.allFinite()) {
        throw numeric_error("ritz_spectrum: non-finite basis values for " + phi.id());
    }
    singular_value_spectrum out = make_spectrum(tall_singular_values(Q), "ritz");
    out.provenance = {{"monomials", options.monomials},
                      {"fan_levels", options.fan_levels},
                      {"fan_ratio", options.fan_ratio},
                      {"fan_angles", options.fan_angles},
                      {"basis_size", zeros.size()},
                      {"quadrature_nodes", rule.size()},
                      {"min_offset", rule_options.min_offset}};
    return out;
}

ritz_options default_ritz_options(const symbol& phi) {
    ritz_options out;
    const std::size_t count = phi.contacts().size();
    if (count == 1) {
        out.fan_levels = 100;
        out.fan_ratio = 0.5;
        out.fan_angles = {0.0, 1.0, -1.0};
    } else if (count > 2) {
        out.fan_levels = 40;
        out.fan_angles = {0.0};
    }
    return out;
}

namespace {

convergence_record compare(const singular_value_spectrum& small,
                           const singular_value_spectrum& large, int n_max, int basis_small,
                           int basis_large) {
    convergence_record record;
    record.basis_small = basis_small;
    record.basis_large = basis_large;
    const int n = std::min({n_max, static_cast<int>(small.values.size()),
                            static_cast<int>(large.values.size())});
    const int reliable = std::min({n, small.reliable_count, large.reliable_count});
    for (int i = 0; i < n; ++i) {
        const double change = std::abs(large.values[i] - small.values[i]) / large.values[i];
        record.converged.push_back(i < reliable && change < 1e-3);
        if (i < reliable) {
            record.max_relative_change = std::max(record.max_relative_change, change);
        }
    }
    return record;
}

void truncate(singular_value_spectrum& s, int n_max) {
    if (static_cast<int>(s.values.size()) > n_max) {
        s.values.resize(n_max);
    }
    s.reliable_count = std::min(s.reliable_count, static_cast<int>(s.values.size()));
}

}  // namespace

singular_value_spectrum approx_numbers(const symbol& phi, int n_max,
                                       const spectrum_options& options) {
    options.prec.require_supported();
    if (n_max < 1) {
        throw argument_error("approx_numbers requires n_max >= 1");
    }
    if (options.method == spectrum_method::galerkin) {
        const int N = options.galerkin_N > 0 ? options.galerkin_N : 4 * n_max;
        singular_value_spectrum large = singular_values(build_matrix(phi, 2 * N, options.prec));
        if (options.convergence_check) {
            const singular_value_spectrum small =
                singular_values(build_matrix(phi, N, options.prec));
            large.convergence = compare(small, large, n_max, N, 2 * N);
        }
        truncate(large, n_max);
        return large;
    }
    const ritz_options base = options.ritz ? *options.ritz : default_ritz_options(phi);
    if (!options.convergence_check) {
        singular_value_spectrum out = ritz_spectrum(phi, base);
        truncate(out, n_max);
        return out;
    }
    ritz_options refined = base;
    refined.monomials = base.monomials * 3 / 2;
    refined.fan_levels = base.fan_levels * 3 / 2;
    refined.fan_ratio = std::pow(base.fan_ratio, 2.0 / 3.0);
    const singular_value_spectrum small = ritz_spectrum(phi, base);
    singular_value_spectrum large = ritz_spectrum(phi, refined);
    large.convergence = compare(small, large, n_max, small.provenance["basis_size"].get<int>(),
                                large.provenance["basis_size"].get<int>());
    truncate(large, n_max);
    return large;
}

double window_pullback_measure(const symbol& phi, boundary_angle xi, double h, int grid) {
    const carleson_window window(xi, h);
    double total = 0.0;
    for (const boundary_node& node : hybrid_boundary_rule(phi, grid)) {
        if (window_pullback_indicator(node.image, window)) {
            total += node.weight;
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

measure_check window_pullback_measure_checked(const symbol& phi, boundary_angle xi, double h,
                                              int grid) {
    measure_check out;
    out.value = window_pullback_measure(phi, xi, h, grid);
    out.refined = window_pullback_measure(phi, xi, h, 2 * grid);
    out.change = std::abs(out.refined - out.value);
    return out;
}

double carleson_function(const symbol& psi, double h, int xi_grid, int t_grid) {
    if (!(h > 0.0 && h < 1.0)) {
        throw argument_error("carleson_function requires 0 < h < 1");
    }
    if (xi_grid < 1) {
        throw argument_error("carleson_function requires a positive xi grid");
    }
    std::vector<double> args;
    std::vector<double> weights;
    for (const boundary_node& node : hybrid_boundary_rule(psi, t_grid)) {
        if (node.image.one_minus_abs() > h) {
            continue;
        }
        double arg = 0.0;
        if (node.image.is_anchored()) {
            const complex g = node.image.gap();
            arg = std::arg(node.image.anchor()) + std::atan2(-g.imag(), 1.0 - g.real());
        } else {
            arg = std::arg(node.image.value());
        }
        args.push_back(arg);
        weights.push_back(node.weight);
    }
    double best = 0.0;
    for (int k = 0; k < xi_grid; ++k) {
        const double center = 2.0 * pi * k / xi_grid;
        double total = 0.0;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (std::abs(reduce_angle(args[i] - center)) <= pi * h) {
                total += weights[i];
            }
        }
        best = std::max(best, total);
    }
    return std::min(best, 1.0);
}

void write_spectrum_csv(std::ostream& out, const singular_value_spectrum& spectrum) {
    out << "n,s_n,reliable\n";
    char buffer[64];
    for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
        std::snprintf(buffer, sizeof buffer, "%.17g", spectrum.values[i]);
        out << (i + 1) << ',' << buffer << ','
            << (static_cast<int>(i) < spectrum.reliable_count ? 1 : 0) << '\n';
    }
}

nlohmann::json spectrum_provenance(const singular_value_spectrum& spectrum) {
    nlohmann::json j = spectrum.provenance;
    j["method"] = spectrum.method;
    j["reliability_floor"] = spectrum.floor;
    j["floor_rule"] = spectrum.floor_rule;
    j["reliable_count"] = spectrum.reliable_count;
    if (spectrum.convergence) {
        const convergence_record& c = *spectrum.convergence;
        std::vector<int> unconverged;
        for (std::size_t i = 0; i < c.converged.size(); ++i) {
            if (!c.converged[i]) {
                unconverged.push_back(static_cast<int>(i) + 1);
            }
        }
        j["convergence"] = {{"basis_small", c.basis_small},
                            {"basis_large", c.basis_large},
                            {"max_relative_change", c.max_relative_change},
                            {"unconverged_n", unconverged}};
    }
    return j;
}

}  // namespace hardy
