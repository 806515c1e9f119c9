#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hardy/disk_geometry.hpp"
#include "hardy/symbols.hpp"
#include "json.hpp"

namespace hardy {

// Working precision. Only hardware double is available in this build; extended-<k> parses
// but is rejected by the solvers.
struct precision {
    bool extended = false;
    int digits = 16;

    static precision parse(const std::string& text);
    std::string name() const;
    void require_supported() const;
};

struct galerkin_provenance {
    double radius = 1.0;
    int samples = 0;
    double stabilization_error = 0.0;
    bool exact = false;
};

// c(n, m) = n-th Taylor coefficient of phi^m, 0 <= n, m < N.
struct galerkin_matrix {
    int N = 0;
    Eigen::MatrixXcd entries;
    galerkin_provenance provenance;
};

galerkin_matrix build_matrix(const symbol& phi, int N, const precision& prec = {});

struct convergence_record {
    int basis_small = 0;
    int basis_large = 0;
    double max_relative_change = 0.0;
    // Per index: relative change below 1e-3.
    std::vector<bool> converged;
};

struct singular_value_spectrum {
    std::vector<double> values;
    int reliable_count = 0;
    double floor = 0.0;
    std::string floor_rule = "1000 * unit_roundoff * s_1";
    std::string method;
    nlohmann::json provenance = nlohmann::json::object();
    std::optional<convergence_record> convergence;
};

// Sorts descending and applies the reliability floor.
singular_value_spectrum make_spectrum(std::vector<double> values, std::string method);

singular_value_spectrum singular_values(const galerkin_matrix& matrix);

struct ritz_options {
    // Zeros placed at the origin (the span of the first monomials).
    int monomials = 40;
    // Per contact: zeros at images of prevertex (1 - ratio^k e^{i beta}), k = 1..levels.
    int fan_levels = 60;
    double fan_ratio = 0.6;
    std::vector<double> fan_angles{0.0, 0.8, -0.8};
    int panel_points = 20;
    int subdivisions = 4;
    // Quadrature reaches min fan offset times this factor.
    double node_depth_factor = 1e-12;
};

// One contact: a deep three-ray fan. Two contacts: the struct defaults. More: a single radial ray.
ritz_options default_ritz_options(const symbol& phi);

enum class spectrum_method { ritz, galerkin };

struct spectrum_options {
    spectrum_method method = spectrum_method::ritz;
    precision prec;
    // Unset means default_ritz_options(phi).
    std::optional<ritz_options> ritz;
    // Galerkin size; 0 means 4 * n_max.
    int galerkin_N = 0;
    bool convergence_check = true;
};

// Singular values of C_phi restricted to the model space spanned by the Ritz basis.
singular_value_spectrum ritz_spectrum(const symbol& phi, const ritz_options& options);

singular_value_spectrum approx_numbers(const symbol& phi, int n_max,
                                       const spectrum_options& options = {});

double window_pullback_measure(const symbol& phi, boundary_angle xi, double h, int grid = 65536);

struct measure_check {
    double value = 0.0;
    double refined = 0.0;
    double change = 0.0;
};
measure_check window_pullback_measure_checked(const symbol& phi, boundary_angle xi, double h,
                                              int grid = 65536);

double carleson_function(const symbol& psi, double h, int xi_grid = 512, int t_grid = 65536);

void write_spectrum_csv(std::ostream& out, const singular_value_spectrum& spectrum);
nlohmann::json spectrum_provenance(const singular_value_spectrum& spectrum);

}  // namespace hardy
