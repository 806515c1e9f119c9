#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hardy/disk_geometry.hpp"
#include "hardy/modulus.hpp"

namespace hardy {

// A declared boundary contact: phi(prevertex) = image with |image| = 1.
struct contact {
    double angle;
    complex prevertex;
    complex image;
};

// An analytic self-map of the disk, continuous on the closed disk.
class symbol {
public:
    virtual ~symbol() = default;

    const std::string& id() const { return id_; }
    const std::vector<contact>& contacts() const { return contacts_; }
    bool real_on_reals() const { return real_on_reals_; }
    const std::optional<modulus_of_continuity>& modulus() const { return modulus_; }
    const std::vector<double>& window_radii() const { return window_radii_; }

    // phi(z) for |z| <= 1; domain_error outside the closed disk.
    complex operator()(complex z) const;
    // gamma(t) = phi(e^{it}).
    complex boundary(double t) const;
    // phi at a disk point; points anchored at a declared prevertex map to points anchored at
    // the matching image.
    disk_point at(const disk_point& z) const;
    // 1 - conj(image_j) phi(prevertex_j (1 - w)).
    complex contact_gap(std::size_t j, complex w) const;
    // Exact Taylor coefficients when phi is a polynomial.
    virtual std::optional<std::vector<complex>> polynomial_coefficients() const {
        return std::nullopt;
    }

protected:
    symbol(std::string id, std::vector<contact> contacts, bool real_on_reals,
           std::optional<modulus_of_continuity> modulus, std::vector<double> window_radii);

    virtual complex evaluate(complex z) const = 0;
    virtual complex evaluate_gap(std::size_t j, complex w) const;

private:
    std::string id_;
    std::vector<contact> contacts_;
    bool real_on_reals_;
    std::optional<modulus_of_continuity> modulus_;
    std::vector<double> window_radii_;
};

using symbol_ptr = std::shared_ptr<const symbol>;

// Cusp map pieces.
complex cusp_phi0(complex z);
// phi0(1 - w), accurate for small w.
complex cusp_phi0_near_one(complex w);
complex cusp(complex z);
// phi0(r) = tan(gamma_angle / 2), gamma_angle = pi/4 - arctan r.
double cusp_phi0_radial(double r);

complex lens(double theta, complex z);
complex sc_polygon(int p, complex z);
complex shapiro_taylor(double theta, double epsilon, complex z);

symbol_ptr make_cusp();
symbol_ptr make_lens(double theta);
symbol_ptr make_polygon(int p);
symbol_ptr make_shapiro_taylor(double theta, double epsilon = 0.36787944117144233);
symbol_ptr make_spread(symbol_ptr base, double omega0_angle, int p);
symbol_ptr make_polynomial(std::vector<complex> coefficients, std::string id = "");
symbol_ptr make_dilation(double r);
symbol_ptr make_identity();
symbol_ptr make_constant(complex c);

// Parses cusp, lens:<t>, polygon:<p>, shapiro-taylor:<t>[:<eps>], spread:<base>:<angle>:<p>,
// rz:<r>, id, const:<c>.
symbol_ptr parse_symbol(const std::string& id);

std::vector<boundary_angle> contact_set(const symbol& phi, double tol = 1e-6, int grid = 4096);

struct regularity_report {
    double C = 0.0;
    double c = 0.0;
    double window = 0.0;
    bool holds = false;
    bool reluc_holds = false;
    bool ponct_holds = false;
    // Per dyadic level k (|t - t_j| = window 2^{-k}): max (reluc) ratio and min (ponct) ratio.
    std::vector<double> reluc_levels;
    std::vector<double> ponct_levels;
};

regularity_report regularity_check(const symbol& phi, const modulus_of_continuity& omega,
                                   double window, int depth = 48);

enum class holder_model { power, log };
double holder_exponent(const symbol& phi, boundary_angle t_j, holder_model model);

struct symbol_invariants {
    bool self_map = true;
    bool boundary_consistent = true;
    bool real_on_reals = true;
    double max_interior_modulus = 0.0;
};
symbol_invariants check_symbol_invariants(const symbol& phi);

}  // namespace hardy
