#include "hardy/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

constexpr complex I{0.0, 1.0};

// Moves a value onto the closed upper half-plane, turning -0 into +0 so that the principal
// square root picks the upper branch on the negative real axis.
complex upper(complex c) { return {c.real(), c.imag() > 0.0 ? c.imag() : 0.0}; }

bool in_closed_disk(complex z) { return std::abs(z) <= 1.0 + 4.0 * unit_roundoff; }

}  // namespace

symbol::symbol(std::string id, std::vector<contact> contacts, bool real_on_reals,
               std::optional<modulus_of_continuity> modulus, std::vector<double> window_radii)
    : id_(std::move(id)), contacts_(std::move(contacts)), real_on_reals_(real_on_reals),
      modulus_(std::move(modulus)), window_radii_(std::move(window_radii)) {}

complex symbol::operator()(complex z) const {
    if (!in_closed_disk(z)) {
        throw domain_error(id_ + ": evaluation outside the closed disk");
    }
    return evaluate(z);
}

complex symbol::boundary(double t) const { return evaluate(unit_point(t)); }

disk_point symbol::at(const disk_point& z) const {
    if (z.is_anchored()) {
        for (std::size_t j = 0; j < contacts_.size(); ++j) {
            if (contacts_[j].prevertex == z.anchor()) {
                return disk_point::anchored(contacts_[j].image, evaluate_gap(j, z.gap()));
            }
        }
    }
    return disk_point((*this)(z.value()));
}

complex symbol::contact_gap(std::size_t j, complex w) const {
    if (j >= contacts_.size()) {
        throw argument_error(id_ + ": contact index out of range");
    }
    return evaluate_gap(j, w);
}

complex symbol::evaluate_gap(std::size_t j, complex w) const {
    const contact& c = contacts_[j];
    return 1.0 - std::conj(c.image) * evaluate(c.prevertex * (1.0 - w));
}

// ---------------------------------------------------------------- cusp

complex cusp_phi0(complex z) {
    if (!in_closed_disk(z)) {
        throw domain_error("cusp_phi0: argument outside the closed disk");
    }
    const complex den = I * z - 1.0;
    const complex num = z - I;
    if (std::abs(z + I) >= std::abs(z - 1.0)) {
        const complex s = std::sqrt(upper(num / den));
        return (1.0 + I) * (z - 1.0) / (den * (s + I) * (1.0 - I * s));
    }
    const complex r = std::conj(std::sqrt(upper(std::conj(den / num))));
    return (1.0 - I * r) / (r - I);
}

complex cusp_phi0_near_one(complex w) {
    const complex z = 1.0 - w;
    if (std::abs(z + I) < std::abs(w)) {
        return cusp_phi0(z);
    }
    const complex den = I * z - 1.0;
    const complex s = std::sqrt(upper((z - I) / den));
    return (1.0 + I) * (-w) / (den * (s + I) * (1.0 - I * s));
}

double cusp_phi0_radial(double r) {
    const double gamma_angle = 0.25 * pi - std::atan(r);
    return std::tan(0.5 * gamma_angle);
}

namespace {

complex cusp_from_phi0(complex p) {
    if (p == 0.0) {
        return {1.0, 0.0};
    }
    return 1.0 - 1.0 / (1.0 - (2.0 / pi) * std::log(p));
}

complex cusp_gap_from_phi0(complex p) {
    if (p == 0.0) {
        return {0.0, 0.0};
    }
    return 1.0 / (1.0 - (2.0 / pi) * std::log(p));
}

class cusp_symbol final : public symbol {
public:
    cusp_symbol()
        : symbol("cusp", {{0.0, {1.0, 0.0}, {1.0, 0.0}}}, true,
                 modulus_of_continuity::inverse_log(1.0), {0.5}) {}

protected:
    complex evaluate(complex z) const override { return cusp_from_phi0(cusp_phi0(z)); }
    complex evaluate_gap(std::size_t, complex w) const override {
        return cusp_gap_from_phi0(cusp_phi0_near_one(w));
    }
};

}  // namespace

complex cusp(complex z) { return cusp_from_phi0(cusp_phi0(z)); }

// ---------------------------------------------------------------- lens

namespace {

complex principal_power(complex z, double theta) {
    if (z == 0.0) {
        return {0.0, 0.0};
    }
    return std::pow(z, theta);
}

void check_theta(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw argument_error("lens map requires 0 < theta < 1");
    }
}

class lens_symbol final : public symbol {
public:
    explicit lens_symbol(double theta)
        : symbol(make_id(theta), {{0.0, {1.0, 0.0}, {1.0, 0.0}}, {pi, {-1.0, 0.0}, {-1.0, 0.0}}},
                 true, modulus_of_continuity::power(theta), {0.5, 0.5}),
          theta_(theta) {}

protected:
    complex evaluate(complex z) const override { return lens(theta_, z); }
    complex evaluate_gap(std::size_t j, complex w) const override {
        const complex near = principal_power(w, theta_);
        const complex far = principal_power(2.0 - w, theta_);
        (void)j;
        return 2.0 * near / (near + far);
    }

private:
    static std::string make_id(double theta) {
        std::ostringstream os;
        os << "lens:" << theta;
        return os.str();
    }
    double theta_;
};

}  // namespace

complex lens(double theta, complex z) {
    check_theta(theta);
    if (!in_closed_disk(z)) {
        throw domain_error("lens: argument outside the closed disk");
    }
    const complex a = principal_power(1.0 + z, theta);
    const complex b = principal_power(1.0 - z, theta);
    return (a - b) / (a + b);
}

// ---------------------------------------------------------------- Schwarz-Christoffel polygon

namespace {

class polygon_map {
public:
    explicit polygon_map(int p) : p_(p), mu_(2.0 / p), q_(1.0 / (1.0 - 2.0 / p)) {
        if (p < 3) {
            throw argument_error("sc_polygon requires p >= 3");
        }
        A_ = p / std::beta(1.0 / p, 1.0 - 2.0 / p);
        for (int k = 0; k < p; ++k) {
            vertices_.push_back(unit_point(2.0 * pi * k / p));
        }
    }

    int p() const { return p_; }
    const std::vector<complex>& vertices() const { return vertices_; }

    // 1 - phi(1 - w) = A w int_0^1 (1 - (1 - w tau)^p)^{-mu} dtau with tau = v^q.
    complex gap(complex w) const {
        if (w == 0.0) {
            return {0.0, 0.0};
        }
        auto integrand = [&](double v) {
            const complex x = w * std::pow(v, q_);
            complex other{1.0, 0.0};
            for (int k = 1; k < p_; ++k) {
                other *= (1.0 - x - vertices_[k]);
            }
            return q_ * std::pow(w * other, -mu_);
        };
        return A_ * w * integrate(integrand, 0.0, 1.0);
    }

    complex operator()(complex z) const {
        if (!in_closed_disk(z)) {
            throw domain_error("sc_polygon: argument outside the closed disk");
        }
        std::size_t nearest = 0;
        for (std::size_t k = 1; k < vertices_.size(); ++k) {
            if (std::abs(z - vertices_[k]) < std::abs(z - vertices_[nearest])) {
                nearest = k;
            }
        }
        const complex zeta = vertices_[nearest];
        if (std::abs(z - zeta) < 0.5) {
            return zeta * (1.0 - gap(1.0 - std::conj(zeta) * z));
        }
        if (z == 0.0) {
            return {0.0, 0.0};
        }
        const complex zp = ipow(z, p_);
        auto integrand = [&](double s) { return std::pow(1.0 - zp * std::pow(s, p_), -mu_); };
        return A_ * z * integrate(integrand, 0.0, 1.0);
    }

private:
    int p_;
    double mu_;
    double q_;
    double A_ = 1.0;
    std::vector<complex> vertices_;
};

class polygon_symbol final : public symbol {
public:
    explicit polygon_symbol(int p)
        : symbol("polygon:" + std::to_string(p), make_contacts(p), true,
                 modulus_of_continuity::power(1.0 - 2.0 / p),
                 std::vector<double>(p, 0.5 * pi / p)),
          map_(p) {}

protected:
    complex evaluate(complex z) const override { return map_(z); }
    complex evaluate_gap(std::size_t, complex w) const override { return map_.gap(w); }

private:
    static std::vector<contact> make_contacts(int p) {
        if (p < 3) {
            throw argument_error("sc_polygon requires p >= 3");
        }
        std::vector<contact> out;
        for (int k = 0; k < p; ++k) {
            const double t = reduce_angle(2.0 * pi * k / p);
            const complex v = unit_point(2.0 * pi * k / p);
            out.push_back({t, v, v});
        }
        return out;
    }
    polygon_map map_;
};

}  // namespace

complex sc_polygon(int p, complex z) { return polygon_map(p)(z); }

// ---------------------------------------------------------------- Shapiro-Taylor

namespace {

complex st_exponent(double theta, complex g) {
    if (g == 0.0) {
        return {0.0, 0.0};
    }
    return g * std::pow(-std::log(g), theta);
}

void check_st(double theta, double epsilon) {
    if (!(theta > 0.0)) {
        throw argument_error("shapiro_taylor requires theta > 0");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw argument_error("shapiro_taylor requires 0 < epsilon < 1");
    }
}

class shapiro_taylor_symbol final : public symbol {
public:
    shapiro_taylor_symbol(double theta, double epsilon)
        : symbol(make_id(theta, epsilon), {{0.0, {1.0, 0.0}, {1.0, 0.0}}}, true, std::nullopt,
                 {0.5}),
          theta_(theta), epsilon_(epsilon) {
        check_st(theta, epsilon);
        constexpr int grid = 2048;
        double worst = 0.0;
        for (int k = 0; k < grid; ++k) {
            worst = std::max(worst, std::abs(evaluate(unit_point(2.0 * pi * k / grid))));
        }
        if (worst > 1.0 + 1e-12) {
            throw parameter_error("shapiro_taylor: sup |phi| on the circle is " +
                                  std::to_string(worst) + "; choose a smaller epsilon");
        }
    }

protected:
    complex evaluate(complex z) const override {
        return std::exp(-st_exponent(theta_, epsilon_ * cusp_phi0(z)));
    }
    complex evaluate_gap(std::size_t, complex w) const override {
        return -expm1(-st_exponent(theta_, epsilon_ * cusp_phi0_near_one(w)));
    }

private:
    static std::string make_id(double theta, double epsilon) {
        std::ostringstream os;
        os << "shapiro-taylor:" << theta << ":" << epsilon;
        return os.str();
    }
    double theta_;
    double epsilon_;
};

}  // namespace

complex shapiro_taylor(double theta, double epsilon, complex z) {
    check_st(theta, epsilon);
    if (!in_closed_disk(z)) {
        throw domain_error("shapiro_taylor: argument outside the closed disk");
    }
    return std::exp(-st_exponent(theta, epsilon * cusp_phi0(z)));
}

// ---------------------------------------------------------------- spread

namespace {

class spread_symbol final : public symbol {
public:
    spread_symbol(symbol_ptr base, double omega0_angle, int p)
        : symbol(make_id(*base, omega0_angle, p), make_contacts(omega0_angle, p),
                 base->real_on_reals() && std::abs(ipow(unit_point(omega0_angle), p).imag()) == 0.0,
                 base->modulus(), std::vector<double>(p, 0.5 * pi / p)),
          base_(std::move(base)), omega0_(unit_point(omega0_angle)), p_(p) {}

protected:
    complex evaluate(complex z) const override {
        const complex chi = 0.5 * (1.0 + ipow(std::conj(omega0_) * z, p_));
        return (*base_)(chi);
    }
    complex evaluate_gap(std::size_t, complex w) const override {
        return base_->contact_gap(0, 0.5 * one_minus_power(w, p_));
    }

private:
    static std::string make_id(const symbol& base, double angle, int p) {
        std::ostringstream os;
        os << "spread:" << base.id() << ":" << angle << ":" << p;
        return os.str();
    }
    static std::vector<contact> make_contacts(double angle, int p) {
        if (p < 1) {
            throw argument_error("spread requires p >= 1");
        }
        std::vector<contact> out;
        for (int k = 0; k < p; ++k) {
            const double t = angle + 2.0 * pi * k / p;
            out.push_back({reduce_angle(t), unit_point(t), {1.0, 0.0}});
        }
        std::sort(out.begin(), out.end(),
                  [](const contact& a, const contact& b) { return a.angle < b.angle; });
        return out;
    }
    symbol_ptr base_;
    complex omega0_;
    int p_;
};

// ---------------------------------------------------------------- polynomials

class polynomial_symbol final : public symbol {
public:
    polynomial_symbol(std::vector<complex> coefficients, std::string id)
        : symbol(std::move(id), {}, all_real(coefficients), std::nullopt, {}),
          coefficients_(std::move(coefficients)) {}

    std::optional<std::vector<complex>> polynomial_coefficients() const override {
        return coefficients_;
    }

protected:
    complex evaluate(complex z) const override {
        complex result{0.0, 0.0};
        for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
            result = result * z + *it;
        }
        return result;
    }

private:
    static bool all_real(const std::vector<complex>& c) {
        return std::all_of(c.begin(), c.end(), [](complex x) { return x.imag() == 0.0; });
    }
    std::vector<complex> coefficients_;
};

}  // namespace

symbol_ptr make_cusp() { return std::make_shared<cusp_symbol>(); }

symbol_ptr make_lens(double theta) {
    check_theta(theta);
    return std::make_shared<lens_symbol>(theta);
}

symbol_ptr make_polygon(int p) { return std::make_shared<polygon_symbol>(p); }

symbol_ptr make_shapiro_taylor(double theta, double epsilon) {
    return std::make_shared<shapiro_taylor_symbol>(theta, epsilon);
}

symbol_ptr make_spread(symbol_ptr base, double omega0_angle, int p) {
    if (!base || base->contacts().size() != 1 || base->contacts()[0].prevertex != 1.0 ||
        base->contacts()[0].image != 1.0) {
        throw argument_error("spread: base symbol must have the single contact point 1");
    }
    return std::make_shared<spread_symbol>(std::move(base), omega0_angle, p);
}

symbol_ptr make_polynomial(std::vector<complex> coefficients, std::string id) {
    if (coefficients.empty()) {
        coefficients.push_back(0.0);
    }
    double total = 0.0;
    for (complex c : coefficients) {
        total += std::abs(c);
    }
    if (total > 1.0 + 1e-15) {
        throw argument_error("polynomial symbol must satisfy sum |c_k| <= 1");
    }
    if (id.empty()) {
        std::ostringstream os;
        os << "poly";
        for (complex c : coefficients) {
            os << ":" << c.real();
            if (c.imag() != 0.0) {
                os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
            }
        }
        id = os.str();
    }
    return std::make_shared<polynomial_symbol>(std::move(coefficients), std::move(id));
}

symbol_ptr make_dilation(double r) {
    if (!(std::abs(r) <= 1.0)) {
        throw argument_error("rz requires |r| <= 1");
    }
    std::ostringstream os;
    os << "rz:" << r;
    return make_polynomial({0.0, r}, os.str());
}

symbol_ptr make_identity() { return make_polynomial({0.0, 1.0}, "id"); }

symbol_ptr make_constant(complex c) {
    if (!(std::abs(c) < 1.0)) {
        throw argument_error("const requires |c| < 1");
    }
    std::ostringstream os;
    os << "const:" << c.real();
    if (c.imag() != 0.0) {
        os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    }
    return make_polynomial({c}, os.str());
}

symbol_ptr parse_symbol(const std::string& id) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : id) {
        if (ch == ':') {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    const std::string& head = parts[0];
    auto expect = [&](std::size_t lo, std::size_t hi) {
        if (parts.size() < lo || parts.size() > hi) {
            throw argument_error("malformed symbol identifier '" + id + "'");
        }
    };
    if (head == "cusp") {
        expect(1, 1);
        return make_cusp();
    }
    if (head == "id") {
        expect(1, 1);
        return make_identity();
    }
    if (head == "lens") {
        expect(2, 2);
        return make_lens(parse_real(parts[1]));
    }
    if (head == "polygon") {
        expect(2, 2);
        return make_polygon(parse_int(parts[1]));
    }
    if (head == "shapiro-taylor") {
        expect(2, 3);
        const double theta = parse_real(parts[1]);
        return parts.size() == 3 ? make_shapiro_taylor(theta, parse_real(parts[2]))
                                 : make_shapiro_taylor(theta);
    }
    if (head == "rz") {
        expect(2, 2);
        return make_dilation(parse_real(parts[1]));
    }
    if (head == "const") {
        expect(2, 2);
        return make_constant(parse_complex(parts[1]));
    }
    if (head == "spread") {
        if (parts.size() < 4) {
            throw argument_error("malformed symbol identifier '" + id + "'");
        }
        std::string base;
        for (std::size_t k = 1; k + 2 < parts.size(); ++k) {
            base += (k > 1 ? ":" : "") + parts[k];
        }
        return make_spread(parse_symbol(base), parse_real(parts[parts.size() - 2]),
                           parse_int(parts.back()));
    }
    throw argument_error("unknown symbol identifier '" + id + "'");
}

// ---------------------------------------------------------------- diagnostics

std::vector<boundary_angle> contact_set(const symbol& phi, double tol, int grid) {
    if (grid < 8) {
        throw argument_error("contact_set requires grid >= 8");
    }
    const double step = 2.0 * pi / grid;
    std::vector<double> defect(grid);
    for (int k = 0; k < grid; ++k) {
        defect[k] = 1.0 - std::abs(phi.boundary(step * k));
    }
    std::vector<double> accepted;
    for (int k = 0; k < grid; ++k) {
        const double left = defect[(k + grid - 1) % grid];
        const double right = defect[(k + 1) % grid];
        if (defect[k] > left || defect[k] > right) {
            continue;
        }
        double best_t = step * k;
        double best = defect[k];
        // Golden-section maximization of |gamma| on the neighbouring cells.
        double a = step * (k - 1);
        double b = step * (k + 1);
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - g * (b - a);
        double x2 = a + g * (b - a);
        double f1 = 1.0 - std::abs(phi.boundary(x1));
        double f2 = 1.0 - std::abs(phi.boundary(x2));
        for (int iter = 0; iter < 80 && b - a > 1e-15; ++iter) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = 1.0 - std::abs(phi.boundary(x1));
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = 1.0 - std::abs(phi.boundary(x2));
            }
        }
        const double refined_t = f1 < f2 ? x1 : x2;
        const double refined = std::min(f1, f2);
        if (refined < best) {
            best = refined;
            best_t = refined_t;
        }
        if (best <= tol) {
            accepted.push_back(reduce_angle(best_t));
        }
    }
    std::sort(accepted.begin(), accepted.end());
    std::vector<boundary_angle> clusters;
    std::vector<double> members;
    auto flush = [&]() {
        if (!members.empty()) {
            clusters.emplace_back(members[members.size() / 2]);
            members.clear();
        }
    };
    for (double t : accepted) {
        if (!members.empty() && t - members.back() > 2.0 * step) {
            flush();
        }
        members.push_back(t);
    }
    flush();
    if (clusters.size() > 1) {
        const double first = clusters.front().value();
        const double last = clusters.back().value();
        if (first + 2.0 * pi - last <= 2.0 * step) {
            clusters.erase(clusters.begin());
        }
    }
    return clusters;
}

namespace {

double third_extreme(const std::vector<double>& levels, int part, bool maximum) {
    const std::size_t n = levels.size();
    const std::size_t lo = n * part / 3;
    const std::size_t hi = n * (part + 1) / 3;
    double out = maximum ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
    for (std::size_t k = lo; k < hi; ++k) {
        out = maximum ? std::max(out, levels[k]) : std::min(out, levels[k]);
    }
    return out;
}

std::size_t find_contact(const symbol& phi, boundary_angle t_j) {
    for (std::size_t j = 0; j < phi.contacts().size(); ++j) {
        if (std::abs(reduce_angle(phi.contacts()[j].angle - t_j.value())) < 1e-9) {
            return j;
        }
    }
    throw argument_error(phi.id() + ": angle " + std::to_string(t_j.value()) +
                         " is not a declared contact");
}

}  // namespace

regularity_report regularity_check(const symbol& phi, const modulus_of_continuity& omega,
                                   double window, int depth) {
    if (phi.contacts().empty()) {
        throw argument_error(phi.id() + ": regularity_check needs declared contacts");
    }
    regularity_report report;
    report.window = std::min(window, omega.domain_bound());
    report.reluc_levels.assign(depth + 1, 0.0);
    report.ponct_levels.assign(depth + 1, std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < phi.contacts().size(); ++j) {
        const contact& c = phi.contacts()[j];
        for (int k = 0; k <= depth; ++k) {
            for (int sub = 0; sub < 4; ++sub) {
                const double delta = report.window * std::ldexp(1.0, -k) * std::exp2(-0.25 * sub);
                for (double side : {1.0, -1.0}) {
                    const disk_point image =
                        phi.at(disk_point::anchored(c.prevertex, boundary_gap(side * delta)));
                    const double distance = std::abs(image.value() - c.image);
                    const double near = image.is_anchored() && image.anchor() == c.image
                                            ? std::abs(image.gap())
                                            : distance;
                    const double defect = image.one_minus_abs();
                    const double reluc = defect > 0.0 ? near / defect
                                                      : std::numeric_limits<double>::infinity();
                    report.reluc_levels[k] = std::max(report.reluc_levels[k], reluc);
                    report.ponct_levels[k] = std::min(report.ponct_levels[k], near / omega(delta));
                }
            }
        }
    }
    report.C = *std::max_element(report.reluc_levels.begin(), report.reluc_levels.end());
    report.c = *std::min_element(report.ponct_levels.begin(), report.ponct_levels.end());
    report.reluc_holds = std::isfinite(report.C) &&
                         third_extreme(report.reluc_levels, 2, true) <=
                             1.25 * third_extreme(report.reluc_levels, 1, true);
    report.ponct_holds = report.c > 0.0 && third_extreme(report.ponct_levels, 2, false) >=
                                               0.8 * third_extreme(report.ponct_levels, 1, false);
    report.holds = report.reluc_holds && report.ponct_holds;
    return report;
}

double holder_exponent(const symbol& phi, boundary_angle t_j, holder_model model) {
    const std::size_t j = find_contact(phi, t_j);
    const contact& c = phi.contacts()[j];
    std::vector<double> xs;
    std::vector<double> ys;
    const int k_lo = model == holder_model::power ? 6 : 100;
    const int k_hi = model == holder_model::power ? 18 : 1000;
    const int k_step = model == holder_model::power ? 1 : 10;
    for (int k = k_lo; k <= k_hi; k += k_step) {
        const double delta = std::ldexp(1.0, -k);
        for (double side : {1.0, -1.0}) {
            const disk_point image =
                phi.at(disk_point::anchored(c.prevertex, boundary_gap(side * delta)));
            const double distance = image.is_anchored() && image.anchor() == c.image
                                        ? std::abs(image.gap())
                                        : std::abs(image.value() - c.image);
            if (!(distance > 0.0) || !std::isfinite(distance)) {
                continue;
            }
            if (model == holder_model::power) {
                xs.push_back(std::log(delta));
                ys.push_back(std::log(distance));
            } else {
                xs.push_back(1.0 / -std::log(delta));
                ys.push_back(distance);
            }
        }
    }
    if (xs.size() < 4) {
        throw numeric_error(phi.id() + ": holder_exponent has fewer than 4 usable points");
    }
    const double n = static_cast<double>(xs.size());
    if (model == holder_model::log) {
        double sxy = 0.0;
        double sxx = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += xs[i] * ys[i];
            sxx += xs[i] * xs[i];
        }
        return sxy / sxx;
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) {
        throw numeric_error(phi.id() + ": degenerate holder regression");
    }
    return sxy / sxx;
}

symbol_invariants check_symbol_invariants(const symbol& phi) {
    symbol_invariants out;
    for (int i = 0; i < 16; ++i) {
        const double r = 0.05 + (0.999 - 0.05) * i / 15.0;
        for (int k = 0; k < 32; ++k) {
            const double m = std::abs(phi(r * unit_point(2.0 * pi * k / 32)));
            out.max_interior_modulus = std::max(out.max_interior_modulus, m);
            if (!(m < 1.0)) {
                out.self_map = false;
            }
        }
    }
    for (int k = 0; k < 64; ++k) {
        const double t = 2.0 * pi * k / 64;
        const complex g = phi.boundary(t);
        const double coarse = std::abs(phi((1.0 - 1e-2) * unit_point(t)) - g);
        const double fine = std::abs(phi((1.0 - 1e-12) * unit_point(t)) - g);
        if (!(fine <= std::max(1e-6, 0.5 * coarse))) {
            out.boundary_consistent = false;
        }
    }
    if (phi.real_on_reals()) {
        for (int i = 0; i <= 40; ++i) {
            const double x = -0.99 + 1.98 * i / 40.0;
            if (std::abs(phi(x).imag()) > 1e-12) {
                out.real_on_reals = false;
            }
        }
    }
    return out;
}

}  // namespace hardy
