#include "hardy/experiment.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>

#include "hardy/bounds.hpp"
#include "hardy/hardy_operator.hpp"

namespace hardy {
namespace {

constexpr int spread_sweep = 4096;

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::string format_real(double x) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
    return std::string(buffer, result.ptr);
}

std::string format_fixed(const char* format, double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, x);
    return buffer;
}

struct preset_spec {
    std::string name;
    std::string argument;
};

preset_spec split_preset(const std::string& preset) {
    const auto colon = preset.find(':');
    if (colon == std::string::npos) {
        return {preset, ""};
    }
    return {preset.substr(0, colon), preset.substr(colon + 1)};
}

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const usage_error&) {
        throw;
    } catch (const argument_error& e) {
        throw usage_error(e.what());
    }
}

// Everything a preset produces; files are written by run_preset.
struct preset_output {
    std::string symbol_id;
    singular_value_spectrum spectrum;
    fit_window window;
    std::optional<bound_curves> bounds;
    nlohmann::json fits = nlohmann::json::object();
    nlohmann::json provenance = nlohmann::json::object();
    std::vector<preset_check> checks;

    void check(std::string name, bool passed, std::string detail) {
        checks.push_back({std::move(name), passed, std::move(detail)});
    }
};

struct preset_context {
    const experiment_config& config;
    symbol_ptr phi;
    preset_output out;
};

spectrum_options spectrum_options_for(const experiment_config& config) {
    spectrum_options options;
    options.prec = as_usage([&] { return precision::parse(config.precision); });
    return options;
}

fit_window window_or(const experiment_config& config, fit_window fallback) {
    return config.window ? *config.window : fallback;
}

void compute_spectrum(preset_context& ctx, int n_max) {
    ctx.out.spectrum = approx_numbers(*ctx.phi, n_max, spectrum_options_for(ctx.config));
    ctx.out.provenance["spectrum"] = spectrum_provenance(ctx.out.spectrum);
}

std::optional<model_ranking> rank_spectrum(preset_context& ctx) {
    try {
        model_ranking ranking = model_select(series::from(ctx.out.spectrum), ctx.out.window);
        ctx.out.fits["spectrum"] = ranking_to_json(ranking);
        return ranking;
    } catch (const std::exception& e) {
        ctx.out.fits["spectrum"] = {{"error", e.what()}};
        ctx.out.check("spectrum fit", false, e.what());
        return std::nullopt;
    }
}

void compute_bounds(preset_context& ctx, int n_max) {
    bound_options options;
    options.blaschke.grid = ctx.config.grid_t;
    if (ctx.config.grid_xi) {
        options.blaschke.xi_grid = *ctx.config.grid_xi;
    }
    ctx.out.bounds = compute_bound_curves(*ctx.phi, n_max, options);
    ctx.out.provenance["bounds"] = ctx.out.bounds->provenance;
}

// Rankings of the bound curves on the spectrum window, clipped to the computed range.
std::map<std::string, std::optional<model_ranking>> rank_bounds(preset_context& ctx) {
    std::map<std::string, std::optional<model_ranking>> rankings;
    const bound_curves& curves = *ctx.out.bounds;
    const std::vector<std::pair<std::string, const std::vector<double>*>> columns{
        {"lower_kernel", &curves.lower_kernel},
        {"lower_lastmin", &curves.lower_lastmin},
        {"upper_blaschke_proxy", &curves.upper_blaschke_proxy}};
    fit_window window = ctx.out.window;
    window.hi = std::min(window.hi, static_cast<int>(curves.n.size()));
    nlohmann::json fits = nlohmann::json::object();
    for (const auto& [name, values] : columns) {
        try {
            model_ranking ranking = model_select(series::from(*values), window);
            fits[name] = ranking_to_json(ranking);
            rankings[name] = std::move(ranking);
        } catch (const std::exception& e) {
            fits[name] = {{"error", e.what()}};
            rankings[name] = std::nullopt;
        }
    }
    ctx.out.fits["bounds"] = fits;
    return rankings;
}

void check_ranked_first(preset_context& ctx, const std::optional<model_ranking>& ranking,
                        decay_model expected) {
    const std::string name = std::string("spectrum ranks ") + model_name(expected) + " first";
    if (!ranking) {
        ctx.out.check(name, false, "no fit");
        return;
    }
    std::ostringstream detail;
    detail << "window [" << ctx.out.window.lo << ", " << ctx.out.window.hi << "], order:";
    for (const decay_fit& fit : ranking->fits) {
        detail << ' ' << model_name(fit.model);
    }
    ctx.out.check(name, ranking->best().model == expected, detail.str());
}

void check_prefers(preset_context& ctx, const std::string& curve,
                   const std::optional<model_ranking>& ranking, decay_model better,
                   decay_model worse) {
    const std::string name = curve + " prefers " + model_name(better) + " over " + model_name(worse);
    if (!ranking) {
        ctx.out.check(name, false, "no fit");
        return;
    }
    const double a = ranking->get(better).residual;
    const double b = ranking->get(worse).residual;
    ctx.out.check(name, a < b,
                  "residuals " + format_fixed("%.4g", a) + " vs " + format_fixed("%.4g", b));
}

int reliable_hi(const preset_context& ctx, int cap) {
    return std::min(cap, ctx.out.spectrum.reliable_count);
}

void preset_cusp_rates(preset_context& ctx) {
    const int n_max = ctx.config.n_max > 0 ? ctx.config.n_max : 60;
    compute_spectrum(ctx, n_max);
    ctx.out.window = window_or(ctx.config, {10, reliable_hi(ctx, n_max)});
    const auto ranking = rank_spectrum(ctx);
    check_ranked_first(ctx, ranking, decay_model::n_over_log);
    compute_bounds(ctx, ctx.out.window.hi);
    const auto bounds = rank_bounds(ctx);
    check_prefers(ctx, "kernel lower bound", bounds.at("lower_kernel"), decay_model::n_over_log,
                  decay_model::sqrt_n);
    check_prefers(ctx, "Blaschke upper proxy", bounds.at("upper_blaschke_proxy"),
                  decay_model::n_over_log, decay_model::sqrt_n);
    ctx.out.fits["prediction"] = "n_over_log";
}

void preset_lens_rates(preset_context& ctx) {
    const int n_max = ctx.config.n_max > 0 ? ctx.config.n_max : 60;
    compute_spectrum(ctx, n_max);
    ctx.out.window = window_or(ctx.config, {10, n_max});
    const auto ranking = rank_spectrum(ctx);
    check_ranked_first(ctx, ranking, decay_model::sqrt_n);
    if (ranking) {
        const double s = ranking->get(decay_model::sqrt_n).residual;
        const double l = ranking->get(decay_model::linear_n).residual;
        const double g = ranking->get(decay_model::n_over_log).residual;
        ctx.out.check("sqrt_n residual at most half of linear_n and n_over_log",
                      2.0 * s <= l && 2.0 * s <= g,
                      "residuals " + format_fixed("%.4g", s) + ", " + format_fixed("%.4g", l) +
                          ", " + format_fixed("%.4g", g));
        const double r2 = ranking->get(decay_model::sqrt_n).r2;
        ctx.out.check("sqrt_n R^2 > 0.99", r2 > 0.99, "R^2 = " + format_fixed("%.6f", r2));
    }
    compute_bounds(ctx, std::min(ctx.out.window.hi, 40));
    rank_bounds(ctx);
    ctx.out.fits["prediction"] = "sqrt_n";
}

void preset_polygon(preset_context& ctx, int p) {
    const int n_max = ctx.config.n_max > 0 ? ctx.config.n_max : 50;
    compute_spectrum(ctx, n_max);
    ctx.out.window = window_or(ctx.config, {10, n_max});
    const auto ranking = rank_spectrum(ctx);
    check_ranked_first(ctx, ranking, decay_model::sqrt_n);
    const double expected = 1.0 - 2.0 / p;
    nlohmann::json exponents = nlohmann::json::array();
    for (const contact& c : ctx.phi->contacts()) {
        const double beta = holder_exponent(*ctx.phi, boundary_angle(c.angle), holder_model::power);
        exponents.push_back({{"angle", c.angle}, {"exponent", beta}});
        ctx.out.check("Holder exponent at vertex " + format_fixed("%.6f", c.angle) +
                          " within 0.05 of " + format_fixed("%.4f", expected),
                      std::abs(beta - expected) <= 0.05, "measured " + format_fixed("%.6f", beta));
    }
    ctx.out.fits["holder_exponents"] = exponents;
    ctx.out.fits["prediction"] = "sqrt_n";
    compute_bounds(ctx, std::min(ctx.out.window.hi, 40));
    rank_bounds(ctx);
}

// max/min of the ratio over t = 2^{-k}, k = 8..20.
std::pair<double, double> ratio_family_range(const std::function<double(double)>& ratio) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int k = 8; k <= 20; ++k) {
        const double r = ratio(std::ldexp(1.0, -k));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

void preset_shapiro_taylor(preset_context& ctx, double theta) {
    const symbol& phi = *ctx.phi;
    const regularity_report reg =
        regularity_check(phi, modulus_of_continuity::h_log(), phi.window_radii().front());
    ctx.out.provenance["regularity"] = {{"omega", "h*log(1/h)"},
                                        {"C", reg.C},
                                        {"c", reg.c},
                                        {"reluc_levels", reg.reluc_levels}};
    ctx.out.check("regularity check reports (reluc) failure", !reg.reluc_holds,
                  "C = " + format_fixed("%.4g", reg.C) + " at the deepest level");
    const auto gap_range = ratio_family_range([&](double t) {
        return std::abs(1.0 - phi.boundary(t)) / (t * std::pow(std::log(1.0 / t), theta));
    });
    const auto modulus_range = ratio_family_range([&](double t) {
        return (1.0 - std::abs(phi.boundary(t))) / (t * std::pow(std::log(1.0 / t), theta - 1.0));
    });
    for (const auto& [name, range] :
         {std::pair{std::string("|1 - phi| / (t log^theta)"), gap_range},
          std::pair{std::string("(1 - |phi|) / (t log^(theta-1))"), modulus_range}}) {
        ctx.out.check(name + " bounded on the dyadic grid",
                      range.first > 0.0 && range.second <= 4.0 * range.first,
                      "range [" + format_fixed("%.4g", range.first) + ", " +
                          format_fixed("%.4g", range.second) + "]");
    }

    const int n_max = ctx.config.n_max > 0 ? ctx.config.n_max : 60;
    compute_spectrum(ctx, n_max);
    ctx.out.window = window_or(ctx.config, {10, reliable_hi(ctx, n_max)});
    const auto ranking = rank_spectrum(ctx);
    if (ranking) {
        const double power = ranking->get(decay_model::power).residual;
        ctx.out.check("power ranked above sqrt_n and linear_n",
                      power < ranking->get(decay_model::sqrt_n).residual &&
                          power < ranking->get(decay_model::linear_n).residual,
                      "power residual " + format_fixed("%.4g", power));
    }
    const double predicted = 4.0 / theta;
    try {
        const schatten_estimate est = schatten_exponent(series::from(ctx.out.spectrum),
                                                        ctx.out.window);
        ctx.out.fits["schatten"] = {{"p_star", est.p_star},
                                    {"alpha", est.alpha},
                                    {"alpha_first_half", est.alpha_first_half},
                                    {"alpha_second_half", est.alpha_second_half},
                                    {"predicted_threshold", predicted}};
        ctx.out.check("Schatten p_star within a factor 2 of 4/theta",
                      est.p_star >= 0.5 * predicted && est.p_star <= 2.0 * predicted,
                      "p_star = " + format_fixed("%.4f", est.p_star) + ", 4/theta = " +
                          format_fixed("%.4f", predicted));
    } catch (const diagnostic_error& e) {
        ctx.out.fits["schatten"] = {{"error", e.what()}, {"predicted_threshold", predicted}};
        ctx.out.check("Schatten p_star within a factor 2 of 4/theta", false, e.what());
    }
    compute_bounds(ctx, std::min(ctx.out.window.hi, 40));
    rank_bounds(ctx);
}

void preset_spread(preset_context& ctx, int p) {
    const symbol& psi = *ctx.phi;
    const std::vector<boundary_angle> found = contact_set(psi, 1e-6, spread_sweep);
    const double resolution = 2.0 * pi / spread_sweep;
    bool matched = found.size() == psi.contacts().size();
    double worst = 0.0;
    for (const contact& c : psi.contacts()) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const boundary_angle& t : found) {
            nearest = std::min(nearest, std::abs(reduce_angle(t.value() - c.angle)));
        }
        worst = std::max(worst, nearest);
    }
    matched = matched && worst <= resolution;
    ctx.out.check("contact set equals the " + std::to_string(p) + " declared angles", matched,
                  std::to_string(found.size()) + " found, worst offset " +
                      format_fixed("%.3g", worst));

    double sup = 0.0;
    for (int k = 0; k < spread_sweep; ++k) {
        const double t = -pi + 2.0 * pi * (k + 0.5) / spread_sweep;
        bool near = false;
        for (const contact& c : psi.contacts()) {
            near = near || std::abs(reduce_angle(t - c.angle)) < 0.1;
        }
        if (!near) {
            sup = std::max(sup, std::abs(psi.boundary(t)));
        }
    }
    ctx.out.check("sup |psi| off 0.1-neighbourhoods below 1 - 1e-4", sup < 1.0 - 1e-4,
                  "sup = " + format_fixed("%.10f", sup));

    const int n_max = ctx.config.n_max > 0 ? ctx.config.n_max : 60;
    compute_spectrum(ctx, n_max);
    ctx.out.window = window_or(ctx.config, {10, reliable_hi(ctx, n_max)});
    const auto ranking = rank_spectrum(ctx);
    check_ranked_first(ctx, ranking, decay_model::n_over_log);
    ctx.out.fits["prediction"] = "n_over_log";
    compute_bounds(ctx, std::min(ctx.out.window.hi, 40));
    rank_bounds(ctx);
}

void lemma_claims(preset_context& ctx, const std::string& id) {
    const symbol_ptr phi = parse_symbol(id);
    const modulus_of_continuity& omega = *phi->modulus();
    const regularity_report reg = regularity_check(*phi, omega, phi->window_radii().front());
    nlohmann::json rows = nlohmann::json::array();
    bool all = reg.holds;
    for (int N = 2; N <= 8; ++N) {
        const int d = claim_multiplicity(omega, reg, N);
        const claim_result r = claim_check(*phi, blaschke_schedule::for_symbol(*phi, N, d), omega, reg);
        rows.push_back({{"N", N},
                        {"d", d},
                        {"log_max_modulus", r.log_max_modulus},
                        {"log_bound", r.log_bound},
                        {"holds", r.holds},
                        {"swept", r.swept}});
        all = all && r.holds;
    }
    ctx.out.fits["claim"][id] = rows;
    ctx.out.check("Blaschke modulus bound holds for " + id + " at N = 2..8 with d = d_N", all,
                  "regularity C = " + format_fixed("%.4g", reg.C) + ", c = " +
                      format_fixed("%.4g", reg.c));
}

void preset_lemma_suite(preset_context& ctx) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto random_point = [&](double max_log_gap) {
        const double gap = std::exp(-max_log_gap * unit(rng));
        const double angle = 2.0 * pi * unit(rng) - pi;
        return disk_point::anchored(unit_point(angle), complex(gap, 0.0));
    };

    int triples = 0;
    int violations = 0;
    int attempts = 0;
    while (triples < 10000 && attempts < 1000000) {
        ++attempts;
        const disk_point w0 = random_point(20.0);
        const double M = 0.1 + 9.9 * unit(rng);
        const double r = M * w0.one_minus_abs() * unit(rng);
        const complex w_value = w0.value() + std::polar(r, 2.0 * pi * unit(rng));
        if (std::abs(w_value) >= 1.0) {
            continue;
        }
        const mobius_check check = mobius_bound_check(disk_point(w_value), w0, M);
        if (!check.applicable) {
            continue;
        }
        ++triples;
        violations += check.holds ? 0 : 1;
    }
    ctx.out.check("Mobius distance bound on 10^4 random triples", triples == 10000 && violations == 0,
                  std::to_string(triples) + " triples, " + std::to_string(violations) +
                      " violations");

    lemma_claims(ctx, "cusp");
    lemma_claims(ctx, "lens:0.5");

    nlohmann::json newman = nlohmann::json::array();
    bool newman_ok = true;
    for (int k = 1; k <= 9; ++k) {
        const double sigma = 0.1 * k;
        const double product = newman_product(sigma);
        const double floor = std::exp(-5.0 / (1.0 - sigma));
        newman.push_back({{"sigma", sigma}, {"product", product}, {"floor", floor}});
        newman_ok = newman_ok && product >= floor;
    }
    ctx.out.fits["newman"] = newman;
    ctx.out.check("Newman product above exp(-5/(1-sigma)) for sigma = 0.1..0.9", newman_ok, "");

    int pairs = 0;
    int sp_violations = 0;
    for (const char* id : {"cusp", "lens:0.5", "polygon:4", "shapiro-taylor:3", "spread:cusp:0:4",
                           "rz:0.7"}) {
        const symbol_ptr phi = parse_symbol(id);
        for (int k = 0; k < 200; ++k) {
            const complex z = random_point(6.0).value();
            const complex w = random_point(6.0).value();
            const double before = pseudo_hyperbolic(disk_point(z), disk_point(w));
            const double after = pseudo_hyperbolic(disk_point((*phi)(z)), disk_point((*phi)(w)));
            ++pairs;
            sp_violations += after <= before * (1.0 + 1e-9) + 1e-12 ? 0 : 1;
        }
    }
    ctx.out.check("Schwarz-Pick contraction on gallery symbols", sp_violations == 0,
                  std::to_string(pairs) + " pairs, " + std::to_string(sp_violations) +
                      " violations");

    const int n_max = ctx.config.n_max > 0 ? ctx.config.n_max : 16;
    compute_spectrum(ctx, n_max);
    ctx.out.window = window_or(ctx.config, {10, reliable_hi(ctx, n_max)});
    rank_spectrum(ctx);
    compute_bounds(ctx, n_max);
}

nlohmann::json checks_to_json(const std::vector<preset_check>& checks) {
    nlohmann::json out = nlohmann::json::array();
    for (const preset_check& c : checks) {
        out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return out;
}

std::string stream_to_string(const std::function<void(std::ostream&)>& write) {
    std::ostringstream out;
    write(out);
    return out.str();
}

}  // namespace

fit_window parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw usage_error("window must be lo:hi, got '" + text + "'");
    }
    const fit_window window{as_usage([&] { return parse_int(text.substr(0, colon)); }),
                            as_usage([&] { return parse_int(text.substr(colon + 1)); })};
    if (window.lo < 3 || window.hi < window.lo) {
        throw usage_error("window must satisfy 3 <= lo <= hi, got '" + text + "'");
    }
    return window;
}

void experiment_config::set(const std::string& key, const std::string& value) {
    as_usage([&] {
        if (key == "preset") {
            preset = value;
        } else if (key == "symbol") {
            symbol = value;
        } else if (key == "n_max") {
            n_max = parse_int(value);
        } else if (key == "precision") {
            precision = value;
        } else if (key == "grid_t") {
            grid_t = parse_int(value);
        } else if (key == "grid_xi") {
            grid_xi = parse_int(value);
        } else if (key == "window") {
            window = parse_window(value);
        } else if (key == "out") {
            out = value;
        } else {
            throw usage_error("unknown configuration key '" + key + "'");
        }
    });
}

void experiment_config::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw usage_error("cannot read configuration file '" + file.string() + "'");
    }
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw usage_error(file.string() + ":" + std::to_string(number) +
                              ": expected key=value");
        }
        set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
}

nlohmann::json experiment_config::to_json() const {
    nlohmann::json j = {{"preset", preset},      {"symbol", symbol},
                        {"n_max", n_max},        {"precision", precision},
                        {"grid_t", grid_t},      {"grid_xi", nullptr},
                        {"window", nullptr}};
    if (grid_xi) {
        j["grid_xi"] = *grid_xi;
    }
    if (window) {
        j["window"] = {window->lo, window->hi};
    }
    return j;
}

std::filesystem::path default_output_root() {
    const char* root = std::getenv("HARDYLAB_OUT");
    return root && *root ? std::filesystem::path(root) : std::filesystem::path("hardylab-out");
}

std::filesystem::path default_output_dir(const std::string& preset) {
    std::string name = preset;
    for (char& ch : name) {
        if (ch == ':') {
            ch = '_';
        }
    }
    return default_output_root() / name;
}

bool experiment_report::passed() const {
    for (const preset_check& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"cusp-rates",       "lens-rates:<theta>",
                                                "polygon:<p>",      "shapiro-taylor:<theta>",
                                                "spread-schatten:<p>", "lemma-suite"};
    return names;
}

experiment_report run_preset(const experiment_config& config) {
    const preset_spec spec = split_preset(config.preset);
    std::function<void(preset_context&)> body;
    std::string symbol_id;
    auto no_argument = [&] {
        if (!spec.argument.empty()) {
            throw usage_error("preset '" + spec.name + "' takes no argument");
        }
    };
    auto need_argument = [&] {
        if (spec.argument.empty()) {
            throw usage_error("preset '" + spec.name + "' needs an argument");
        }
    };
    if (spec.name == "cusp-rates") {
        no_argument();
        symbol_id = "cusp";
        body = preset_cusp_rates;
    } else if (spec.name == "lens-rates") {
        need_argument();
        as_usage([&] { return parse_real(spec.argument); });
        symbol_id = "lens:" + spec.argument;
        body = preset_lens_rates;
    } else if (spec.name == "polygon") {
        need_argument();
        const int p = as_usage([&] { return parse_int(spec.argument); });
        symbol_id = "polygon:" + spec.argument;
        body = [p](preset_context& ctx) { preset_polygon(ctx, p); };
    } else if (spec.name == "shapiro-taylor") {
        need_argument();
        const double theta = as_usage([&] { return parse_real(spec.argument); });
        symbol_id = "shapiro-taylor:" + spec.argument;
        body = [theta](preset_context& ctx) { preset_shapiro_taylor(ctx, theta); };
    } else if (spec.name == "spread-schatten") {
        need_argument();
        const int p = as_usage([&] { return parse_int(spec.argument); });
        symbol_id = "spread:cusp:0:" + spec.argument;
        body = [p](preset_context& ctx) { preset_spread(ctx, p); };
    } else if (spec.name == "lemma-suite") {
        no_argument();
        symbol_id = "cusp";
        body = preset_lemma_suite;
    } else {
        throw usage_error("unknown preset '" + config.preset + "'");
    }
    if (!config.symbol.empty() && config.symbol != symbol_id) {
        throw usage_error("preset '" + config.preset + "' fixes the symbol to '" + symbol_id +
                          "'");
    }

    preset_context ctx{config, as_usage([&] { return parse_symbol(symbol_id); }), {}};
    ctx.out.symbol_id = symbol_id;
    body(ctx);

    experiment_report report;
    report.preset = config.preset;
    report.out = config.out.empty() ? default_output_dir(config.preset) : config.out;
    report.checks = ctx.out.checks;

    ctx.out.fits["window"] = {ctx.out.window.lo, ctx.out.window.hi};
    ctx.out.fits["checks"] = checks_to_json(report.checks);
    ctx.out.fits["passed"] = report.passed();
    nlohmann::json provenance = ctx.out.provenance;
    provenance["preset"] = config.preset;
    provenance["symbol"] = symbol_id;
    provenance["config"] = config.to_json();
    provenance["constants"] = "bounds are reported up to absolute constants";

    std::filesystem::create_directories(report.out);
    write_file_atomic(report.out / "spectrum.csv", stream_to_string([&](std::ostream& out) {
                          write_spectrum_csv(out, ctx.out.spectrum);
                      }));
    write_file_atomic(report.out / "bounds.csv", stream_to_string([&](std::ostream& out) {
                          write_bounds_csv(out, *ctx.out.bounds);
                      }));
    write_file_atomic(report.out / "fits.json", ctx.out.fits.dump(2) + "\n");
    write_file_atomic(report.out / "provenance.json", provenance.dump(2) + "\n");
    return report;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path temp = path;
    temp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("cannot write '" + temp.string() + "'");
        }
    }
    std::filesystem::rename(temp, path);
}

std::string format_complex(complex z) {
    const double re = z.real() == 0.0 ? 0.0 : z.real();
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    if (im == 0.0) {
        return format_real(re);
    }
    std::string out = re == 0.0 ? "" : format_real(re);
    if (im > 0.0 && !out.empty()) {
        out += '+';
    }
    if (im == 1.0) {
        return out + "i";
    }
    if (im == -1.0) {
        return out + "-i";
    }
    return out + format_real(im) + "i";
}

}  // namespace hardy
