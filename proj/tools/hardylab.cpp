#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hardy/analysis.hpp"
#include "hardy/bounds.hpp"
#include "hardy/experiment.hpp"
#include "hardy/hardy_operator.hpp"

namespace {

constexpr int exit_failed_checks = 2;
constexpr int exit_error = 1;
constexpr int exit_usage = 64;

struct shared_flags {
    int n_max = 0;
    std::string precision;
    std::string out;
    int grid_t = 0;
    int grid_xi = 0;
    std::string window;
    std::string config;
    CLI::Option* n_max_opt = nullptr;
    CLI::Option* precision_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* grid_t_opt = nullptr;
    CLI::Option* grid_xi_opt = nullptr;
    CLI::Option* window_opt = nullptr;
    CLI::Option* config_opt = nullptr;

    void attach(CLI::App* app) {
        n_max_opt = app->add_option("--n-max", n_max, "Largest index n");
        precision_opt = app->add_option("--precision", precision, "double or extended-<k>");
        out_opt = app->add_option("--out", out, "Output directory");
        grid_t_opt = app->add_option("--grid-t", grid_t, "Boundary grid size");
        grid_xi_opt = app->add_option("--grid-xi", grid_xi, "Window centre grid size");
        window_opt = app->add_option("--window", window, "Fit window lo:hi");
        config_opt = app->add_option("--config", config, "key=value configuration file");
    }

    // The configuration file first, then explicit flags.
    hardy::experiment_config resolve() const {
        hardy::experiment_config cfg;
        if (*config_opt) {
            cfg.load(config);
        }
        if (*n_max_opt) cfg.set("n_max", std::to_string(n_max));
        if (*precision_opt) cfg.set("precision", precision);
        if (*out_opt) cfg.set("out", out);
        if (*grid_t_opt) cfg.set("grid_t", std::to_string(grid_t));
        if (*grid_xi_opt) cfg.set("grid_xi", std::to_string(grid_xi));
        if (*window_opt) cfg.set("window", window);
        return cfg;
    }
};

int command_run(const std::string& preset, const shared_flags& flags) {
    hardy::experiment_config cfg = flags.resolve();
    if (!preset.empty()) {
        cfg.preset = preset;
    }
    if (cfg.preset.empty()) {
        throw hardy::usage_error("run needs a preset");
    }
    const hardy::experiment_report report = hardy::run_preset(cfg);
    for (const hardy::preset_check& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) {
            std::cout << " (" << c.detail << ')';
        }
        std::cout << '\n';
    }
    std::cout << "wrote " << report.out.string() << '\n';
    return report.passed() ? 0 : exit_failed_checks;
}

int command_eval(const std::string& id, const std::string& interior, const std::string& boundary,
                 const std::string& radial) {
    const int given = !interior.empty() + !boundary.empty() + !radial.empty();
    if (given != 1) {
        throw hardy::usage_error("eval needs exactly one of --interior, --boundary, --radial");
    }
    hardy::symbol_ptr phi;
    hardy::complex value;
    try {
        phi = hardy::parse_symbol(id);
        if (!interior.empty()) {
            value = (*phi)(hardy::parse_complex(interior));
        } else if (!boundary.empty()) {
            value = phi->boundary(hardy::parse_real(boundary));
        } else {
            value = (*phi)(hardy::complex(hardy::parse_real(radial), 0.0));
        }
    } catch (const hardy::argument_error& e) {
        throw hardy::usage_error(e.what());
    }
    std::cout << hardy::format_complex(value) << '\n';
    return 0;
}

// Reads column `column` (or the second one) of a CSV file with a header row.
hardy::series read_series(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) {
        throw hardy::usage_error("cannot read '" + path + "'");
    }
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    std::size_t index = 1;
    if (!column.empty()) {
        const auto it = std::find(header.begin(), header.end(), column);
        if (it == header.end()) {
            throw hardy::usage_error("no column '" + column + "' in '" + path + "'");
        }
        index = static_cast<std::size_t>(it - header.begin());
    }
    const auto reliable_it = std::find(header.begin(), header.end(), "reliable");
    std::vector<double> values;
    int reliable = 0;
    bool in_reliable_prefix = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() <= index) {
            throw hardy::usage_error("short row in '" + path + "'");
        }
        values.push_back(cells[index] == "nan" ? std::nan("") : hardy::parse_real(cells[index]));
        if (reliable_it != header.end()) {
            const std::size_t r = static_cast<std::size_t>(reliable_it - header.begin());
            in_reliable_prefix = in_reliable_prefix && r < cells.size() && cells[r] == "1";
            reliable += in_reliable_prefix ? 1 : 0;
        }
    }
    hardy::series data = hardy::series::from(values);
    if (reliable_it != header.end()) {
        data.reliable_count = reliable;
    }
    return data;
}

int command_fit(const std::string& path, const std::string& column, const shared_flags& flags) {
    const hardy::experiment_config cfg = flags.resolve();
    const hardy::series data = read_series(path, column);
    hardy::fit_window window{10, data.reliable_count};
    if (cfg.window) {
        window = *cfg.window;
    }
    const hardy::model_ranking ranking = hardy::model_select(data, window);
    const nlohmann::json fits = hardy::ranking_to_json(ranking);
    if (!cfg.out.empty()) {
        std::filesystem::create_directories(cfg.out);
        hardy::write_file_atomic(cfg.out / "fits.json", fits.dump(2) + "\n");
        std::ostringstream residuals;
        hardy::write_residuals_csv(residuals, ranking);
        hardy::write_file_atomic(cfg.out / "residuals.csv", residuals.str());
    }
    std::cout << fits.dump(2) << '\n';
    return 0;
}

int command_bounds(const std::string& id, const shared_flags& flags) {
    const hardy::experiment_config cfg = flags.resolve();
    hardy::symbol_ptr phi;
    try {
        phi = hardy::parse_symbol(id);
    } catch (const hardy::argument_error& e) {
        throw hardy::usage_error(e.what());
    }
    hardy::bound_options options;
    options.blaschke.grid = cfg.grid_t;
    if (cfg.grid_xi) {
        options.blaschke.xi_grid = *cfg.grid_xi;
    }
    const hardy::bound_curves curves =
        hardy::compute_bound_curves(*phi, cfg.n_max > 0 ? cfg.n_max : 24, options);
    std::ostringstream csv;
    hardy::write_bounds_csv(csv, curves);
    if (cfg.out.empty()) {
        std::cout << csv.str();
        return 0;
    }
    std::filesystem::create_directories(cfg.out);
    hardy::write_file_atomic(cfg.out / "bounds.csv", csv.str());
    nlohmann::json provenance = curves.provenance;
    provenance["symbol"] = id;
    provenance["config"] = cfg.to_json();
    hardy::write_file_atomic(cfg.out / "provenance.json", provenance.dump(2) + "\n");
    std::cout << "wrote " << cfg.out.string() << '\n';
    return 0;
}

int command_carleson(const std::string& id, const shared_flags& flags) {
    const hardy::experiment_config cfg = flags.resolve();
    hardy::symbol_ptr phi;
    try {
        phi = hardy::parse_symbol(id);
    } catch (const hardy::argument_error& e) {
        throw hardy::usage_error(e.what());
    }
    const int xi_grid = cfg.grid_xi ? *cfg.grid_xi : 512;
    std::printf("h,rho,rho_over_h\n");
    for (int k = 3; k <= 8; ++k) {
        const double h = std::ldexp(1.0, -k);
        const double rho = hardy::carleson_function(*phi, h, xi_grid, cfg.grid_t);
        std::printf("%.17g,%.17g,%.17g\n", h, rho, rho / h);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments on composition operators of the Hardy space"};
    app.require_subcommand(1);
    app.footer("Exit status: 0 success, 2 failed checks, 1 errors, 64 usage errors.\n"
               "HARDYLAB_OUT overrides the default output root ./hardylab-out.");

    std::string preset;
    shared_flags run_flags;
    CLI::App* run = app.add_subcommand("run", "Run an experiment preset");
    run->add_option("preset", preset,
                    "cusp-rates, lens-rates:<theta>, polygon:<p>, shapiro-taylor:<theta>, "
                    "spread-schatten:<p>, lemma-suite");
    run_flags.attach(run);

    std::string eval_id, interior, boundary, radial;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate a symbol");
    eval->add_option("symbol", eval_id, "Symbol identifier")->required();
    eval->add_option("--interior", interior, "Interior point, e.g. 0.3+0.2i");
    eval->add_option("--boundary", boundary, "Boundary angle t of e^{it}");
    eval->add_option("--radial", radial, "Radius r in [0, 1]");

    std::string fit_path, fit_column;
    shared_flags fit_flags;
    CLI::App* fit = app.add_subcommand("fit", "Fit decay models to a CSV series");
    fit->add_option("csv", fit_path, "CSV file with a header row")->required();
    fit->add_option("--column", fit_column, "Column name (default: the second column)");
    fit_flags.attach(fit);

    std::string bounds_id;
    shared_flags bounds_flags;
    CLI::App* bounds = app.add_subcommand("bounds", "Compute lower and upper bound curves");
    bounds->add_option("symbol", bounds_id, "Symbol identifier")->required();
    bounds_flags.attach(bounds);

    std::string carleson_id;
    shared_flags carleson_flags;
    CLI::App* carleson = app.add_subcommand("carleson", "Carleson function at h = 2^-3..2^-8");
    carleson->add_option("symbol", carleson_id, "Symbol identifier")->required();
    carleson_flags.attach(carleson);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*run) return command_run(preset, run_flags);
        if (*eval) return command_eval(eval_id, interior, boundary, radial);
        if (*fit) return command_fit(fit_path, fit_column, fit_flags);
        if (*bounds) return command_bounds(bounds_id, bounds_flags);
        if (*carleson) return command_carleson(carleson_id, carleson_flags);
    } catch (const hardy::usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_usage;
}
