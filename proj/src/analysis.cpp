#include "hardy/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hardy/errors.hpp"

namespace hardy {

const char* model_name(decay_model model) {
    switch (model) {
        case decay_model::sqrt_n: return "sqrt_n";
        case decay_model::n_over_log: return "n_over_log";
        case decay_model::linear_n: return "linear_n";
        case decay_model::power: return "power";
    }
    return "unknown";
}

decay_model parse_model(const std::string& name) {
    for (decay_model m : all_models()) {
        if (name == model_name(m)) {
            return m;
        }
    }
    throw argument_error("unknown decay model '" + name + "'");
}

const std::vector<decay_model>& all_models() {
    static const std::vector<decay_model> models{decay_model::sqrt_n, decay_model::n_over_log,
                                                 decay_model::linear_n, decay_model::power};
    return models;
}

series series::from(const singular_value_spectrum& spectrum) {
    return {spectrum.values, spectrum.reliable_count};
}

series series::from(std::vector<double> values) {
    const int n = static_cast<int>(values.size());
    return {std::move(values), n};
}

double regressor(decay_model model, int n) {
    const double x = n;
    switch (model) {
        case decay_model::sqrt_n: return std::sqrt(x);
        case decay_model::n_over_log: return x / std::log(x);
        case decay_model::linear_n: return x;
        case decay_model::power: return std::log(x);
    }
    return x;
}

decay_fit fit_decay(const series& data, decay_model model, fit_window window) {
    if (window.lo < 1 || window.hi < window.lo) {
        throw argument_error("fit window must satisfy 1 <= lo <= hi");
    }
    if (model == decay_model::n_over_log && window.lo < 3) {
        throw argument_error("the n/log n regressor needs n >= 3");
    }
    const int usable = std::min(data.reliable_count, static_cast<int>(data.values.size()));
    if (window.hi > usable) {
        throw argument_error("fit window [" + std::to_string(window.lo) + ", " +
                             std::to_string(window.hi) + "] exceeds the reliable range " +
                             std::to_string(usable));
    }
    if (window.hi - window.lo + 1 < 6) {
        throw argument_error("fit_decay needs at least 6 points in the window");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (int n = window.lo; n <= window.hi; ++n) {
        const double s = data.values[n - 1];
        if (!(s > 0.0)) {
            throw argument_error("fit_decay needs positive values in the window");
        }
        xs.push_back(regressor(model, n));
        ys.push_back(std::log(s));
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    decay_fit fit;
    fit.model = model;
    fit.window = window;
    const double slope = sxy / sxx;
    fit.beta = -slope;
    fit.alpha = my - slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.alpha - fit.beta * xs[i]);
        fit.residuals.push_back(r);
        fit.residual += r * r;
    }
    fit.r2 = syy > 0.0 ? 1.0 - fit.residual / syy : 1.0;
    return fit;
}

const decay_fit& model_ranking::get(decay_model model) const {
    for (const decay_fit& f : fits) {
        if (f.model == model) {
            return f;
        }
    }
    throw argument_error("model not present in ranking");
}

model_ranking model_select(const series& data, fit_window window) {
    model_ranking ranking;
    for (decay_model m : all_models()) {
        ranking.fits.push_back(fit_decay(data, m, window));
    }
    std::stable_sort(ranking.fits.begin(), ranking.fits.end(),
                     [](const decay_fit& a, const decay_fit& b) { return a.residual < b.residual; });
    const double best = ranking.fits.front().residual;
    for (const decay_fit& f : ranking.fits) {
        ranking.ratios.push_back(best > 0.0 ? f.residual / best : (f.residual > 0.0 ? INFINITY : 1.0));
    }
    return ranking;
}

schatten_estimate schatten_exponent(const series& data, fit_window window) {
    schatten_estimate out;
    out.alpha = fit_decay(data, decay_model::power, window).beta;
    const int middle = (window.lo + window.hi) / 2;
    out.alpha_first_half = fit_decay(data, decay_model::power, {window.lo, middle}).beta;
    out.alpha_second_half = fit_decay(data, decay_model::power, {middle, window.hi}).beta;
    if (!(out.alpha > 0.0)) {
        throw diagnostic_error("schatten_exponent: non-positive power slope " +
                               std::to_string(out.alpha));
    }
    const double spread = std::abs(out.alpha_first_half - out.alpha_second_half) /
                          std::max(std::abs(out.alpha_first_half), std::abs(out.alpha_second_half));
    if (spread > 0.5) {
        throw diagnostic_error("schatten_exponent: power slope drifts from " +
                               std::to_string(out.alpha_first_half) + " to " +
                               std::to_string(out.alpha_second_half) +
                               " across the window; decay is not polynomial");
    }
    out.p_star = 1.0 / out.alpha;
    return out;
}

nlohmann::json fit_to_json(const decay_fit& fit) {
    return {{"model", model_name(fit.model)},
            {"alpha", fit.alpha},
            {"beta", fit.beta},
            {"r2", fit.r2},
            {"window", {fit.window.lo, fit.window.hi}},
            {"residual", fit.residual}};
}

nlohmann::json ranking_to_json(const model_ranking& ranking) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < ranking.fits.size(); ++i) {
        nlohmann::json f = fit_to_json(ranking.fits[i]);
        f["rank"] = i + 1;
        f["residual_ratio"] = ranking.ratios[i];
        out.push_back(f);
    }
    return out;
}

void write_residuals_csv(std::ostream& out, const model_ranking& ranking) {
    std::vector<decay_model> order = all_models();
    out << "n";
    for (decay_model m : order) {
        out << ',' << model_name(m);
    }
    out << '\n';
    const fit_window w = ranking.fits.front().window;
    char buffer[64];
    for (int n = w.lo; n <= w.hi; ++n) {
        out << n;
        for (decay_model m : order) {
            std::snprintf(buffer, sizeof buffer, "%.17g", ranking.get(m).residuals[n - w.lo]);
            out << ',' << buffer;
        }
        out << '\n';
    }
}

}  // namespace hardy
