#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hardy/hardy_operator.hpp"
#include "json.hpp"

namespace hardy {

enum class decay_model { sqrt_n, n_over_log, linear_n, power };

const char* model_name(decay_model model);
decay_model parse_model(const std::string& name);
const std::vector<decay_model>& all_models();

struct fit_window {
    int lo = 10;
    int hi = 60;
};

// A positive series indexed from n = 1, with values beyond reliable_count excluded from fits.
struct series {
    std::vector<double> values;
    int reliable_count = 0;

    static series from(const singular_value_spectrum& spectrum);
    static series from(std::vector<double> values);
};

// log s_n = alpha - beta x(n), with x = sqrt(n), n / log n, n or log n.
struct decay_fit {
    decay_model model = decay_model::sqrt_n;
    double alpha = 0.0;
    double beta = 0.0;
    double residual = 0.0;
    double r2 = 0.0;
    fit_window window;
    std::vector<double> residuals;
};

double regressor(decay_model model, int n);

decay_fit fit_decay(const series& data, decay_model model, fit_window window);

struct model_ranking {
    std::vector<decay_fit> fits;
    // residual of each fit divided by the best residual, in ranking order.
    std::vector<double> ratios;
    const decay_fit& best() const { return fits.front(); }
    const decay_fit& get(decay_model model) const;
};

model_ranking model_select(const series& data, fit_window window);

struct schatten_estimate {
    double alpha = 0.0;
    double p_star = 0.0;
    double alpha_first_half = 0.0;
    double alpha_second_half = 0.0;
};

// alpha = power-law slope, p_star = 1/alpha; diagnostic_error when the decay is not
// polynomial on the window (slopes of the two halves differ by more than 50%) or alpha <= 0.
schatten_estimate schatten_exponent(const series& data, fit_window window);

nlohmann::json fit_to_json(const decay_fit& fit);
nlohmann::json ranking_to_json(const model_ranking& ranking);
void write_residuals_csv(std::ostream& out, const model_ranking& ranking);

}  // namespace hardy
