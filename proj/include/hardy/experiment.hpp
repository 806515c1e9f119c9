#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hardy/analysis.hpp"
#include "hardy/errors.hpp"
#include "json.hpp"

namespace hardy {

// Bad command line, preset name or symbol identifier.
class usage_error : public argument_error {
public:
    using argument_error::argument_error;
};

struct experiment_config {
    std::string preset;
    std::string symbol;
    int n_max = 0;
    std::string precision = "double";
    int grid_t = 65536;
    // Unset means the consumer's default (64 for the Blaschke statistic, 512 for Carleson).
    std::optional<int> grid_xi;
    std::optional<fit_window> window;
    std::filesystem::path out;

    // Keys: preset, symbol, n_max, precision, grid_t, grid_xi, window (lo:hi), out.
    void set(const std::string& key, const std::string& value);
    // One key=value per line; blank lines and lines starting with # are ignored.
    void load(const std::filesystem::path& file);
    nlohmann::json to_json() const;
};

fit_window parse_window(const std::string& text);

// The output root: $HARDYLAB_OUT when set, else ./hardylab-out.
std::filesystem::path default_output_root();
std::filesystem::path default_output_dir(const std::string& preset);

struct preset_check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct experiment_report {
    std::string preset;
    std::filesystem::path out;
    std::vector<preset_check> checks;
    bool passed() const;
};

const std::vector<std::string>& preset_names();

// Runs a preset and writes spectrum.csv, bounds.csv, fits.json and provenance.json into
// config.out (or the default directory). Unknown presets raise usage_error.
experiment_report run_preset(const experiment_config& config);

// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Shortest round-trip form: "1", "0.5+0.5i", "-0.25-1e-20i".
std::string format_complex(complex z);

}  // namespace hardy
