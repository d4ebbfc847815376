#pragma once

// INI scenario configs. Sections and keys are listed in the README; unknown
// sections or keys are errors.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccsim/scenario.hpp"

namespace ccsim::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string name;  ///< [scenario] name, else the file stem
    Scenario scenario;
    std::vector<std::string> checks;
    double scan_tolerance = 5e-2;
    std::filesystem::path output;  ///< empty = standard output
};

/// Check names understood by `run`.
const std::vector<std::string>& known_checks();

/// Default check list for a scheme.
std::vector<std::string> default_checks(Scheme scheme);

RunConfig load_config(const std::filesystem::path& path);

/// `base_dir` resolves relative paths (hspec file, output).
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir, const std::string& name);

/// "1.5", "-2e3i", "0.3-0.4i", "i".
Complex parse_complex(std::string_view text);
double parse_real(std::string_view text);

/// Comma-separated reals; at least one.
std::vector<double> parse_grid(std::string_view text);

/// Sets a [model], [james] or [evolve] key for scan sweeps. Throws
/// ConfigError for names that do not apply to the scenario's scheme.
void set_param(Scenario& s, const std::string& key, double value);

}  // namespace ccsim::cli
