#pragma once

// Subcommands behind the ccsim executable. Each returns the process exit code:
// 0 ok, 1 check failure, 2 config error, 3 numerical failure.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccsim/verify.hpp"
#include "ccsim_cli/config.hpp"

namespace ccsim::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

struct CommonOptions {
    std::optional<double> tol;  ///< resonance tolerance for the effective-Hamiltonian derivation
    int jobs = 0;               ///< 0 = available parallelism
    std::string output;         ///< CSV or hspec destination, overrides the config
    std::string golden;         ///< compare the CSV against this file
    bool bless = false;         ///< rewrite `golden` instead of comparing
};

int cmd_run(const std::string& config_path, const CommonOptions& options, std::ostream& out, std::ostream& err);

/// Algebra and pulse checks only, printed as a table.
int cmd_verify(const std::string& config_path, const CommonOptions& options, std::ostream& out, std::ostream& err);

struct DeriveOptions {
    /// Qubit name and state; every factor on that qubit becomes <s|.|s>.
    std::vector<std::pair<std::string, QubitState>> project;
    bool allow_unpaired = false;
};

int cmd_derive(const std::string& hspec_path, const CommonOptions& options, const DeriveOptions& derive,
               std::ostream& out, std::ostream& err);

/// `param` is "ratio", "delta" or any [model]/[james]/[evolve] key.
int cmd_scan(const std::string& config_path, const std::string& param, const std::string& grid,
             const CommonOptions& options, std::ostream& out, std::ostream& err);

/// Runs the named checks, in order; `rwa_tolerance` bounds the "rwa" check.
/// Throws verify::NumericalFailure when a propagation exceeds the unitarity
/// bound.
std::vector<verify::CheckReport> run_checks(const Scenario& s, const std::vector<std::string>& checks,
                                            double rwa_tolerance);

}  // namespace ccsim::cli
