#pragma once

// Checks tying the engineered dynamics to the charge-conjugation algebra.
// Operator residuals are Frobenius norms, state residuals Euclidean.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccsim/evolve.hpp"
#include "ccsim/scenario.hpp"

namespace ccsim::verify {

struct CheckReport {
    std::string name;
    double residual;
    double tolerance;
    bool passed;  ///< residual <= tolerance (false for NaN)
    std::string context;
};

CheckReport make_report(std::string name, double residual, double tolerance, std::string context = {});

/// A subspace a check relies on is not closed under C.
class LeakageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A propagator drifted from unitarity beyond the configured bound.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ||P (CQ + QC) P||_F
CheckReport check_anticommutation(const Operator& c, const Operator& q, const Subspace& sub, double tolerance = 1e-10);

/// max over basis states psi in sub of ||(C' A C - p B) psi||.
/// Throws LeakageError when ||(1-P) C P||_F > 1e-8.
CheckReport check_conjugation(const Operator& c, const Operator& a, const Operator& b, int p, const Subspace& sub,
                              double tolerance = 1e-9);

/// ||P (U'U - 1) P||_F
CheckReport check_unitarity(const Operator& u, const Subspace& sub, double tolerance = 1e-10);

/// Evolves the effective Hamiltonian for the pulse length; residual is
/// 1 - min sector fidelity against the ideal C. Leaky sectors are named in
/// the context.
CheckReport check_pulse_condition(const Scenario& s, double tolerance = 1e-8);

/// James derivation of the full Hamiltonian against the model's effective
/// one on the comparison subspace; residual relative to the largest entry.
CheckReport check_effective_derivation(const Scenario& s, double tolerance = 1e-10);

/// Pulse-condition fidelities at cutoff and cutoff + 1 on the common sectors;
/// residual is the largest change.
CheckReport check_cutoff_sensitivity(const Scenario& s, double tolerance = 1e-9);

struct FullVsEffective {
    double infidelity;
    double unitarity_defect;
    bool failed;  ///< unitarity bound exceeded
};

/// Full rotating-frame propagation against the effective pulse on the
/// comparison subspace, both for pulse_duration(s). The boson-cavity scheme
/// compares against the corrected-detuning effective Hamiltonian.
FullVsEffective compare_full_vs_effective(const Scenario& s);

struct ScanPoint {
    double param_value;
    double infidelity;
    double unitarity_defect;
    double wall_time_ms;
    CheckReport report;
};

/// compare_full_vs_effective over with_ratio(s, r) for each r, in grid order.
/// `jobs` worker threads; 0 = hardware concurrency.
std::vector<ScanPoint> rwa_scan(const Scenario& s, const std::vector<double>& ratio_grid, int jobs = 1,
                                double tolerance = 5e-2);

/// Same, for an arbitrary scenario transform.
template <typename Apply>
std::vector<ScanPoint> scan(const Scenario& s, const std::vector<double>& grid, Apply apply, int jobs = 1,
                            double tolerance = 5e-2);

/// Runs f(0..n-1) on `jobs` threads; results land at their own index.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f);

ScanPoint scan_point(const Scenario& s, double param_value, double tolerance);

template <typename Apply>
std::vector<ScanPoint> scan(const Scenario& s, const std::vector<double>& grid, Apply apply, int jobs,
                            double tolerance)
{
    std::vector<ScanPoint> out(grid.size());
    parallel_for(grid.size(), jobs, [&](std::size_t k) { out[k] = scan_point(apply(s, grid[k]), grid[k], tolerance); });
    return out;
}

}  // namespace ccsim::verify
