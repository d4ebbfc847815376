#pragma once

// Propagators for static and oscillating term lists, and unitary fidelities.

#include <optional>
#include <vector>

#include "ccsim/terms.hpp"

namespace ccsim::evolve {

inline constexpr double kDefaultUnitarityBound = 1e-8;

/// exp(-i H t). Throws std::invalid_argument for non-static input.
Operator propagate_static(const TermList& h, double t);

struct EvolutionOptions {
    int steps = 0;  ///< 0 = default_steps
    double unitarity_bound = kDefaultUnitarityBound;
    /// When set, the evolved state is recorded every `sample_every` steps
    /// (and at the end).
    std::optional<Vector> initial_state;
    int sample_every = 1;
};

struct EvolutionResult {
    Operator propagator;
    std::vector<double> sample_times;
    std::vector<Vector> sampled_states;
    double unitarity_defect = 0.0;  ///< max over checkpoints of ||U'U - I||_F
    bool failed = false;            ///< unitarity_defect above the bound
    int steps = 0;
};

/// 200 * max(1, t_final * max|nu| / 2pi), rounded up.
int default_steps(const TermList& h, double t_final);

/// Exponential midpoint: U <- exp(-i H(t_mid) dt) U.
EvolutionResult propagate_timedep(const TermList& h, double t_final, const EvolutionOptions& options);
EvolutionResult propagate_timedep(const TermList& h, double t_final, int steps);

/// Smallest T > 0 with nu*T a multiple of 2pi for every term frequency, if
/// the frequency ratios are rational with denominators up to `max_denominator`.
/// nullopt for static lists.
std::optional<double> common_period(const TermList& h, int max_denominator = 64, double rel_tol = 1e-12);

/// For a periodic H: builds the one-period propagator with `steps_per_period`
/// midpoint steps, raises it to the number of whole periods by repeated
/// squaring and finishes the remainder. Same midpoint discretization as
/// propagate_timedep, far fewer exponentials for long pulses. Every product
/// in the powering is projected back to the nearest unitary; the reported
/// defect is the largest one seen before projection.
/// Throws std::invalid_argument when H has no common period.
EvolutionResult propagate_periodic(const TermList& h, double t_final, int steps_per_period,
                                   double unitarity_bound = kDefaultUnitarityBound);

/// |Tr(U'V)| / d, optionally on a subspace.
double fidelity_unitary_phase_insensitive(const Operator& u, const Operator& v);
double fidelity_unitary_phase_insensitive(const Operator& u, const Operator& v, const Subspace& sub);

struct SectorComparison {
    double fidelity;
    double leakage;  ///< max(||(1-P) U P||_F, ||(1-P) V P||_F)
    bool flagged;    ///< leakage above the bound
};

std::vector<SectorComparison> sectorwise_compare(const Operator& u, const Operator& v,
                                                 const std::vector<Subspace>& sectors,
                                                 double leakage_bound = 1e-8);

/// ||(1-P) U P||_F
double leakage(const Operator& u, const Subspace& sub);

}  // namespace ccsim::evolve
