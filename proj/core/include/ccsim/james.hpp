#pragma once

// Second-order effective Hamiltonians, H_eff = -i H(t) * integral^t H(t') dt',
// keeping only the products that do not oscillate.

#include <optional>

#include "ccsim/terms.hpp"

namespace ccsim::james {

/// (Op, A, nu) -> (Op, A/(i nu), nu). Throws std::invalid_argument naming
/// the first zero-frequency term.
TermList integrate_terms(const TermList& h);

/// 1e-9 * max |nu|
double default_resonance_tolerance(const TermList& h);

struct EffectiveResult {
    TermList static_terms;   ///< Hermitian, all frequencies 0
    TermList dropped_terms;  ///< products with |nu_j + nu_k| > resonance_tol, at that frequency
    double resonance_tol;
    std::size_t product_count;  ///< number of pairwise products formed
};

/// Products j,k contribute -(A_j A_k / nu_k) Op_j Op_k at nu_j + nu_k. The
/// kept ones are symmetrized as (H + H')/2. With symbolic input the result is
/// symbolic, merged and sorted; otherwise it is one materialized term.
EffectiveResult effective_hamiltonian(const TermList& h, std::optional<double> resonance_tol = std::nullopt);

/// Replaces every factor acting on `qubit` by its expectation value in
/// `state`. The qubit stays in the space and is acted on by the identity.
/// Requires symbolic terms.
TermList project_qubit(const TermList& terms, std::size_t qubit, QubitState state);

/// Phase-insensitive distance 1 - F between the time-ordered propagator of
/// `full` (midpoint, `steps` steps) and exp(-i H_eff t_final).
double validate_effective(const TermList& full, const TermList& effective, double t_final, int steps);

}  // namespace ccsim::james
