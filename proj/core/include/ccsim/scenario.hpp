#pragma once

// A scheme plus its parameters and evolution settings, and the derived
// pieces every check needs: space, Hamiltonians, pulse length, target C.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

enum class Scheme { BosonCavity, TwoAxis, FermionTwoIon, Custom };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

struct Scenario {
    Scheme scheme = Scheme::BosonCavity;
    model::BosonCavityParams boson;
    model::TwoAxisParams two_axis;
    model::FermionParams fermion;
    std::string custom_hspec;  ///< source text for Scheme::Custom

    int cutoff = 6;  ///< Fock cutoff of every mode
    int p = 1;       ///< target C parity for the bosonic schemes
    bool corrected_detunings = false;
    bool with_rabi = false;

    double tau = 0.0;  ///< pulse length, 0 = from the pulse condition
    std::optional<double> resonance_tol;

    int steps = 0;                  ///< midpoint steps, 0 = default heuristic
    int steps_per_period = 4096;    ///< periodic propagation, used when H has a common period
    bool periodic = true;           ///< allow the periodic propagator
    double unitarity_bound = 1e-8;
};

SpaceDescriptor scenario_space(const Scenario& s);

/// Full rotating-frame Hamiltonian of the scheme.
TermList rwa_terms(const Scenario& s);

/// Effective Hamiltonian from the model builders (James derivation for custom).
TermList effective_terms(const Scenario& s);

/// s.tau when set, else pi/2 over the effective coupling: |g| (boson-cavity),
/// eta_x eta_y / |delta| (two-axis), |lambda|^2 / |delta| (fermion).
double pulse_duration(const Scenario& s);

/// Sectors on which the effective pulse is compared with C. Bosonic schemes:
/// ion in g, total N = 0..cutoff of modes a, b. Fermion: cavity vacuum,
/// 0, 1, 2 excited ions.
std::vector<Subspace> comparison_sectors(const Scenario& s);

/// Union of comparison_sectors.
Subspace comparison_subspace(const Scenario& s);

/// ideal_C_boson(p) or ideal_C_fermion; throws for custom scenarios.
Operator ideal_target(const Scenario& s);

bool has_target(const Scenario& s);

/// Coupling-to-detuning ratio of the scheme.
double coupling_ratio(const Scenario& s);

/// Moves the detuning(s) so coupling_ratio == ratio, keeping sign and couplings.
Scenario with_ratio(const Scenario& s, double ratio);

/// Two-axis: sets delta_x = delta_y = delta. Boson-cavity: both detunings.
/// Fermion: delta.
Scenario with_detuning(const Scenario& s, double delta);

}  // namespace ccsim
