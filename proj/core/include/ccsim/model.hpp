#pragma once

// Builders for the three trapped-ion schemes (full rotating-frame and
// effective forms) and the target charge-conjugation operators.
//
// Space conventions used by the builders:
//   boson-cavity, two-axis: mode 0 = a, mode 1 = b, qubit 0 = the ion.
//   fermion two-ion:        mode 0 = cavity a, qubits 0 and 1 = ions 1 and 2.

#include <functional>
#include <string_view>

#include "ccsim/terms.hpp"

namespace ccsim::model {

/// Receives builder warnings (weak-coupling ratio too large, ...). The
/// default handler writes to stderr. Returns the previous handler.
using WarningHandler = std::function<void(std::string_view)>;
WarningHandler set_warning_handler(WarningHandler handler);

/// Threshold above which builders warn about the coupling/detuning ratio.
inline constexpr double kWeakCouplingWarnRatio = 0.1;

struct BosonCavityParams {
    Complex Omega{0.0, -1.0e6};  ///< laser coupling, s^-1
    double eta_l = 0.1;          ///< Lamb-Dicke parameter of the laser
    Complex lambda_a{1.0e5, 0.0};  ///< cavity coupling, s^-1
    double omega0 = 1.1e7;
    double omega_l = 2.1e7;
    double omega_f = 2.2e7;
    double nu = 1.0e6;

    /// omega0 - omega_l - nu
    double laser_detuning() const { return omega0 - omega_l - nu; }
    /// omega0 - omega_f
    double cavity_detuning() const { return omega0 - omega_f; }
    /// max(|eta_l Omega|, |lambda_a|) / min(|laser detuning|, |cavity detuning|)
    double weak_coupling_ratio() const;
};

struct TwoAxisParams {
    double eta_x = 0.1;
    double eta_y = 0.1;
    Complex Omega_x{1.0, 0.0};
    Complex Omega_y{1.0, 0.0};
    double nu_x = 100.0;
    double nu_y = 100.0;
    double omega_x = 910.0;
    double omega_y = 910.0;
    double omega0 = 1000.0;

    /// omega_x - omega0 + nu_x
    double delta_x() const { return omega_x - omega0 + nu_x; }
    double delta_y() const { return omega_y - omega0 + nu_y; }
};

struct FermionParams {
    Complex lambda{1.0e5, 0.0};
    double delta = 1.0e7;  ///< omega0 - omega_a
    double tau = 0.0;      ///< pulse duration, 0 = derive from the pulse condition
};

struct EffectiveCouplings {
    double omega_a;
    double omega_b;
    Complex g;
};

struct BosonCavityEffective {
    TermList terms;
    EffectiveCouplings couplings;
};

/// i eta_l Omega b sp at (omega0-omega_l-nu), lambda_a a sp at (omega0-omega_f), plus conjugates.
TermList boson_cavity_rwa(const SpaceDescriptor& space, const BosonCavityParams& params);

/// omega_a a'a + omega_b b'b + g a'b + g* b'a.
///
/// With `corrected_detunings` false the coefficients use the published
/// denominators: omega_a = |lambda|^2/(omega0-nu), omega_b = eta^2|Omega|^2/(omega_l-omega0),
/// g = i Omega eta lambda*/(omega0-nu). With it true they are the second-order
/// values for the ion in |g>: omega_a = -|lambda|^2/D_f, omega_b = -eta^2|Omega|^2/D_l,
/// g = -i eta Omega lambda*/D, which needs D_l = D_f = D.
BosonCavityEffective boson_cavity_eff(const SpaceDescriptor& space, const BosonCavityParams& params,
                                      bool corrected_detunings = false);

/// g a'b + g* b'a
TermList boson_beamsplitter(const SpaceDescriptor& space, Complex g);

/// -i eta_x a sp at -delta_x, -i eta_y b sp at -delta_y, plus conjugates.
/// `with_rabi` multiplies each coupling by Omega_x / Omega_y.
TermList two_axis_rwa(const SpaceDescriptor& space, const TwoAxisParams& params, bool with_rabi = false);

/// (eta_x^2/delta) a'a + (eta_y^2/delta) b'b + (eta_x eta_y/delta)(a'b + a b').
/// Requires delta_x == delta_y != 0.
TermList two_axis_eff(const SpaceDescriptor& space, const TwoAxisParams& params, bool with_rabi = false);

/// lambda a sp1 and lambda a sp2 at delta, plus conjugates.
TermList fermion_interaction(const SpaceDescriptor& space, const FermionParams& params);

/// (|lambda|^2/delta)[n1 + n2 + a'a (sz1 + sz2) + sp1 sm2 + sm1 sp2].
TermList fermion_eff(const SpaceDescriptor& space, const FermionParams& params);

/// exp[-(i pi/2)(a'b + b'a - p(a'a + b'b))], exact per total-N sector.
Operator ideal_C_boson(const SpaceDescriptor& space, std::size_t mode_a, std::size_t mode_b, int p);

/// exp[-(i pi/2)(sp1 sm2 + sp2 sm1 - sp1 sm1 - sp2 sm2)].
Operator ideal_C_fermion(const SpaceDescriptor& space, std::size_t q1, std::size_t q2);

enum class Sign { Plus = 1, Minus = -1 };

/// exp{-(i pi/2)[s_a (n1 + n2) + s_b (sp1 sm2 + sm1 sp2)]}.
Operator engineered_C_fermion(const SpaceDescriptor& space, Sign sign_a, Sign sign_b, std::size_t q1 = 0,
                              std::size_t q2 = 1);

}  // namespace ccsim::model
