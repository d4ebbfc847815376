#include "ccsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ccsim::model {

namespace {

std::mutex g_warning_mutex;
WarningHandler g_warning_handler = [](std::string_view message) {
    std::cerr << "warning: " << message << '\n';
};

void warn(const std::string& message)
{
    std::lock_guard lock(g_warning_mutex);
    if (g_warning_handler)
        g_warning_handler(message);
}

void warn_if_strong(const char* scheme, double ratio)
{
    if (!(ratio <= kWeakCouplingWarnRatio)) {
        std::ostringstream os;
        os << scheme << ": coupling/detuning ratio " << ratio << " exceeds " << kWeakCouplingWarnRatio
           << "; the effective description may be inaccurate";
        warn(os.str());
    }
}

void require_shape(const SpaceDescriptor& space, std::size_t modes, std::size_t qubits, const char* what)
{
    if (space.mode_count() < modes || space.qubit_count() < qubits) {
        std::ostringstream os;
        os << what << " needs at least " << modes << " bosonic mode(s) and " << qubits << " qubit(s); got "
           << space.mode_count() << " and " << space.qubit_count();
        throw std::invalid_argument(os.str());
    }
}

constexpr Factor a_(std::size_t m) { return {FactorKind::Annihilate, m}; }
constexpr Factor ad_(std::size_t m) { return {FactorKind::Create, m}; }
constexpr Factor sp_(std::size_t q) { return {FactorKind::SigmaPlus, q}; }
constexpr Factor sm_(std::size_t q) { return {FactorKind::SigmaMinus, q}; }
constexpr Factor sz_(std::size_t q) { return {FactorKind::SigmaZ, q}; }

SpaceNames boson_names(const SpaceDescriptor& space)
{
    auto names = SpaceNames::defaults(space);
    names.modes[0] = "a";
    names.modes[1] = "b";
    names.qubits[0] = "q";
    return names;
}

SpaceNames fermion_names(const SpaceDescriptor& space)
{
    auto names = SpaceNames::defaults(space);
    names.modes[0] = "a";
    names.qubits[0] = "q1";
    names.qubits[1] = "q2";
    return names;
}

// exp(-i G t) assembled from exact exponentials of G restricted to each sector.
Operator sector_exp(const Operator& generator, const std::vector<Subspace>& sectors, double t)
{
    Matrix out = Matrix::Zero(generator.matrix().rows(), generator.matrix().cols());
    std::vector<bool> covered(generator.dimension(), false);
    for (const auto& sector : sectors) {
        if (sector.dimension() == 0)
            continue;
        const Matrix block = unitary_exp(hermitian_part(sector.restrict(generator)), t);
        const auto& idx = sector.indices();
        for (std::size_t r = 0; r < idx.size(); ++r) {
            covered[idx[r]] = true;
            for (std::size_t c = 0; c < idx.size(); ++c)
                out(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c])) =
                    block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end())
        throw std::logic_error("sectors do not cover the space");
    return Operator(generator.space(), std::move(out));
}

std::vector<Subspace> qubit_pair_sectors(const SpaceDescriptor& space, std::size_t q1, std::size_t q2)
{
    std::vector<Subspace> sectors;
    for (int n = 0; n <= 2; ++n)
        sectors.push_back(
            select(space, [&](const BasisLabel& l) { return l.qubits[q1] + l.qubits[q2] == n; }));
    return sectors;
}

void check_qubit_pair(const SpaceDescriptor& space, std::size_t q1, std::size_t q2)
{
    if (q1 >= space.qubit_count() || q2 >= space.qubit_count())
        throw std::out_of_range("qubit index out of range");
    if (q1 == q2)
        throw std::invalid_argument("need two distinct qubits");
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler)
{
    std::lock_guard lock(g_warning_mutex);
    std::swap(handler, g_warning_handler);
    return handler;
}

double BosonCavityParams::weak_coupling_ratio() const
{
    const double coupling = std::max(std::abs(eta_l * Omega), std::abs(lambda_a));
    const double detuning = std::min(std::abs(laser_detuning()), std::abs(cavity_detuning()));
    return coupling / detuning;
}

TermList boson_cavity_rwa(const SpaceDescriptor& space, const BosonCavityParams& params)
{
    require_shape(space, 2, 1, "boson-cavity scheme");
    warn_if_strong("boson-cavity", params.weak_coupling_ratio());
    TermList terms(space, boson_names(space));
    terms.add_with_conjugate({a_(1), sp_(0)}, kI * params.eta_l * params.Omega, params.laser_detuning());
    terms.add_with_conjugate({a_(0), sp_(0)}, params.lambda_a, params.cavity_detuning());
    return terms;
}

BosonCavityEffective boson_cavity_eff(const SpaceDescriptor& space, const BosonCavityParams& params,
                                      bool corrected_detunings)
{
    require_shape(space, 2, 1, "boson-cavity scheme");
    warn_if_strong("boson-cavity", params.weak_coupling_ratio());

    const double lambda2 = std::norm(params.lambda_a);
    const double drive2 = params.eta_l * params.eta_l * std::norm(params.Omega);
    EffectiveCouplings c{};
    if (!corrected_detunings) {
        const double d_cav = params.omega0 - params.nu;
        const double d_las = params.omega_l - params.omega0;
        if (d_cav == 0.0 || d_las == 0.0)
            throw std::domain_error("boson-cavity effective couplings: zero denominator (omega0-nu or omega_l-omega0)");
        c.omega_a = lambda2 / d_cav;
        c.omega_b = drive2 / d_las;
        c.g = kI * params.Omega * params.eta_l * std::conj(params.lambda_a) / d_cav;
    } else {
        const double d_las = params.laser_detuning();
        const double d_cav = params.cavity_detuning();
        if (d_cav == 0.0 || d_las == 0.0)
            throw std::domain_error("boson-cavity effective couplings: zero detuning");
        if (std::abs(d_las - d_cav) > 1e-12 * std::max(std::abs(d_las), std::abs(d_cav)))
            throw std::domain_error("boson-cavity effective couplings: the a-b exchange is resonant only when "
                                    "omega0-omega_l-nu equals omega0-omega_f");
        c.omega_a = -lambda2 / d_cav;
        c.omega_b = -drive2 / d_las;
        c.g = -kI * params.eta_l * params.Omega * std::conj(params.lambda_a) / d_cav;
    }

    TermList terms(space, boson_names(space));
    terms.add({ad_(0), a_(0)}, c.omega_a, 0.0);
    terms.add({ad_(1), a_(1)}, c.omega_b, 0.0);
    terms.add({ad_(0), a_(1)}, c.g, 0.0);
    terms.add({ad_(1), a_(0)}, std::conj(c.g), 0.0);
    return {std::move(terms), c};
}

TermList boson_beamsplitter(const SpaceDescriptor& space, Complex g)
{
    require_shape(space, 2, 0, "beam splitter");
    auto names = SpaceNames::defaults(space);
    names.modes[0] = "a";
    names.modes[1] = "b";
    if (space.qubit_count() > 0)
        names.qubits[0] = "q";
    TermList terms(space, names);
    terms.add({ad_(0), a_(1)}, g, 0.0);
    terms.add({ad_(1), a_(0)}, std::conj(g), 0.0);
    return terms;
}

TermList two_axis_rwa(const SpaceDescriptor& space, const TwoAxisParams& params, bool with_rabi)
{
    require_shape(space, 2, 1, "two-axis scheme");
    const Complex cx = with_rabi ? params.eta_x * params.Omega_x : Complex(params.eta_x);
    const Complex cy = with_rabi ? params.eta_y * params.Omega_y : Complex(params.eta_y);
    const double ratio = std::max(std::abs(cx) / std::abs(params.delta_x()), std::abs(cy) / std::abs(params.delta_y()));
    warn_if_strong("two-axis", ratio);

    TermList terms(space, boson_names(space));
    terms.add_with_conjugate({a_(0), sp_(0)}, -kI * cx, -params.delta_x());
    terms.add_with_conjugate({a_(1), sp_(0)}, -kI * cy, -params.delta_y());
    return terms;
}

TermList two_axis_eff(const SpaceDescriptor& space, const TwoAxisParams& params, bool with_rabi)
{
    require_shape(space, 2, 0, "two-axis effective Hamiltonian");
    const double dx = params.delta_x();
    const double dy = params.delta_y();
    if (dx != dy)
        throw std::domain_error("two-axis effective Hamiltonian needs delta_x == delta_y");
    if (dx == 0.0)
        throw std::domain_error("two-axis effective Hamiltonian needs a nonzero detuning");

    const Complex cx = with_rabi ? params.eta_x * params.Omega_x : Complex(params.eta_x);
    const Complex cy = with_rabi ? params.eta_y * params.Omega_y : Complex(params.eta_y);

    auto names = SpaceNames::defaults(space);
    names.modes[0] = "a";
    names.modes[1] = "b";
    if (space.qubit_count() > 0)
        names.qubits[0] = "q";
    TermList terms(space, names);
    terms.add({ad_(0), a_(0)}, std::norm(cx) / dx, 0.0);
    terms.add({ad_(1), a_(1)}, std::norm(cy) / dx, 0.0);
    const Complex cross = std::conj(cx) * cy / dx;
    terms.add({ad_(0), a_(1)}, cross, 0.0);
    terms.add({a_(0), ad_(1)}, std::conj(cross), 0.0);
    return terms;
}

TermList fermion_interaction(const SpaceDescriptor& space, const FermionParams& params)
{
    require_shape(space, 1, 2, "fermion two-ion scheme");
    if (params.delta == 0.0)
        throw std::domain_error("fermion scheme needs a nonzero detuning");
    warn_if_strong("fermion two-ion", std::abs(params.lambda) / std::abs(params.delta));
    TermList terms(space, fermion_names(space));
    terms.add_with_conjugate({a_(0), sp_(0)}, params.lambda, params.delta);
    terms.add_with_conjugate({a_(0), sp_(1)}, params.lambda, params.delta);
    return terms;
}

TermList fermion_eff(const SpaceDescriptor& space, const FermionParams& params)
{
    require_shape(space, 1, 2, "fermion two-ion scheme");
    if (params.delta == 0.0)
        throw std::domain_error("fermion effective Hamiltonian needs a nonzero detuning");
    const double k = std::norm(params.lambda) / params.delta;
    TermList terms(space, fermion_names(space));
    terms.add({sp_(0), sm_(0)}, k, 0.0);
    terms.add({sp_(1), sm_(1)}, k, 0.0);
    terms.add({ad_(0), a_(0), sz_(0)}, k, 0.0);
    terms.add({ad_(0), a_(0), sz_(1)}, k, 0.0);
    terms.add({sp_(0), sm_(1)}, k, 0.0);
    terms.add({sm_(0), sp_(1)}, k, 0.0);
    return terms;
}

Operator ideal_C_boson(const SpaceDescriptor& space, std::size_t mode_a, std::size_t mode_b, int p)
{
    if (mode_a >= space.mode_count() || mode_b >= space.mode_count())
        throw std::out_of_range("mode index out of range");
    if (mode_a == mode_b)
        throw std::invalid_argument("charge conjugation needs two distinct modes");
    if (p != 1 && p != -1)
        throw std::invalid_argument("p must be +1 or -1");
    if (space.mode_cutoffs()[mode_a] != space.mode_cutoffs()[mode_b])
        throw std::invalid_argument("charge conjugation needs equal cutoffs on both modes");

    const auto ad = creator(space, mode_a);
    const auto a = annihilator(space, mode_a);
    const auto bd = creator(space, mode_b);
    const auto b = annihilator(space, mode_b);
    const Operator generator = ad * b + bd * a - static_cast<double>(p) * (ad * a + bd * b);
    const int n_max = space.mode_cutoffs()[mode_a] + space.mode_cutoffs()[mode_b];
    return sector_exp(generator, total_n_sectors(space, {mode_a, mode_b}, n_max), kPi / 2.0);
}

Operator ideal_C_fermion(const SpaceDescriptor& space, std::size_t q1, std::size_t q2)
{
    check_qubit_pair(space, q1, q2);
    const auto p1 = pauli(space, q1, Pauli::Plus), m1 = pauli(space, q1, Pauli::Minus);
    const auto p2 = pauli(space, q2, Pauli::Plus), m2 = pauli(space, q2, Pauli::Minus);
    const Operator generator = p1 * m2 + p2 * m1 - p1 * m1 - p2 * m2;
    return sector_exp(generator, qubit_pair_sectors(space, q1, q2), kPi / 2.0);
}

Operator engineered_C_fermion(const SpaceDescriptor& space, Sign sign_a, Sign sign_b, std::size_t q1,
                              std::size_t q2)
{
    check_qubit_pair(space, q1, q2);
    const auto p1 = pauli(space, q1, Pauli::Plus), m1 = pauli(space, q1, Pauli::Minus);
    const auto p2 = pauli(space, q2, Pauli::Plus), m2 = pauli(space, q2, Pauli::Minus);
    const double sa = static_cast<double>(static_cast<int>(sign_a));
    const double sb = static_cast<double>(static_cast<int>(sign_b));
    const Operator generator = sa * (p1 * m1 + p2 * m2) + sb * (p1 * m2 + m1 * p2);
    return sector_exp(generator, qubit_pair_sectors(space, q1, q2), kPi / 2.0);
}

}  // namespace ccsim::model
