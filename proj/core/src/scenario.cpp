#include "ccsim/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "ccsim/hspec.hpp"
#include "ccsim/james.hpp"

namespace ccsim {

namespace {

[[noreturn]] void no_custom(const char* what)
{
    throw std::invalid_argument(std::string(what) + " is not defined for custom scenarios");
}

double sign_of(double x)
{
    return x < 0.0 ? -1.0 : 1.0;
}

double two_axis_coupling(const Scenario& s)
{
    const auto& t = s.two_axis;
    const double cx = t.eta_x * (s.with_rabi ? std::abs(t.Omega_x) : 1.0);
    const double cy = t.eta_y * (s.with_rabi ? std::abs(t.Omega_y) : 1.0);
    return std::max(cx, cy);
}

double boson_coupling(const Scenario& s)
{
    return std::max(std::abs(s.boson.eta_l * s.boson.Omega), std::abs(s.boson.lambda_a));
}

void require_ratio(double ratio)
{
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw std::invalid_argument("coupling ratio must be positive and finite");
}

}  // namespace

std::string_view scheme_name(Scheme scheme)
{
    switch (scheme) {
    case Scheme::BosonCavity:
        return "boson_cavity";
    case Scheme::TwoAxis:
        return "two_axis";
    case Scheme::FermionTwoIon:
        return "fermion_two_ion";
    case Scheme::Custom:
        return "custom";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name)
{
    for (auto s : {Scheme::BosonCavity, Scheme::TwoAxis, Scheme::FermionTwoIon, Scheme::Custom})
        if (scheme_name(s) == name)
            return s;
    return std::nullopt;
}

SpaceDescriptor scenario_space(const Scenario& s)
{
    switch (s.scheme) {
    case Scheme::BosonCavity:
    case Scheme::TwoAxis:
        return make_space({s.cutoff, s.cutoff}, 1);
    case Scheme::FermionTwoIon:
        return make_space({s.cutoff}, 2);
    case Scheme::Custom:
        return hspec::lower(hspec::parse(s.custom_hspec)).space();
    }
    throw std::logic_error("unknown scheme");
}

TermList rwa_terms(const Scenario& s)
{
    switch (s.scheme) {
    case Scheme::BosonCavity:
        return model::boson_cavity_rwa(scenario_space(s), s.boson);
    case Scheme::TwoAxis:
        return model::two_axis_rwa(scenario_space(s), s.two_axis, s.with_rabi);
    case Scheme::FermionTwoIon:
        return model::fermion_interaction(scenario_space(s), s.fermion);
    case Scheme::Custom:
        return hspec::lower(hspec::parse(s.custom_hspec));
    }
    throw std::logic_error("unknown scheme");
}

TermList effective_terms(const Scenario& s)
{
    switch (s.scheme) {
    case Scheme::BosonCavity:
        return model::boson_cavity_eff(scenario_space(s), s.boson, s.corrected_detunings).terms;
    case Scheme::TwoAxis:
        return model::two_axis_eff(scenario_space(s), s.two_axis, s.with_rabi);
    case Scheme::FermionTwoIon:
        return model::fermion_eff(scenario_space(s), s.fermion);
    case Scheme::Custom:
        return james::effective_hamiltonian(rwa_terms(s), s.resonance_tol).static_terms;
    }
    throw std::logic_error("unknown scheme");
}

double pulse_duration(const Scenario& s)
{
    if (s.tau > 0.0)
        return s.tau;
    double rate = 0.0;
    switch (s.scheme) {
    case Scheme::BosonCavity: {
        const auto space = make_space({1, 1}, 1);
        rate = std::abs(model::boson_cavity_eff(space, s.boson, s.corrected_detunings).couplings.g);
        break;
    }
    case Scheme::TwoAxis: {
        const auto& t = s.two_axis;
        const double cx = t.eta_x * (s.with_rabi ? std::abs(t.Omega_x) : 1.0);
        const double cy = t.eta_y * (s.with_rabi ? std::abs(t.Omega_y) : 1.0);
        rate = cx * cy / std::abs(t.delta_x());
        break;
    }
    case Scheme::FermionTwoIon:
        rate = std::norm(s.fermion.lambda) / std::abs(s.fermion.delta);
        break;
    case Scheme::Custom:
        throw std::invalid_argument("custom scenarios need an explicit tau");
    }
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::domain_error("pulse condition: effective coupling is zero or not finite");
    return kPi / (2.0 * rate);
}

std::vector<Subspace> comparison_sectors(const Scenario& s)
{
    const auto space = scenario_space(s);
    std::vector<Subspace> out;
    switch (s.scheme) {
    case Scheme::BosonCavity:
    case Scheme::TwoAxis:
        for (int n = 0; n <= s.cutoff; ++n)
            out.push_back(select(space, [n](const BasisLabel& l) {
                return l.qubits[0] == 0 && l.occupations[0] + l.occupations[1] == n;
            }));
        return out;
    case Scheme::FermionTwoIon:
        for (int n = 0; n <= 2; ++n)
            out.push_back(select(space, [n](const BasisLabel& l) {
                return l.occupations[0] == 0 && l.qubits[0] + l.qubits[1] == n;
            }));
        return out;
    case Scheme::Custom:
        no_custom("comparison_sectors");
    }
    throw std::logic_error("unknown scheme");
}

Subspace comparison_subspace(const Scenario& s)
{
    std::vector<std::size_t> indices;
    for (const auto& sector : comparison_sectors(s))
        indices.insert(indices.end(), sector.indices().begin(), sector.indices().end());
    return Subspace(scenario_space(s), std::move(indices));
}

bool has_target(const Scenario& s)
{
    return s.scheme != Scheme::Custom;
}

Operator ideal_target(const Scenario& s)
{
    switch (s.scheme) {
    case Scheme::BosonCavity:
    case Scheme::TwoAxis:
        return model::ideal_C_boson(scenario_space(s), 0, 1, s.p);
    case Scheme::FermionTwoIon:
        return model::ideal_C_fermion(scenario_space(s), 0, 1);
    case Scheme::Custom:
        no_custom("ideal_target");
    }
    throw std::logic_error("unknown scheme");
}

double coupling_ratio(const Scenario& s)
{
    switch (s.scheme) {
    case Scheme::BosonCavity:
        return s.boson.weak_coupling_ratio();
    case Scheme::TwoAxis:
        return two_axis_coupling(s) / std::min(std::abs(s.two_axis.delta_x()), std::abs(s.two_axis.delta_y()));
    case Scheme::FermionTwoIon:
        return std::abs(s.fermion.lambda) / std::abs(s.fermion.delta);
    case Scheme::Custom:
        no_custom("coupling_ratio");
    }
    throw std::logic_error("unknown scheme");
}

Scenario with_detuning(const Scenario& s, double delta)
{
    if (!(delta != 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("detuning must be nonzero and finite");
    Scenario out = s;
    switch (s.scheme) {
    case Scheme::BosonCavity:
        out.boson.omega_l = s.boson.omega0 - s.boson.nu - delta;
        out.boson.omega_f = s.boson.omega0 - delta;
        return out;
    case Scheme::TwoAxis:
        out.two_axis.omega_x = delta + s.two_axis.omega0 - s.two_axis.nu_x;
        out.two_axis.omega_y = delta + s.two_axis.omega0 - s.two_axis.nu_y;
        return out;
    case Scheme::FermionTwoIon:
        out.fermion.delta = delta;
        return out;
    case Scheme::Custom:
        no_custom("with_detuning");
    }
    throw std::logic_error("unknown scheme");
}

Scenario with_ratio(const Scenario& s, double ratio)
{
    require_ratio(ratio);
    switch (s.scheme) {
    case Scheme::BosonCavity:
        return with_detuning(s, sign_of(s.boson.laser_detuning()) * boson_coupling(s) / ratio);
    case Scheme::TwoAxis:
        return with_detuning(s, sign_of(s.two_axis.delta_x()) * two_axis_coupling(s) / ratio);
    case Scheme::FermionTwoIon:
        return with_detuning(s, sign_of(s.fermion.delta) * std::abs(s.fermion.lambda) / ratio);
    case Scheme::Custom:
        no_custom("with_ratio");
    }
    throw std::logic_error("unknown scheme");
}

}  // namespace ccsim
