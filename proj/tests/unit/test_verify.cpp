#include <gtest/gtest.h>

#include "ccsim/model.hpp"
#include "ccsim/verify.hpp"

using namespace ccsim;

namespace {

Scenario boson(int p)
{
    Scenario s;
    s.scheme = Scheme::BosonCavity;
    s.cutoff = 4;
    s.p = p;
    return s;
}

Scenario two_axis_small()
{
    Scenario s;
    s.scheme = Scheme::TwoAxis;
    s.cutoff = 3;
    s.steps_per_period = 128;
    return s;
}

}  // namespace

TEST(Verify, IdealBosonSatisfiesTheAlgebra)
{
    const auto space = make_space({6, 6}, 0);
    for (int p : {1, -1}) {
        const Operator c = model::ideal_C_boson(space, 0, 1, p);
        const auto all = total_n_at_most(space, {0, 1}, 6);
        const auto low = total_n_at_most(space, {0, 1}, 5);
        EXPECT_TRUE(verify::check_anticommutation(c, charge_boson(space, 0, 1), all).passed);
        const auto a = annihilator(space, 0), b = annihilator(space, 1);
        const auto r1 = verify::check_conjugation(c, a, b, p, low);
        const auto r2 = verify::check_conjugation(c, b, a, p, low);
        EXPECT_TRUE(r1.passed) << r1.residual;
        EXPECT_TRUE(r2.passed) << r2.residual;
        EXPECT_TRUE(verify::check_unitarity(c, all).passed);
        // The wrong parity fails the conjugation relation.
        EXPECT_FALSE(verify::check_conjugation(c, a, b, -p, low).passed);
    }
}

TEST(Verify, IdentityFailsAnticommutation)
{
    const auto space = make_space({2, 2}, 0);
    const auto r = verify::check_anticommutation(Operator::identity(space), charge_boson(space, 0, 1),
                                                 total_n_at_most(space, {0, 1}, 2));
    EXPECT_FALSE(r.passed);
    EXPECT_GT(r.residual, 1.0);
}

TEST(Verify, ConjugationThrowsOnLeakySubspace)
{
    const auto space = make_space({3, 3}, 0);
    TermList h(space);
    h.add(annihilator(space, 0) + creator(space, 0), 1.0, 0.0, "x");
    const Operator u = evolve::propagate_static(h, 0.5);
    EXPECT_THROW(verify::check_conjugation(u, annihilator(space, 0), annihilator(space, 1), 1,
                                           total_n_at_most(space, {0, 1}, 1)),
                 verify::LeakageError);
}

TEST(Verify, FermionConjugationHoldsOnlyUpToOneExcitation)
{
    const auto space = make_space({2}, 2);
    const Operator c = model::ideal_C_fermion(space, 0, 1);
    const auto m1 = pauli(space, 0, Pauli::Minus), m2 = pauli(space, 1, Pauli::Minus);
    const auto low = select(space, [](const BasisLabel& l) { return l.qubits[0] + l.qubits[1] <= 1; });
    EXPECT_TRUE(verify::check_conjugation(c, m1, m2, 1, low).passed);

    // On |ee> the pseudo-spins commute where fermions would anticommute.
    const auto all = select(space, [](const BasisLabel&) { return true; });
    const auto full = verify::check_conjugation(c, m1, m2, 1, all);
    EXPECT_FALSE(full.passed);
    EXPECT_NEAR(full.residual, 2.0, 1e-9);

    // With a Jordan-Wigner string on the second ion the relation holds everywhere.
    const Operator z1 = pauli(space, 0, Pauli::Z);
    const Operator f2 = (-1.0) * z1 * m2;
    EXPECT_TRUE(verify::check_conjugation(c, m1, f2, 1, all).passed);
}

TEST(Verify, PulseConditionForTheDefaultSchemes)
{
    for (auto scheme : {Scheme::BosonCavity, Scheme::TwoAxis, Scheme::FermionTwoIon}) {
        Scenario s;
        s.scheme = scheme;
        s.cutoff = 4;
        const auto r = verify::check_pulse_condition(s);
        EXPECT_TRUE(r.passed) << scheme_name(scheme) << " " << r.residual << " " << r.context;
    }
}

TEST(Verify, HalfPulseFails)
{
    Scenario s = boson(1);
    s.tau = pulse_duration(s) / 2;
    EXPECT_FALSE(verify::check_pulse_condition(s).passed);
}

TEST(Verify, EffectiveDerivation)
{
    Scenario s = two_axis_small();
    EXPECT_TRUE(verify::check_effective_derivation(s).passed);
    s.scheme = Scheme::FermionTwoIon;
    EXPECT_TRUE(verify::check_effective_derivation(s).passed);
    // Printed boson couplings differ from the derivation; corrected ones agree.
    Scenario b = boson(1);
    EXPECT_FALSE(verify::check_effective_derivation(b).passed);
    b.corrected_detunings = true;
    EXPECT_TRUE(verify::check_effective_derivation(b).passed);
}

TEST(Verify, CutoffSensitivityIsSmallForExactSectors)
{
    EXPECT_TRUE(verify::check_cutoff_sensitivity(boson(1)).passed);
}

TEST(Verify, ReportsNaNAsFailure)
{
    EXPECT_FALSE(verify::make_report("x", std::nan(""), 1.0).passed);
    EXPECT_TRUE(verify::make_report("x", 0.5, 1.0).passed);
}

TEST(Verify, RwaScanIsOrderedAndThreadIndependent)
{
    const Scenario s = two_axis_small();
    const std::vector<double> grid = {0.1, 0.05, 0.02};
    const auto one = verify::rwa_scan(s, grid, 1);
    const auto three = verify::rwa_scan(s, grid, 3);
    ASSERT_EQ(one.size(), grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        EXPECT_EQ(one[k].param_value, grid[k]);
        EXPECT_EQ(one[k].infidelity, three[k].infidelity);
        EXPECT_EQ(one[k].unitarity_defect, three[k].unitarity_defect);
        if (k > 0)
            EXPECT_LT(one[k].infidelity, one[k - 1].infidelity);
    }
}

TEST(Verify, ScanPropagatesExceptions)
{
    const Scenario s = two_axis_small();
    auto bad = [](const Scenario&, double v) -> Scenario {
        if (v > 1.0)
            throw std::domain_error("bad point");
        return two_axis_small();
    };
    EXPECT_THROW(verify::scan(s, {0.5, 2.0}, bad, 2), std::domain_error);
}
