#include <gtest/gtest.h>

#include <cmath>

#include "ccsim/evolve.hpp"
#include "ccsim/model.hpp"
#include "oracle.hpp"

using namespace ccsim;
using oracle::Matrix;

namespace {

Factor sp(std::size_t q) { return {FactorKind::SigmaPlus, q}; }
Factor sz(std::size_t q) { return {FactorKind::SigmaZ, q}; }
Factor a(std::size_t m) { return {FactorKind::Annihilate, m}; }
Factor ad(std::size_t m) { return {FactorKind::Create, m}; }

// Driven two-level system W (sp e^{i d t} + sm e^{-i d t}). With
// R(t) = exp(i d t sz / 2) we have H(t) = R H0 R', H0 = W sx, so
// U(t) = R(t) exp(-i (H0 + d sz / 2) t).
Matrix driven_qubit_exact(double w, double d, double t)
{
    using namespace oracle;
    const Matrix sx = sigma_plus() + sigma_minus();
    const Matrix r = expm(Complex(0, d * t / 2) * sigma_z());
    return r * expm(Complex(0, -t) * (w * sx + (d / 2) * sigma_z()));
}

TermList driven_qubit(double w, double d)
{
    TermList h(make_space({}, 1));
    h.add_with_conjugate({sp(0)}, w, d);
    return h;
}

}  // namespace

TEST(Evolve, StaticPropagatorMatchesSeries)
{
    const auto s = make_space({3}, 1);
    TermList h(s);
    h.add({ad(0), a(0)}, 0.7, 0.0);
    h.add({sz(0)}, -0.2, 0.0);
    h.add_with_conjugate({a(0), sp(0)}, Complex(0.1, 0.3), 0.0);
    const double t = 2.9;
    const Matrix want = oracle::expm(Complex(0, -t) * h.summed().matrix());
    EXPECT_LT(oracle::max_abs(evolve::propagate_static(h, t).matrix() - want), 1e-12);
    EXPECT_THROW(evolve::propagate_static(driven_qubit(1, 1), 1.0), std::invalid_argument);
}

TEST(Evolve, MidpointConvergesToExactDrivenQubit)
{
    const double w = 0.8, d = 5.0, t = 3.0;
    const auto h = driven_qubit(w, d);
    const Matrix exact = driven_qubit_exact(w, d, t);
    double previous = 0.0;
    for (int steps : {200, 400, 800}) {
        const auto r = evolve::propagate_timedep(h, t, steps);
        const double err = (r.propagator.matrix() - exact).norm();
        if (previous > 0.0) {
            EXPECT_GT(previous / err, 3.5);
            EXPECT_LT(previous / err, 4.5);
        }
        previous = err;
        EXPECT_LT(r.unitarity_defect, 1e-12);
        EXPECT_FALSE(r.failed);
    }
}

TEST(Evolve, SampledStates)
{
    const auto h = driven_qubit(0.5, 2.0);
    evolve::EvolutionOptions o;
    o.steps = 100;
    o.sample_every = 25;
    o.initial_state = basis_vector(h.space(), {{}, {0}});
    const auto r = evolve::propagate_timedep(h, 1.0, o);
    ASSERT_EQ(r.sampled_states.size(), r.sample_times.size());
    ASSERT_FALSE(r.sample_times.empty());
    EXPECT_NEAR(r.sample_times.back(), 1.0, 1e-12);
    EXPECT_LT((r.sampled_states.back() - r.propagator.apply(*o.initial_state)).norm(), 1e-13);
}

TEST(Evolve, CommonPeriod)
{
    auto h = driven_qubit(1.0, 2.0);
    ASSERT_TRUE(evolve::common_period(h).has_value());
    EXPECT_NEAR(*evolve::common_period(h), kPi, 1e-12);

    h.add_with_conjugate({sz(0)}, 0.1, 3.0);  // periods pi and 2pi/3 -> 2pi
    EXPECT_NEAR(*evolve::common_period(h), 2 * kPi, 1e-12);

    h.add_with_conjugate({sz(0)}, 0.1, std::sqrt(2.0));
    EXPECT_FALSE(evolve::common_period(h).has_value());

    TermList stat(make_space({}, 1));
    stat.add({sz(0)}, 1.0, 0.0);
    EXPECT_FALSE(evolve::common_period(stat).has_value());
}

TEST(Evolve, PeriodicPropagationAgreesWithStepping)
{
    const double w = 0.3, d = 4.0;
    const auto h = driven_qubit(w, d);
    const double period = 2 * kPi / d;
    const double t = 37.5 * period;
    const auto periodic = evolve::propagate_periodic(h, t, 512);
    const Matrix exact = driven_qubit_exact(w, d, t);
    EXPECT_LT((periodic.propagator.matrix() - exact).norm(), 1e-4);
    EXPECT_LT(periodic.unitarity_defect, 1e-12);
    EXPECT_LT(unitarity_defect(periodic.propagator.matrix()), 1e-12);

    // Same discretization as 512 steps per period with plain stepping.
    const auto stepped = evolve::propagate_timedep(h, 37.0 * period, 37 * 512);
    const auto whole = evolve::propagate_periodic(h, 37.0 * period, 512);
    EXPECT_LT((stepped.propagator.matrix() - whole.propagator.matrix()).norm(), 1e-10);
}

TEST(Evolve, UnitarityBoundFlagsFailure)
{
    evolve::EvolutionOptions o;
    o.steps = 10;
    o.unitarity_bound = 0.0;
    const auto h = driven_qubit(1e3, 1.0);
    const auto r = evolve::propagate_timedep(h, 100.0, o);
    EXPECT_EQ(r.failed, r.unitarity_defect > 0.0);
    o.unitarity_bound = 1e-8;
    EXPECT_FALSE(evolve::propagate_timedep(h, 100.0, o).failed);
}

TEST(Evolve, PhaseInsensitiveFidelity)
{
    const auto s = make_space({2, 2}, 0);
    const Operator u = model::ideal_C_boson(s, 0, 1, 1);
    const Operator v = std::exp(Complex(0, 0.77)) * u;
    EXPECT_NEAR(evolve::fidelity_unitary_phase_insensitive(u, v), 1.0, 1e-14);
    const Operator id = Operator::identity(s);
    EXPECT_LT(evolve::fidelity_unitary_phase_insensitive(u, id), 0.9);
    const Subspace vac = total_n_subspace(s, {0, 1}, 0);
    EXPECT_NEAR(evolve::fidelity_unitary_phase_insensitive(u, id, vac), 1.0, 1e-14);
}

TEST(Evolve, SectorwiseComparison)
{
    const auto s = make_space({3, 3}, 0);
    const Operator plus = model::ideal_C_boson(s, 0, 1, 1);
    const Operator minus = model::ideal_C_boson(s, 0, 1, -1);
    // p = +-1 differ by exp(i pi N): a phase per sector.
    const auto cmp = evolve::sectorwise_compare(plus, minus, total_n_sectors(s, {0, 1}, 3));
    for (const auto& c : cmp) {
        EXPECT_NEAR(c.fidelity, 1.0, 1e-13);
        EXPECT_FALSE(c.flagged);
    }
    EXPECT_LT(evolve::fidelity_unitary_phase_insensitive(plus, minus), 0.5);

    const Subspace n1 = total_n_subspace(s, {0, 1}, 1);
    EXPECT_THROW(evolve::sectorwise_compare(plus, minus, {n1, n1}), std::invalid_argument);

    // exp(-i x_a t) with x_a = a + a' moves population out of N = 1.
    const Operator x = annihilator(s, 0) + creator(s, 0);
    TermList h(s);
    h.add(x, 1.0, 0.0, "x");
    const Operator u = evolve::propagate_static(h, 0.4);
    EXPECT_GT(evolve::leakage(u, n1), 0.1);
    EXPECT_TRUE(evolve::sectorwise_compare(u, u, {n1})[0].flagged);
}

TEST(Evolve, DefaultSteps)
{
    const auto h = driven_qubit(1.0, 2 * kPi);
    EXPECT_EQ(evolve::default_steps(h, 0.5), 200);
    EXPECT_EQ(evolve::default_steps(h, 10.0), 2000);
}
