#include <gtest/gtest.h>

#include <random>

#include "ccsim/james.hpp"
#include "ccsim/model.hpp"
#include "oracle.hpp"

using namespace ccsim;
using oracle::Matrix;

namespace {

Factor a(std::size_t m) { return {FactorKind::Annihilate, m}; }
Factor sp(std::size_t q) { return {FactorKind::SigmaPlus, q}; }
Factor sz(std::size_t q) { return {FactorKind::SigmaZ, q}; }

}  // namespace

TEST(James, IntegrateDividesByIFrequency)
{
    const auto s = make_space({2}, 1);
    TermList h(s);
    h.add_with_conjugate({a(0), sp(0)}, Complex(2.0, 1.0), 4.0);
    const TermList g = james::integrate_terms(h);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_NEAR(std::abs(g.terms()[0].amplitude - Complex(2.0, 1.0) / Complex(0, 4.0)), 0.0, 1e-15);

    h.add({sz(0)}, 1.0, 0.0);
    try {
        (void)james::integrate_terms(h);
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("sz"), std::string::npos);
    }
}

TEST(James, TwoLevelStarkShift)
{
    // One detuned sideband X = a sp at -d: H_eff = (g^2/d)(X'X - XX').
    const int n = 3;
    const auto s = make_space({n}, 1);
    const double g = 0.3, d = 7.0;
    TermList h(s);
    h.add_with_conjugate({a(0), sp(0)}, g, -d);
    const auto eff = james::effective_hamiltonian(h);
    EXPECT_EQ(eff.product_count, 4u);
    EXPECT_EQ(eff.dropped_terms.size(), 2u);

    using namespace oracle;
    const Matrix A = tensor({destroy(n), eye(2)});
    const Matrix SP = tensor({eye(n + 1), sigma_plus()});
    const Matrix X = A * SP;
    const Matrix want = (g * g / d) * (X.adjoint() * X - X * X.adjoint());
    EXPECT_LT(relative_error(eff.static_terms.summed().matrix(), want), 1e-13);
}

TEST(James, ReproducesTwoAxisEffectiveOnGroundState)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> eta(0.02, 0.2);
    std::uniform_real_distribution<double> det(5.0, 50.0);
    const auto s = make_space({4, 4}, 1);
    const auto s0 = make_space({4, 4}, 0);
    const Subspace ground = select(s, [](const BasisLabel& l) { return l.qubits[0] == 0; });
    for (int trial = 0; trial < 4; ++trial) {
        model::TwoAxisParams p;
        p.eta_x = eta(rng);
        p.eta_y = eta(rng);
        const double d = trial % 2 ? det(rng) : -det(rng);
        p.omega_x = p.omega0 - p.nu_x + d;
        p.omega_y = p.omega0 - p.nu_y + d;
        const auto eff = james::effective_hamiltonian(model::two_axis_rwa(s, p));
        const auto projected = james::project_qubit(eff.static_terms, 0, QubitState::Ground);
        const Matrix got = ground.restrict(projected.summed());
        const Matrix want = model::two_axis_eff(s0, p).summed().matrix();
        EXPECT_LT(oracle::relative_error(got, want), 1e-10);
    }
}

TEST(James, NonresonantInputDropsEverything)
{
    const auto s = make_space({2}, 1);
    TermList h(s);
    h.add({a(0), sp(0)}, 1.0, 3.0);
    h.add({sz(0)}, 0.5, 5.0);
    const auto eff = james::effective_hamiltonian(h);
    EXPECT_TRUE(eff.static_terms.empty());
    EXPECT_EQ(eff.dropped_terms.size(), eff.product_count);
    EXPECT_EQ(eff.product_count, 4u);
}

TEST(James, ResonanceToleranceWidensTheKeptSet)
{
    // Frequencies 10 and -10.5 pair to 0.5: dropped by default, kept at tol 1.
    const auto s = make_space({2}, 1);
    TermList h(s);
    h.add_with_conjugate({a(0), sp(0)}, 0.1, 10.0);
    h.add_with_conjugate({sz(0)}, 0.1, 10.5);
    EXPECT_NEAR(james::default_resonance_tolerance(h), 1.05e-8, 1e-20);
    const auto strict = james::effective_hamiltonian(h);
    const auto loose = james::effective_hamiltonian(h, 1.0);
    EXPECT_GT(strict.dropped_terms.size(), loose.dropped_terms.size());
    EXPECT_EQ(strict.product_count, loose.product_count);
}

TEST(James, EffectiveHamiltonianIsHermitian)
{
    std::mt19937_64 rng(3);
    const auto s = make_space({3}, 2);
    for (int trial = 0; trial < 10; ++trial) {
        TermList h(s);
        h.add_with_conjugate({a(0), sp(0)}, oracle::random_complex(rng, 0.1, 1.0), 4.0);
        h.add_with_conjugate({a(0), sp(1)}, oracle::random_complex(rng, 0.1, 1.0), 4.0);
        h.add_with_conjugate({sp(0), sp(1)}, oracle::random_complex(rng, 0.1, 1.0), -9.0);
        const Matrix m = james::effective_hamiltonian(h).static_terms.summed().matrix();
        EXPECT_LT((m - Matrix(m.adjoint())).norm(), 1e-13 * (1.0 + m.norm()));
    }
}

TEST(James, NumericTermsGiveOneMaterializedTerm)
{
    const auto s = make_space({2}, 1);
    TermList sym(s);
    sym.add_with_conjugate({a(0), sp(0)}, 0.2, 3.0);
    TermList num(s);
    for (const auto& t : sym.terms())
        num.add(t.op, t.amplitude, t.frequency, "numeric");
    const auto e_sym = james::effective_hamiltonian(sym);
    const auto e_num = james::effective_hamiltonian(num);
    ASSERT_EQ(e_num.static_terms.size(), 1u);
    EXPECT_LT((e_num.static_terms.summed().matrix() - e_sym.static_terms.summed().matrix()).norm(), 1e-14);
}

TEST(James, ProjectQubitTakesExpectationValues)
{
    const auto s = make_space({2}, 1);
    TermList t(s);
    t.add({a(0), sz(0)}, 2.0, 0.0);
    const auto g = james::project_qubit(t, 0, QubitState::Ground);
    const auto e = james::project_qubit(t, 0, QubitState::Excited);
    const Matrix A = annihilator(s, 0).matrix();
    EXPECT_LT((g.summed().matrix() + 2.0 * A).norm(), 1e-14);
    EXPECT_LT((e.summed().matrix() - 2.0 * A).norm(), 1e-14);
}

TEST(James, ValidateEffectiveShrinksWithDetuning)
{
    const auto s = make_space({2, 2}, 1);
    model::TwoAxisParams p;
    double previous = 1.0;
    for (double d : {2.0, 20.0}) {
        p.omega_x = p.omega0 - p.nu_x + d;
        p.omega_y = p.omega_x;
        const auto full = model::two_axis_rwa(s, p);
        const auto eff = james::effective_hamiltonian(full).static_terms;
        const double t = 2.0 * kPi / d * 8;
        const double err = james::validate_effective(full, eff, t, 4000);
        EXPECT_LT(err, previous);
        previous = err;
    }
}
