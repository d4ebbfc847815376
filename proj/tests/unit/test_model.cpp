#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "ccsim/model.hpp"
#include "oracle.hpp"

using namespace ccsim;
using oracle::Matrix;

namespace {

struct WarningCapture {
    std::vector<std::string> messages;
    model::WarningHandler previous;
    WarningCapture()
    {
        previous = model::set_warning_handler([this](std::string_view m) { messages.emplace_back(m); });
    }
    ~WarningCapture() { model::set_warning_handler(previous); }
};

// Restriction of m to the basis states with n_a + n_b <= n_max (two modes of
// equal cutoff, no qubits).
Matrix low_n_block(const Matrix& m, int cutoff, int n_max)
{
    std::vector<Eigen::Index> keep;
    for (int i = 0; i < m.rows(); ++i)
        if (i % (cutoff + 1) + i / (cutoff + 1) <= n_max)
            keep.push_back(i);
    Matrix out(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < keep.size(); ++c)
            out(r, c) = m(keep[r], keep[c]);
    return out;
}

}  // namespace

TEST(Model, BosonCavityRwaMatchesHandBuiltHamiltonian)
{
    const int n = 3;
    const auto s = make_space({n, n}, 1);
    model::BosonCavityParams p;
    p.Omega = {0.2e6, -0.9e6};
    p.lambda_a = {0.7e5, 0.3e5};
    const auto h = model::boson_cavity_rwa(s, p);
    EXPECT_EQ(h.size(), 4u);
    EXPECT_TRUE(h.is_hermitian_paired());

    using namespace oracle;
    const Matrix A = tensor({destroy(n), eye(n + 1), eye(2)});
    const Matrix B = tensor({eye(n + 1), destroy(n), eye(2)});
    const Matrix SP = tensor({eye(n + 1), eye(n + 1), sigma_plus()});
    const double t = 3.3e-7;
    const Complex dl = std::exp(Complex(0, (p.omega0 - p.omega_l - p.nu) * t));
    const Complex df = std::exp(Complex(0, (p.omega0 - p.omega_f) * t));
    Matrix half = Complex(0, 1) * p.eta_l * p.Omega * dl * B * SP + p.lambda_a * df * A * SP;
    const Matrix want = half + Matrix(half.adjoint());
    EXPECT_LT(relative_error(h.at(t).matrix(), want), 1e-14);
}

TEST(Model, BosonCavityEffectivePrintedAndCorrectedCouplings)
{
    const auto s = make_space({2, 2}, 1);
    model::BosonCavityParams p;  // D_l = D_f = -1.1e7
    const auto printed = model::boson_cavity_eff(s, p, false).couplings;
    EXPECT_NEAR(printed.omega_a, 1e10 / 1e7, 1e-9);
    EXPECT_NEAR(printed.omega_b, 1e-2 * 1e12 / 1e7, 1e-9);
    EXPECT_NEAR(std::abs(printed.g - Complex(0, 1) * Complex(0, -1e6) * 0.1 * 1e5 / 1e7), 0.0, 1e-9);

    const auto corrected = model::boson_cavity_eff(s, p, true).couplings;
    EXPECT_NEAR(corrected.omega_a, 1e10 / 1.1e7, 1e-9);
    EXPECT_NEAR(corrected.omega_b, 1e10 / 1.1e7, 1e-9);
    EXPECT_NEAR(std::abs(corrected.g - Complex(1e10 / 1.1e7, 0)), 0.0, 1e-9);

    p.omega_f = 2.3e7;
    EXPECT_THROW(model::boson_cavity_eff(s, p, true), std::domain_error);
}

TEST(Model, TwoAxisEffectiveMatchesFormula)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> eta(0.02, 0.2);
    std::uniform_real_distribution<double> det(-30.0, 30.0);
    const int n = 3;
    const auto s = make_space({n, n}, 0);
    using namespace oracle;
    const Matrix A = tensor({destroy(n), eye(n + 1)});
    const Matrix B = tensor({eye(n + 1), destroy(n)});
    for (int trial = 0; trial < 5; ++trial) {
        model::TwoAxisParams p;
        p.eta_x = eta(rng);
        p.eta_y = eta(rng);
        const double d = det(rng) + 40.0;
        p.omega_x = p.omega0 - p.nu_x + d;
        p.omega_y = p.omega0 - p.nu_y + d;
        const Matrix want = (p.eta_x * p.eta_x / d) * A.adjoint() * A + (p.eta_y * p.eta_y / d) * B.adjoint() * B +
                            (p.eta_x * p.eta_y / d) * (A.adjoint() * B + A * B.adjoint());
        EXPECT_LT(relative_error(model::two_axis_eff(s, p).summed().matrix(), want), 1e-13);
    }
    model::TwoAxisParams bad;
    bad.omega_y += 1.0;
    EXPECT_THROW(model::two_axis_eff(s, bad), std::domain_error);
}

TEST(Model, FermionHamiltonians)
{
    const int n = 3;
    const auto s = make_space({n}, 2);
    model::FermionParams p;
    p.lambda = {3e4, 4e4};
    using namespace oracle;
    const Matrix A = tensor({destroy(n), eye(2), eye(2)});
    const Matrix P1 = tensor({eye(n + 1), sigma_plus(), eye(2)});
    const Matrix P2 = tensor({eye(n + 1), eye(2), sigma_plus()});
    const Matrix Z1 = tensor({eye(n + 1), sigma_z(), eye(2)});
    const Matrix Z2 = tensor({eye(n + 1), eye(2), sigma_z()});

    const double t = 1.7e-7;
    const Matrix half = p.lambda * std::exp(Complex(0, p.delta * t)) * A * (P1 + P2);
    EXPECT_LT(relative_error(model::fermion_interaction(s, p).at(t).matrix(), half + Matrix(half.adjoint())), 1e-14);

    const double k = std::norm(p.lambda) / p.delta;
    const Matrix M1 = P1.adjoint();
    const Matrix M2 = P2.adjoint();
    const Matrix want = k * (P1 * M1 + P2 * M2 + A.adjoint() * A * (Z1 + Z2) + P1 * M2 + M1 * P2);
    EXPECT_LT(relative_error(model::fermion_eff(s, p).summed().matrix(), want), 1e-14);
}

TEST(Model, IdealBosonConjugationMatchesSeriesExponential)
{
    const int n = 4;
    const auto s = make_space({n, n}, 0);
    using namespace oracle;
    const Matrix A = tensor({destroy(n), eye(n + 1)});
    const Matrix B = tensor({eye(n + 1), destroy(n)});
    for (int p : {1, -1}) {
        const Matrix gen = A.adjoint() * B + B.adjoint() * A - double(p) * (A.adjoint() * A + B.adjoint() * B);
        const Matrix want = expm(Complex(0, -kPi / 2) * gen);
        const Matrix got = model::ideal_C_boson(s, 0, 1, p).matrix();
        EXPECT_LT(max_abs(low_n_block(got, n, n) - low_n_block(want, n, n)), 1e-12) << "p=" << p;
        EXPECT_LT(unitarity_defect(got), 1e-12);
    }
    EXPECT_THROW(model::ideal_C_boson(s, 0, 1, 0), std::invalid_argument);
    EXPECT_THROW(model::ideal_C_boson(make_space({2, 3}, 0), 0, 1, 1), std::invalid_argument);
}

TEST(Model, IdealBosonSwapsSingleExcitation)
{
    // N = 1 sector: C|1,0> = -i e^{i p pi/2} |0,1>.
    const auto s = make_space({3, 3}, 0);
    for (int p : {1, -1}) {
        const Operator c = model::ideal_C_boson(s, 0, 1, p);
        const Vector out = c.apply(basis_vector(s, {{1, 0}, {}}));
        const Complex want = Complex(0, -1) * std::exp(Complex(0, p * kPi / 2));
        EXPECT_NEAR(std::abs(out(encode(s, {{0, 1}, {}})) - want), 0.0, 1e-13);
    }
}

TEST(Model, FermionConjugationMatchesSeriesExponential)
{
    const auto s = make_space({2}, 2);
    using namespace oracle;
    const Matrix P1 = tensor({eye(3), sigma_plus(), eye(2)});
    const Matrix P2 = tensor({eye(3), eye(2), sigma_plus()});
    const Matrix M1 = P1.adjoint(), M2 = P2.adjoint();
    const Matrix gen = P1 * M2 + P2 * M1 - P1 * M1 - P2 * M2;
    EXPECT_LT(max_abs(model::ideal_C_fermion(s, 0, 1).matrix() - expm(Complex(0, -kPi / 2) * gen)), 1e-12);

    for (auto sa : {model::Sign::Plus, model::Sign::Minus})
        for (auto sb : {model::Sign::Plus, model::Sign::Minus}) {
            const double a = static_cast<int>(sa), b = static_cast<int>(sb);
            const Matrix g2 = a * (P1 * M1 + P2 * M2) + b * (P1 * M2 + M1 * P2);
            EXPECT_LT(max_abs(model::engineered_C_fermion(s, sa, sb).matrix() - expm(Complex(0, -kPi / 2) * g2)),
                      1e-12);
        }
}

TEST(Model, WarnsOutsideWeakCoupling)
{
    WarningCapture capture;
    const auto s = make_space({2}, 2);
    model::FermionParams p;
    p.lambda = 1.0;
    p.delta = 5.0;
    (void)model::fermion_interaction(s, p);
    ASSERT_EQ(capture.messages.size(), 1u);
    EXPECT_NE(capture.messages[0].find("fermion"), std::string::npos);

    p.delta = 100.0;
    (void)model::fermion_interaction(s, p);
    EXPECT_EQ(capture.messages.size(), 1u);
}

TEST(Model, ShapeChecks)
{
    EXPECT_THROW(model::two_axis_rwa(make_space({2}, 1), {}), std::invalid_argument);
    model::FermionParams p;
    p.delta = 0.0;
    EXPECT_THROW(model::fermion_interaction(make_space({2}, 2), p), std::domain_error);
}
