#pragma once

// Reference constructions used as independent oracles: operators from
// explicit Kronecker products and a Taylor scaling-and-squaring exponential.
// None of this goes through the library's embedding or eigensolver.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Local operators listed first subsystem first; the first one is the
/// fastest-varying index.
inline Matrix tensor(const std::vector<Matrix>& locals)
{
    Matrix out = Matrix::Identity(1, 1);
    for (const auto& m : locals)
        out = kron(m, out);
    return out;
}

inline Matrix destroy(int cutoff)
{
    Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Matrix eye(int n) { return Matrix::Identity(n, n); }

// Qubit basis (g, e).
inline Matrix sigma_plus()
{
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}
inline Matrix sigma_minus() { return sigma_plus().adjoint(); }
inline Matrix sigma_z()
{
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

/// exp(a) by scaling and squaring with a 30-term Taylor series.
inline Matrix expm(const Matrix& a)
{
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5)
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Matrix x = a / std::ldexp(1.0, squarings);
    Matrix term = Matrix::Identity(a.rows(), a.cols());
    Matrix sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k)
        sum = sum * sum;
    return sum;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double relative_error(const Matrix& got, const Matrix& want)
{
    const double scale = max_abs(want);
    return max_abs(got - want) / (scale > 0 ? scale : 1.0);
}

inline Complex random_complex(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> mag(lo, hi);
    std::uniform_real_distribution<double> arg(-3.141592653589793, 3.141592653589793);
    return std::polar(mag(rng), arg(rng));
}

}  // namespace oracle
