#include "ccsim/linalg.hpp"

#include <stdexcept>

namespace ccsim {

Matrix unitary_exp(const Matrix& hermitian, double t)
{
    if (hermitian.rows() != hermitian.cols())
        throw std::invalid_argument("unitary_exp: matrix is not square");
    if (hermitian.rows() == 0)
        return hermitian;

    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("unitary_exp: eigendecomposition did not converge");

    const Eigen::VectorXd& energies = solver.eigenvalues();
    const Matrix& vectors = solver.eigenvectors();
    Vector phases(energies.size());
    for (Eigen::Index k = 0; k < energies.size(); ++k)
        phases[k] = std::exp(Complex(0.0, -energies[k] * t));
    return vectors * phases.asDiagonal() * vectors.adjoint();
}

double unitarity_defect(const Matrix& u)
{
    const Matrix gram = u.adjoint() * u;
    return (gram - Matrix::Identity(u.rows(), u.cols())).norm();
}

Matrix hermitian_part(const Matrix& m)
{
    return 0.5 * (m + m.adjoint());
}

Matrix restrict_to(const Matrix& m, const std::vector<std::size_t>& indices)
{
    const auto n = static_cast<Eigen::Index>(indices.size());
    Matrix out(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            out(r, c) = m(static_cast<Eigen::Index>(indices[r]), static_cast<Eigen::Index>(indices[c]));
    return out;
}

}  // namespace ccsim
