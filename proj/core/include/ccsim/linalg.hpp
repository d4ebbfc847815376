#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ccsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// exp(-i H t) for Hermitian H, via V exp(-i E t) V^dagger.
///
/// Only the lower triangle of `hermitian` is read.
Matrix unitary_exp(const Matrix& hermitian, double t);

/// ||U^dagger U - I||_F
double unitarity_defect(const Matrix& u);

Matrix hermitian_part(const Matrix& m);

/// Rows and columns of `m` at `indices`, in order.
Matrix restrict_to(const Matrix& m, const std::vector<std::size_t>& indices);

}  // namespace ccsim
