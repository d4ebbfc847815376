#include "ccsim/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ccsim {

namespace {

void check_mode(const SpaceDescriptor& space, std::size_t mode)
{
    if (mode >= space.mode_count())
        throw std::out_of_range("mode index " + std::to_string(mode) + " out of range (space has " +
                                std::to_string(space.mode_count()) + " modes)");
}

void check_qubit(const SpaceDescriptor& space, std::size_t qubit)
{
    if (qubit >= space.qubit_count())
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range (space has " +
                                std::to_string(space.qubit_count()) + " qubits)");
}

void require_same_space(const Operator& a, const Operator& b)
{
    if (!(a.space() == b.space()))
        throw std::invalid_argument("operators act on different spaces");
}

// Embeds a single-factor local matrix acting on the digit with the given
// stride and radix. O(dim * radix).
Operator embed(const SpaceDescriptor& space, std::size_t stride, std::size_t radix, const Matrix& local)
{
    const auto dim = space.dimension();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t digit = (col / stride) % radix;
        const std::size_t base = col - digit * stride;
        for (std::size_t row_digit = 0; row_digit < radix; ++row_digit) {
            const Complex v = local(static_cast<Eigen::Index>(row_digit), static_cast<Eigen::Index>(digit));
            if (v != Complex{})
                m(static_cast<Eigen::Index>(base + row_digit * stride), static_cast<Eigen::Index>(col)) = v;
        }
    }
    return Operator(space, std::move(m));
}

}  // namespace

std::size_t SpaceDescriptor::levels(std::size_t mode) const
{
    return static_cast<std::size_t>(cutoffs_.at(mode)) + 1;
}

std::size_t SpaceDescriptor::mode_stride(std::size_t mode) const
{
    std::size_t stride = 1;
    for (std::size_t k = 0; k < mode; ++k)
        stride *= levels(k);
    return stride;
}

std::size_t SpaceDescriptor::qubit_stride(std::size_t qubit) const
{
    return mode_block_ << qubit;
}

SpaceDescriptor make_space(std::vector<int> mode_cutoffs, int qubit_count, std::size_t dimension_limit)
{
    if (qubit_count < 0)
        throw std::invalid_argument("qubit count must be non-negative");
    SpaceDescriptor space;
    std::size_t dim = 1;
    for (std::size_t k = 0; k < mode_cutoffs.size(); ++k) {
        if (mode_cutoffs[k] < 1)
            throw std::invalid_argument("mode " + std::to_string(k) + " has cutoff " +
                                        std::to_string(mode_cutoffs[k]) + "; cutoffs must be >= 1");
        dim *= static_cast<std::size_t>(mode_cutoffs[k]) + 1;
        if (dim > dimension_limit)
            throw std::invalid_argument("space dimension exceeds limit " + std::to_string(dimension_limit));
    }
    space.mode_block_ = dim;
    for (int q = 0; q < qubit_count; ++q) {
        dim *= 2;
        if (dim > dimension_limit)
            throw std::invalid_argument("space dimension exceeds limit " + std::to_string(dimension_limit));
    }
    space.cutoffs_ = std::move(mode_cutoffs);
    space.qubits_ = static_cast<std::size_t>(qubit_count);
    space.dimension_ = dim;
    return space;
}

BasisLabel decode(const SpaceDescriptor& space, std::size_t index)
{
    if (index >= space.dimension())
        throw std::out_of_range("basis index out of range");
    BasisLabel label;
    label.occupations.resize(space.mode_count());
    label.qubits.resize(space.qubit_count());
    for (std::size_t k = 0; k < space.mode_count(); ++k) {
        label.occupations[k] = static_cast<int>(index % space.levels(k));
        index /= space.levels(k);
    }
    for (std::size_t q = 0; q < space.qubit_count(); ++q) {
        label.qubits[q] = static_cast<int>(index % 2);
        index /= 2;
    }
    return label;
}

std::size_t encode(const SpaceDescriptor& space, const BasisLabel& label)
{
    if (label.occupations.size() != space.mode_count() || label.qubits.size() != space.qubit_count())
        throw std::invalid_argument("basis label shape does not match space");
    std::size_t index = 0;
    for (std::size_t k = 0; k < space.mode_count(); ++k) {
        const int n = label.occupations[k];
        if (n < 0 || n > space.mode_cutoffs()[k])
            throw std::out_of_range("occupation outside Fock cutoff");
        index += static_cast<std::size_t>(n) * space.mode_stride(k);
    }
    for (std::size_t q = 0; q < space.qubit_count(); ++q) {
        const int s = label.qubits[q];
        if (s != 0 && s != 1)
            throw std::out_of_range("qubit state must be 0 (g) or 1 (e)");
        index += static_cast<std::size_t>(s) * space.qubit_stride(q);
    }
    return index;
}

Vector basis_vector(const SpaceDescriptor& space, const BasisLabel& label)
{
    Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dimension()));
    v[static_cast<Eigen::Index>(encode(space, label))] = 1.0;
    return v;
}

Operator::Operator(SpaceDescriptor space)
    : space_(std::move(space))
    , matrix_(Matrix::Zero(static_cast<Eigen::Index>(space_.dimension()),
                           static_cast<Eigen::Index>(space_.dimension())))
{
}

Operator::Operator(SpaceDescriptor space, Matrix matrix)
    : space_(std::move(space))
    , matrix_(std::move(matrix))
{
    const auto dim = static_cast<Eigen::Index>(space_.dimension());
    if (matrix_.rows() != dim || matrix_.cols() != dim)
        throw std::invalid_argument("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                                    std::to_string(matrix_.cols()) + " but the space has dimension " +
                                    std::to_string(dim));
}

Operator Operator::identity(const SpaceDescriptor& space)
{
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    return Operator(space, Matrix::Identity(dim, dim));
}

Operator Operator::adjoint() const
{
    return Operator(space_, matrix_.adjoint());
}

Vector Operator::apply(const Vector& state) const
{
    if (state.size() != matrix_.cols())
        throw std::invalid_argument("state dimension does not match operator");
    return matrix_ * state;
}

Operator& Operator::operator+=(const Operator& other)
{
    require_same_space(*this, other);
    matrix_ += other.matrix_;
    return *this;
}

Operator& Operator::operator-=(const Operator& other)
{
    require_same_space(*this, other);
    matrix_ -= other.matrix_;
    return *this;
}

Operator& Operator::operator*=(Complex scale)
{
    matrix_ *= scale;
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs)
{
    require_same_space(lhs, rhs);
    return Operator(lhs.space_, lhs.matrix_ * rhs.matrix_);
}

Operator commutator(const Operator& a, const Operator& b)
{
    return a * b - b * a;
}

Operator anticommutator(const Operator& a, const Operator& b)
{
    return a * b + b * a;
}

Operator annihilator(const SpaceDescriptor& space, std::size_t mode)
{
    check_mode(space, mode);
    const auto levels = space.levels(mode);
    Matrix local = Matrix::Zero(static_cast<Eigen::Index>(levels), static_cast<Eigen::Index>(levels));
    for (std::size_t n = 1; n < levels; ++n)
        local(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(static_cast<double>(n));
    return embed(space, space.mode_stride(mode), levels, local);
}

Operator creator(const SpaceDescriptor& space, std::size_t mode)
{
    return annihilator(space, mode).adjoint();
}

Operator number(const SpaceDescriptor& space, std::size_t mode)
{
    check_mode(space, mode);
    const auto levels = space.levels(mode);
    Matrix local = Matrix::Zero(static_cast<Eigen::Index>(levels), static_cast<Eigen::Index>(levels));
    for (std::size_t n = 0; n < levels; ++n)
        local(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = static_cast<double>(n);
    return embed(space, space.mode_stride(mode), levels, local);
}

Operator pauli(const SpaceDescriptor& space, std::size_t qubit, Pauli which)
{
    check_qubit(space, qubit);
    Matrix local = Matrix::Zero(2, 2);
    switch (which) {
    case Pauli::Z:
        local(0, 0) = -1.0;
        local(1, 1) = 1.0;
        break;
    case Pauli::Plus:
        local(1, 0) = 1.0;
        break;
    case Pauli::Minus:
        local(0, 1) = 1.0;
        break;
    }
    return embed(space, space.qubit_stride(qubit), 2, local);
}

Operator charge_boson(const SpaceDescriptor& space, std::size_t mode_a, std::size_t mode_b)
{
    check_mode(space, mode_a);
    check_mode(space, mode_b);
    if (mode_a == mode_b)
        throw std::invalid_argument("charge operator needs two distinct modes");
    return number(space, mode_a) - number(space, mode_b);
}

Operator charge_fermion(const SpaceDescriptor& space, std::size_t q1, std::size_t q2)
{
    check_qubit(space, q1);
    check_qubit(space, q2);
    if (q1 == q2)
        throw std::invalid_argument("charge operator needs two distinct qubits");
    const auto n1 = pauli(space, q1, Pauli::Plus) * pauli(space, q1, Pauli::Minus);
    const auto n2 = pauli(space, q2, Pauli::Plus) * pauli(space, q2, Pauli::Minus);
    return n1 - n2;
}

Subspace::Subspace(SpaceDescriptor space, std::vector<std::size_t> basis_indices)
    : space_(std::move(space))
    , indices_(std::move(basis_indices))
    , member_(space_.dimension(), false)
{
    for (auto idx : indices_) {
        if (idx >= space_.dimension())
            throw std::out_of_range("subspace index " + std::to_string(idx) + " out of range");
        if (member_[idx])
            throw std::invalid_argument("subspace index " + std::to_string(idx) + " repeated");
        member_[idx] = true;
    }
}

bool Subspace::contains(std::size_t index) const
{
    return index < member_.size() && member_[index];
}

Operator Subspace::projector() const
{
    Operator p(space_);
    Matrix m = p.matrix();
    for (auto idx : indices_)
        m(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = 1.0;
    return Operator(space_, std::move(m));
}

Matrix Subspace::restrict(const Operator& op) const
{
    if (!(op.space() == space_))
        throw std::invalid_argument("operator and subspace live in different spaces");
    return restrict_to(op.matrix(), indices_);
}

Matrix Subspace::restrict(const Matrix& m) const
{
    const auto dim = static_cast<Eigen::Index>(space_.dimension());
    if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("matrix does not match subspace's space");
    return restrict_to(m, indices_);
}

Subspace select(const SpaceDescriptor& space, const std::function<bool(const BasisLabel&)>& keep)
{
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < space.dimension(); ++i)
        if (keep(decode(space, i)))
            indices.push_back(i);
    return Subspace(space, std::move(indices));
}

Subspace total_n_subspace(const SpaceDescriptor& space, const std::vector<std::size_t>& modes, int n)
{
    for (auto m : modes)
        check_mode(space, m);
    if (n < 0)
        throw std::invalid_argument("total excitation number must be non-negative");
    return select(space, [&](const BasisLabel& label) {
        int total = 0;
        for (auto m : modes)
            total += label.occupations[m];
        return total == n;
    });
}

Subspace total_n_at_most(const SpaceDescriptor& space, const std::vector<std::size_t>& modes, int n_max)
{
    for (auto m : modes)
        check_mode(space, m);
    return select(space, [&](const BasisLabel& label) {
        int total = 0;
        for (auto m : modes)
            total += label.occupations[m];
        return total <= n_max;
    });
}

std::vector<Subspace> total_n_sectors(const SpaceDescriptor& space, const std::vector<std::size_t>& modes,
                                      int n_max)
{
    std::vector<Subspace> sectors;
    for (int n = 0; n <= n_max; ++n)
        sectors.push_back(total_n_subspace(space, modes, n));
    return sectors;
}

Subspace intersect(const Subspace& a, const Subspace& b)
{
    if (!(a.space() == b.space()))
        throw std::invalid_argument("subspaces live in different spaces");
    std::vector<std::size_t> common;
    for (auto idx : a.indices())
        if (b.contains(idx))
            common.push_back(idx);
    std::sort(common.begin(), common.end());
    return Subspace(a.space(), std::move(common));
}

}  // namespace ccsim
