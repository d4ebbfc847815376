#pragma once

// Truncated Fock-space and two-level operator algebra.
//
// Basis ordering: modes first, then qubits. Inside each group the first
// entry is the least significant digit, and the mode group occupies the
// low-order part of the index:
//
//   index = n_0 + (c_0+1) * (n_1 + (c_1+1) * (... + D_modes * (s_0 + 2*(s_1 + ...))))
//
// where c_k is the cutoff of mode k, n_k its occupation and s_q the state of
// qubit q with |g> = 0 and |e> = 1.

#include <cstddef>
#include <functional>
#include <vector>

#include "ccsim/linalg.hpp"

namespace ccsim {

inline constexpr std::size_t kDefaultDimensionLimit = 4096;

enum class QubitState { Ground = 0, Excited = 1 };

class SpaceDescriptor {
public:
    /// Trivial one-dimensional space.
    SpaceDescriptor() = default;

    const std::vector<int>& mode_cutoffs() const { return cutoffs_; }
    std::size_t mode_count() const { return cutoffs_.size(); }
    std::size_t qubit_count() const { return qubits_; }
    std::size_t dimension() const { return dimension_; }

    /// Number of Fock levels of mode k (cutoff + 1).
    std::size_t levels(std::size_t mode) const;
    std::size_t mode_stride(std::size_t mode) const;
    std::size_t qubit_stride(std::size_t qubit) const;
    std::size_t mode_block() const { return mode_block_; }

    friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;

private:
    friend SpaceDescriptor make_space(std::vector<int>, int, std::size_t);

    std::vector<int> cutoffs_;
    std::size_t qubits_ = 0;
    std::size_t dimension_ = 1;
    std::size_t mode_block_ = 1;
};

/// Throws std::invalid_argument on a cutoff < 1, a negative qubit count or a
/// dimension above `dimension_limit`.
SpaceDescriptor make_space(std::vector<int> mode_cutoffs, int qubit_count,
                           std::size_t dimension_limit = kDefaultDimensionLimit);

struct BasisLabel {
    std::vector<int> occupations;
    std::vector<int> qubits;

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

BasisLabel decode(const SpaceDescriptor& space, std::size_t index);
std::size_t encode(const SpaceDescriptor& space, const BasisLabel& label);
Vector basis_vector(const SpaceDescriptor& space, const BasisLabel& label);

class Operator {
public:
    explicit Operator(SpaceDescriptor space);
    Operator(SpaceDescriptor space, Matrix matrix);

    static Operator identity(const SpaceDescriptor& space);

    const SpaceDescriptor& space() const { return space_; }
    const Matrix& matrix() const { return matrix_; }
    std::size_t dimension() const { return space_.dimension(); }

    Operator adjoint() const;
    Vector apply(const Vector& state) const;
    double norm() const { return matrix_.norm(); }

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);
    Operator& operator*=(Complex scale);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);
    friend Operator operator*(Complex scale, Operator op) { return op *= scale; }
    friend Operator operator*(Operator op, Complex scale) { return op *= scale; }

private:
    SpaceDescriptor space_;
    Matrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Truncated annihilation operator, <n-1|a|n> = sqrt(n).
Operator annihilator(const SpaceDescriptor& space, std::size_t mode);
Operator creator(const SpaceDescriptor& space, std::size_t mode);
Operator number(const SpaceDescriptor& space, std::size_t mode);

enum class Pauli { Z, Plus, Minus };

/// sigma_z = |e><e| - |g><g|, sigma+ = |e><g|, sigma- = |g><e|.
Operator pauli(const SpaceDescriptor& space, std::size_t qubit, Pauli which);

/// Q = a^dagger a - b^dagger b.
Operator charge_boson(const SpaceDescriptor& space, std::size_t mode_a, std::size_t mode_b);
/// Q = sigma1+ sigma1- - sigma2+ sigma2-.
Operator charge_fermion(const SpaceDescriptor& space, std::size_t q1, std::size_t q2);

class Subspace {
public:
    /// Indices must be distinct and below the space dimension.
    Subspace(SpaceDescriptor space, std::vector<std::size_t> basis_indices);

    const SpaceDescriptor& space() const { return space_; }
    const std::vector<std::size_t>& indices() const { return indices_; }
    std::size_t dimension() const { return indices_.size(); }
    bool contains(std::size_t index) const;

    Operator projector() const;
    Matrix restrict(const Operator& op) const;
    Matrix restrict(const Matrix& m) const;

private:
    SpaceDescriptor space_;
    std::vector<std::size_t> indices_;
    std::vector<bool> member_;
};

Subspace select(const SpaceDescriptor& space, const std::function<bool(const BasisLabel&)>& keep);

/// States whose summed occupation over `modes` equals n (any qubit configuration).
Subspace total_n_subspace(const SpaceDescriptor& space, const std::vector<std::size_t>& modes, int n);

/// States with summed occupation over `modes` at most n_max.
Subspace total_n_at_most(const SpaceDescriptor& space, const std::vector<std::size_t>& modes, int n_max);

/// Total-N sectors 0..n_max over `modes`.
std::vector<Subspace> total_n_sectors(const SpaceDescriptor& space, const std::vector<std::size_t>& modes,
                                      int n_max);

/// Common basis states of two subspaces of the same space, sorted.
Subspace intersect(const Subspace& a, const Subspace& b);

}  // namespace ccsim
