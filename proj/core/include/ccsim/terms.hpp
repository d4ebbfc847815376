#pragma once

// Oscillating Hamiltonian terms: H(t) = sum_k amplitude_k * Op_k * exp(i nu_k t).

#include <optional>
#include <string>
#include <vector>

#include "ccsim/hilbert.hpp"

namespace ccsim {

enum class FactorKind { Annihilate, Create, SigmaPlus, SigmaMinus, SigmaZ };

bool acts_on_mode(FactorKind kind);

/// One ladder or Pauli factor. `target` is a mode index for a/adag and a
/// qubit index for sp/sm/sz.
struct Factor {
    FactorKind kind;
    std::size_t target;

    friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// Ordered operator product, leftmost factor applied last. Empty = identity.
class OpProduct {
public:
    OpProduct() = default;
    explicit OpProduct(std::vector<Factor> factors)
        : factors_(std::move(factors))
    {
    }
    OpProduct(std::initializer_list<Factor> factors)
        : factors_(factors)
    {
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_identity() const { return factors_.empty(); }

    OpProduct adjoint() const;
    friend OpProduct operator*(const OpProduct& lhs, const OpProduct& rhs);

    friend auto operator<=>(const OpProduct&, const OpProduct&) = default;

private:
    std::vector<Factor> factors_;
};

/// Canonical form: factors grouped by subsystem (modes in index order, then
/// qubits), original order kept inside a mode, and each qubit string reduced
/// to one of I, sz, sp, sm, sp*sm, sm*sp times a scalar. A zero product has
/// scale 0.
struct ReducedProduct {
    Complex scale;
    OpProduct product;
};

ReducedProduct canonicalize(const OpProduct& product);

/// The 2x2 matrix (basis g, e) of the factors of `product` acting on `qubit`.
Matrix qubit_block(const OpProduct& product, std::size_t qubit);

Operator materialize(const SpaceDescriptor& space, const OpProduct& product);

struct SpaceNames {
    std::vector<std::string> modes;
    std::vector<std::string> qubits;

    /// m0, m1, ... and q0, q1, ...
    static SpaceNames defaults(const SpaceDescriptor& space);

    friend bool operator==(const SpaceNames&, const SpaceNames&) = default;
};

/// Text form in .hspec syntax, e.g. "adag(a)*sm(q1)". Identity renders as "1".
std::string to_string(const OpProduct& product, const SpaceNames& names);

struct Term {
    Operator op;
    std::optional<OpProduct> product;
    Complex amplitude;
    double frequency;
    std::string label;
};

class TermList {
public:
    explicit TermList(SpaceDescriptor space, std::optional<SpaceNames> names = std::nullopt);

    const SpaceDescriptor& space() const { return space_; }
    const SpaceNames& names() const { return names_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add(const OpProduct& product, Complex amplitude, double frequency);
    void add(Operator op, Complex amplitude, double frequency, std::string label);
    void add(Term term);
    /// Adds the term and its Hermitian-conjugate partner at -frequency.
    void add_with_conjugate(const OpProduct& product, Complex amplitude, double frequency);

    bool all_symbolic() const;
    bool is_static() const;
    double max_abs_frequency() const;

    /// H(t)
    Operator at(double t) const;
    /// Sum of amplitude * op over all terms, ignoring frequencies.
    Operator summed() const;

    /// max over frequency groups nu of ||S_nu - S_{-nu}^dagger||_F, relative to
    /// the largest term norm, with S_nu the summed coefficient of e^{i nu t}.
    double hermiticity_defect() const;
    bool is_hermitian_paired(double tol = 1e-12) const;
    /// Label of a term in the first frequency group that breaks pairing.
    std::optional<std::string> first_unpaired_label(double tol = 1e-12) const;

private:
    struct Group {
        double frequency;
        std::vector<std::size_t> members;
    };
    std::vector<Group> frequency_groups() const;
    /// (relative defect, first member) per frequency group.
    std::vector<std::pair<double, std::size_t>> pairing_defects() const;

    SpaceDescriptor space_;
    SpaceNames names_;
    std::vector<Term> terms_;
};

/// Merges terms with identical canonical product and frequency, sorts by
/// product then frequency, and drops terms whose merged amplitude is below
/// `relative_cutoff` times the largest.
/// Requires symbolic terms.
TermList simplify(const TermList& terms, double relative_cutoff = 1e-13);

}  // namespace ccsim
