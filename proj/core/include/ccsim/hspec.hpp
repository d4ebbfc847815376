#pragma once

// .hspec: a small text format for oscillating term lists.
//
//   mode a(6);
//   qubit q;
//   param eta = 0.1;
//   term -i*eta * a(a)*sp(q) @ -10 +h.c.;
//
// A term is coefficient * operator product, an optional frequency after '@'
// (0 when omitted) and an optional "+h.c." that adds the conjugate term at
// the negated frequency.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccsim/terms.hpp"

namespace ccsim::hspec {

/// 1-based line and column of the first character; length in bytes.
struct SourceSpan {
    int line = 0;
    int column = 0;
    int length = 0;
};

struct Diagnostic {
    enum class Kind { Lexical, Syntax, Unbound, Duplicate, Semantic, Lowering };

    Kind kind;
    SourceSpan span;
    std::string message;
    std::vector<std::string> expected;  ///< sorted token names, syntax errors only

    /// "3:11: syntax error: ..." ("lowering error: ..." without position when span.line == 0)
    std::string to_string() const;
};

std::string_view kind_name(Diagnostic::Kind kind);

class ParseError : public std::runtime_error {
public:
    explicit ParseError(Diagnostic diagnostic);
    const Diagnostic& diagnostic() const { return diagnostic_; }

private:
    Diagnostic diagnostic_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Imag, Pi, Ident, Plus, Minus, Add, Sub, Mul, Div };

    Kind kind;
    double value = 0.0;  ///< Number
    std::string name;    ///< Ident
    ExprPtr lhs;         ///< operand of Plus/Minus, left of binaries
    ExprPtr rhs;
    SourceSpan span;

    static ExprPtr number(double v);
    static ExprPtr ident(std::string name);
    static ExprPtr unary(Kind kind, ExprPtr operand);
    static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs);
};

/// Structural equality, spans ignored.
bool equal(const Expr& a, const Expr& b);

struct ModeDecl {
    std::string name;
    int cutoff;
    SourceSpan span;
};

struct QubitDecl {
    std::string name;
    SourceSpan span;
};

struct ParamDecl {
    std::string name;
    ExprPtr value;
    SourceSpan span;
};

struct FactorRef {
    FactorKind kind;
    std::string target;
    SourceSpan span;
};

struct TermDecl {
    ExprPtr coefficient;
    std::vector<FactorRef> factors;
    ExprPtr frequency;  ///< null = 0
    bool add_conjugate = false;
    SourceSpan span;
};

struct HamiltonianSpec {
    std::vector<ModeDecl> modes;
    std::vector<QubitDecl> qubits;
    std::vector<ParamDecl> params;
    std::vector<TermDecl> terms;
};

/// Declarations compared in order, terms as a multiset; spans ignored.
bool operator==(const HamiltonianSpec& a, const HamiltonianSpec& b);

/// Throws ParseError.
HamiltonianSpec parse(std::string_view text);

/// Canonical text: modes, qubits, params in declaration order, then terms
/// sorted by operator product. parse(serialize(x)) == x.
std::string serialize(const HamiltonianSpec& spec);
std::string serialize(const Expr& expr);

struct LowerOptions {
    /// Reject term lists whose terms lack a conjugate partner.
    bool require_pairing = true;
};

/// Throws ParseError with kind Lowering (or Semantic for bad cutoffs).
TermList lower(const HamiltonianSpec& spec, const LowerOptions& options = {});

/// Spec for a symbolic term list, with numeric coefficients. Names come from
/// the list's SpaceNames.
HamiltonianSpec from_terms(const TermList& terms);

/// Shortest text that reads back as exactly `v` (finite, >= 0).
std::string format_number(double v);

}  // namespace ccsim::hspec
