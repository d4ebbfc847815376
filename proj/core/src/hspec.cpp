#include "ccsim/hspec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace ccsim::hspec {

std::string_view kind_name(Diagnostic::Kind kind)
{
    switch (kind) {
    case Diagnostic::Kind::Lexical:
        return "lexical error";
    case Diagnostic::Kind::Syntax:
        return "syntax error";
    case Diagnostic::Kind::Unbound:
        return "unbound identifier";
    case Diagnostic::Kind::Duplicate:
        return "duplicate declaration";
    case Diagnostic::Kind::Semantic:
        return "semantic error";
    case Diagnostic::Kind::Lowering:
        return "lowering error";
    }
    return "error";
}

std::string Diagnostic::to_string() const
{
    std::ostringstream os;
    if (span.line > 0)
        os << span.line << ':' << span.column << ": ";
    os << kind_name(kind) << ": " << message;
    if (!expected.empty()) {
        os << "; expected ";
        if (expected.size() > 1)
            os << "one of ";
        for (std::size_t k = 0; k < expected.size(); ++k)
            os << (k ? ", " : "") << expected[k];
    }
    return os.str();
}

ParseError::ParseError(Diagnostic diagnostic)
    : std::runtime_error(diagnostic.to_string())
    , diagnostic_(std::move(diagnostic))
{
}

ExprPtr Expr::number(double v)
{
    return std::make_shared<const Expr>(Expr{Kind::Number, v, {}, nullptr, nullptr, {}});
}

ExprPtr Expr::ident(std::string name)
{
    return std::make_shared<const Expr>(Expr{Kind::Ident, 0.0, std::move(name), nullptr, nullptr, {}});
}

ExprPtr Expr::unary(Kind kind, ExprPtr operand)
{
    return std::make_shared<const Expr>(Expr{kind, 0.0, {}, std::move(operand), nullptr, {}});
}

ExprPtr Expr::binary(Kind kind, ExprPtr lhs, ExprPtr rhs)
{
    return std::make_shared<const Expr>(Expr{kind, 0.0, {}, std::move(lhs), std::move(rhs), {}});
}

bool equal(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case Expr::Kind::Number:
        return a.value == b.value;
    case Expr::Kind::Imag:
    case Expr::Kind::Pi:
        return true;
    case Expr::Kind::Ident:
        return a.name == b.name;
    case Expr::Kind::Plus:
    case Expr::Kind::Minus:
        return equal(*a.lhs, *b.lhs);
    default:
        return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

namespace {

int precedence(Expr::Kind kind)
{
    switch (kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
        return 2;
    case Expr::Kind::Plus:
    case Expr::Kind::Minus:
        return 3;
    default:
        return 4;
    }
}

void write(std::string& out, const Expr& e);

void write_child(std::string& out, const Expr& child, bool parenthesize)
{
    if (parenthesize)
        out += '(';
    write(out, child);
    if (parenthesize)
        out += ')';
}

void write(std::string& out, const Expr& e)
{
    switch (e.kind) {
    case Expr::Kind::Number:
        if (std::signbit(e.value) && e.value != 0.0) {
            out += '-';
            out += format_number(-e.value);
        } else {
            out += format_number(e.value == 0.0 ? 0.0 : e.value);
        }
        return;
    case Expr::Kind::Imag:
        out += 'i';
        return;
    case Expr::Kind::Pi:
        out += "pi";
        return;
    case Expr::Kind::Ident:
        out += e.name;
        return;
    case Expr::Kind::Plus:
    case Expr::Kind::Minus:
        out += e.kind == Expr::Kind::Plus ? '+' : '-';
        write_child(out, *e.lhs, precedence(e.lhs->kind) < 3);
        return;
    default:
        break;
    }
    const int p = precedence(e.kind);
    write_child(out, *e.lhs, precedence(e.lhs->kind) < p);
    switch (e.kind) {
    case Expr::Kind::Add:
        out += " + ";
        break;
    case Expr::Kind::Sub:
        out += " - ";
        break;
    case Expr::Kind::Mul:
        out += '*';
        break;
    default:
        out += '/';
        break;
    }
    write_child(out, *e.rhs, precedence(e.rhs->kind) <= p);
}

std::string_view factor_name(FactorKind kind)
{
    switch (kind) {
    case FactorKind::Annihilate:
        return "a";
    case FactorKind::Create:
        return "adag";
    case FactorKind::SigmaPlus:
        return "sp";
    case FactorKind::SigmaMinus:
        return "sm";
    case FactorKind::SigmaZ:
        return "sz";
    }
    return "?";
}

std::string product_text(const TermDecl& term)
{
    std::string out;
    for (std::size_t k = 0; k < term.factors.size(); ++k) {
        if (k)
            out += '*';
        out += factor_name(term.factors[k].kind);
        out += '(';
        out += term.factors[k].target;
        out += ')';
    }
    return out;
}

std::string term_text(const TermDecl& term)
{
    std::string out = "term ";
    const auto k = term.coefficient->kind;
    write_child(out, *term.coefficient, k == Expr::Kind::Add || k == Expr::Kind::Sub);
    out += " * ";
    out += product_text(term);
    if (term.frequency) {
        out += " @ ";
        write(out, *term.frequency);
    }
    if (term.add_conjugate)
        out += " +h.c.";
    out += ';';
    return out;
}

// Term order: operator product first, full text to break ties.
std::vector<std::size_t> canonical_term_order(const std::vector<TermDecl>& terms)
{
    std::vector<std::pair<std::string, std::string>> keys;
    keys.reserve(terms.size());
    for (const auto& t : terms)
        keys.emplace_back(product_text(t), term_text(t));
    std::vector<std::size_t> order(terms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    return order;
}

bool equal_optional(const ExprPtr& a, const ExprPtr& b)
{
    if (!a || !b)
        return !a && !b;
    return equal(*a, *b);
}

bool equal_terms(const TermDecl& a, const TermDecl& b)
{
    if (a.add_conjugate != b.add_conjugate || a.factors.size() != b.factors.size())
        return false;
    for (std::size_t k = 0; k < a.factors.size(); ++k)
        if (a.factors[k].kind != b.factors[k].kind || a.factors[k].target != b.factors[k].target)
            return false;
    return equal(*a.coefficient, *b.coefficient) && equal_optional(a.frequency, b.frequency);
}

[[noreturn]] void lowering_error(SourceSpan span, std::string message)
{
    throw ParseError({Diagnostic::Kind::Lowering, span, std::move(message), {}});
}

Complex evaluate(const Expr& e, const std::map<std::string, Complex>& env)
{
    switch (e.kind) {
    case Expr::Kind::Number:
        return e.value;
    case Expr::Kind::Imag:
        return kI;
    case Expr::Kind::Pi:
        return kPi;
    case Expr::Kind::Ident: {
        const auto it = env.find(e.name);
        if (it == env.end())
            lowering_error(e.span, "unbound identifier '" + e.name + "'");
        return it->second;
    }
    case Expr::Kind::Plus:
        return evaluate(*e.lhs, env);
    case Expr::Kind::Minus:
        return -evaluate(*e.lhs, env);
    case Expr::Kind::Add:
        return evaluate(*e.lhs, env) + evaluate(*e.rhs, env);
    case Expr::Kind::Sub:
        return evaluate(*e.lhs, env) - evaluate(*e.rhs, env);
    case Expr::Kind::Mul:
        return evaluate(*e.lhs, env) * evaluate(*e.rhs, env);
    case Expr::Kind::Div: {
        const Complex den = evaluate(*e.rhs, env);
        if (den == Complex{})
            lowering_error(e.span, "division by zero");
        return evaluate(*e.lhs, env) / den;
    }
    }
    lowering_error(e.span, "malformed expression");
}

Complex checked(const Expr& e, const std::map<std::string, Complex>& env, std::string_view what)
{
    const Complex v = evaluate(e, env);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        lowering_error(e.span, std::string(what) + " is not finite");
    return v;
}

bool valid_identifier(const std::string& name)
{
    static const char* const kReserved[] = {"mode", "qubit", "param", "term", "i", "pi"};
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
        return false;
    for (char c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return std::none_of(std::begin(kReserved), std::end(kReserved), [&](const char* r) { return name == r; });
}

ExprPtr signed_number(double v)
{
    return v < 0.0 ? Expr::unary(Expr::Kind::Minus, Expr::number(-v)) : Expr::number(v);
}

ExprPtr imag_unit()
{
    return std::make_shared<const Expr>(Expr{Expr::Kind::Imag, 0.0, {}, nullptr, nullptr, {}});
}

ExprPtr complex_literal(Complex c)
{
    const double re = c.real();
    const double im = c.imag();
    if (im == 0.0)
        return signed_number(re);
    const double mag = std::abs(im);
    ExprPtr imag = mag == 1.0 ? imag_unit() : Expr::binary(Expr::Kind::Mul, Expr::number(mag), imag_unit());
    if (re == 0.0)
        return im < 0.0 ? Expr::unary(Expr::Kind::Minus, imag) : imag;
    return Expr::binary(im < 0.0 ? Expr::Kind::Sub : Expr::Kind::Add, signed_number(re), imag);
}

}  // namespace

std::string format_number(double v)
{
    if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("format_number needs a finite non-negative value");
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

bool operator==(const HamiltonianSpec& a, const HamiltonianSpec& b)
{
    if (a.modes.size() != b.modes.size() || a.qubits.size() != b.qubits.size() ||
        a.params.size() != b.params.size() || a.terms.size() != b.terms.size())
        return false;
    for (std::size_t k = 0; k < a.modes.size(); ++k)
        if (a.modes[k].name != b.modes[k].name || a.modes[k].cutoff != b.modes[k].cutoff)
            return false;
    for (std::size_t k = 0; k < a.qubits.size(); ++k)
        if (a.qubits[k].name != b.qubits[k].name)
            return false;
    for (std::size_t k = 0; k < a.params.size(); ++k)
        if (a.params[k].name != b.params[k].name || !equal(*a.params[k].value, *b.params[k].value))
            return false;
    const auto oa = canonical_term_order(a.terms);
    const auto ob = canonical_term_order(b.terms);
    for (std::size_t k = 0; k < oa.size(); ++k)
        if (!equal_terms(a.terms[oa[k]], b.terms[ob[k]]))
            return false;
    return true;
}

std::string serialize(const Expr& expr)
{
    std::string out;
    write(out, expr);
    return out;
}

std::string serialize(const HamiltonianSpec& spec)
{
    std::string out;
    for (const auto& m : spec.modes)
        out += "mode " + m.name + "(" + std::to_string(m.cutoff) + ");\n";
    for (const auto& q : spec.qubits)
        out += "qubit " + q.name + ";\n";
    for (const auto& p : spec.params)
        out += "param " + p.name + " = " + serialize(*p.value) + ";\n";
    for (auto idx : canonical_term_order(spec.terms))
        out += term_text(spec.terms[idx]) + "\n";
    return out;
}

TermList lower(const HamiltonianSpec& spec, const LowerOptions& options)
{
    std::vector<int> cutoffs;
    SpaceNames names;
    std::map<std::string, std::size_t> mode_index;
    std::map<std::string, std::size_t> qubit_index;
    for (const auto& m : spec.modes) {
        if (m.cutoff < 1)
            throw ParseError({Diagnostic::Kind::Semantic, m.span, "mode '" + m.name + "' needs a cutoff of at least 1", {}});
        mode_index[m.name] = cutoffs.size();
        cutoffs.push_back(m.cutoff);
        names.modes.push_back(m.name);
    }
    for (const auto& q : spec.qubits) {
        qubit_index[q.name] = names.qubits.size();
        names.qubits.push_back(q.name);
    }

    SpaceDescriptor space;
    try {
        space = make_space(cutoffs, static_cast<int>(spec.qubits.size()));
    } catch (const std::exception& e) {
        lowering_error({}, e.what());
    }

    std::map<std::string, Complex> env;
    for (const auto& p : spec.params)
        env[p.name] = checked(*p.value, env, "parameter '" + p.name + "'");

    TermList terms(space, names);
    std::vector<std::size_t> origin;  // declaration behind each lowered term
    for (std::size_t k = 0; k < spec.terms.size(); ++k) {
        const auto& decl = spec.terms[k];
        std::vector<Factor> factors;
        for (const auto& f : decl.factors) {
            const auto& table = acts_on_mode(f.kind) ? mode_index : qubit_index;
            const auto it = table.find(f.target);
            if (it == table.end())
                lowering_error(f.span, "'" + f.target + "' is not a declared " +
                                           (acts_on_mode(f.kind) ? "mode" : "qubit"));
            factors.push_back({f.kind, it->second});
        }
        const Complex amplitude = checked(*decl.coefficient, env, "coefficient");
        double frequency = 0.0;
        if (decl.frequency) {
            const Complex nu = checked(*decl.frequency, env, "frequency");
            if (std::abs(nu.imag()) > 1e-12 * std::abs(nu))
                lowering_error(decl.frequency->span, "frequency must be real");
            frequency = nu.real();
        }
        const OpProduct product(std::move(factors));
        if (decl.add_conjugate) {
            terms.add_with_conjugate(product, amplitude, frequency);
            origin.insert(origin.end(), 2, k);
        } else {
            terms.add(product, amplitude, frequency);
            origin.push_back(k);
        }
    }

    if (options.require_pairing) {
        if (const auto label = terms.first_unpaired_label()) {
            const auto& list = terms.terms();
            std::size_t idx = 0;
            while (idx < list.size() && list[idx].label != *label)
                ++idx;
            const auto& decl = spec.terms[origin[std::min(idx, origin.size() - 1)]];
            lowering_error(decl.span, "term '" + *label + "' has no Hermitian-conjugate partner; add +h.c. or the "
                                                           "conjugate term");
        }
    }
    return terms;
}

HamiltonianSpec from_terms(const TermList& terms)
{
    if (!terms.all_symbolic())
        throw std::invalid_argument("from_terms needs symbolic terms");
    const auto& space = terms.space();
    const auto& names = terms.names();
    HamiltonianSpec spec;
    for (std::size_t m = 0; m < space.mode_count(); ++m) {
        if (!valid_identifier(names.modes[m]))
            throw std::invalid_argument("mode name '" + names.modes[m] + "' is not a valid identifier");
        spec.modes.push_back({names.modes[m], space.mode_cutoffs()[m], {}});
    }
    for (std::size_t q = 0; q < space.qubit_count(); ++q) {
        if (!valid_identifier(names.qubits[q]))
            throw std::invalid_argument("qubit name '" + names.qubits[q] + "' is not a valid identifier");
        spec.qubits.push_back({names.qubits[q], {}});
    }
    for (const auto& term : terms.terms()) {
        if (!std::isfinite(term.amplitude.real()) || !std::isfinite(term.amplitude.imag()) ||
            !std::isfinite(term.frequency))
            throw std::invalid_argument("from_terms: non-finite term");
        TermDecl decl;
        decl.coefficient = complex_literal(term.amplitude);
        if (term.frequency != 0.0)
            decl.frequency = signed_number(term.frequency);
        for (const auto& f : term.product->factors())
            decl.factors.push_back({f.kind, acts_on_mode(f.kind) ? names.modes[f.target] : names.qubits[f.target], {}});
        if (decl.factors.empty()) {
            // No identity in the grammar; sz*sz is one.
            if (space.qubit_count() == 0)
                throw std::invalid_argument("from_terms: identity term needs a qubit to be written");
            decl.factors.push_back({FactorKind::SigmaZ, names.qubits[0], {}});
            decl.factors.push_back({FactorKind::SigmaZ, names.qubits[0], {}});
        }
        spec.terms.push_back(std::move(decl));
    }
    return spec;
}

}  // namespace ccsim::hspec
