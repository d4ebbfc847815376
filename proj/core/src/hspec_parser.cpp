#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>

#include "ccsim/hspec.hpp"
#include "hspec_lexer.hpp"

namespace ccsim::hspec {

namespace {

using detail::Tok;
using detail::Token;

constexpr int kMaxDepth = 200;

bool factor_kind(std::string_view name, FactorKind& kind)
{
    if (name == "a")
        kind = FactorKind::Annihilate;
    else if (name == "adag")
        kind = FactorKind::Create;
    else if (name == "sp")
        kind = FactorKind::SigmaPlus;
    else if (name == "sm")
        kind = FactorKind::SigmaMinus;
    else if (name == "sz")
        kind = FactorKind::SigmaZ;
    else
        return false;
    return true;
}

enum class NameKind { Mode, Qubit, Param };

std::string_view name_kind_text(NameKind k)
{
    switch (k) {
    case NameKind::Mode:
        return "mode";
    case NameKind::Qubit:
        return "qubit";
    case NameKind::Param:
        return "parameter";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens)
        : tokens_(std::move(tokens))
    {
    }

    HamiltonianSpec run()
    {
        while (peek().kind != Tok::End)
            statement();
        if (pending_)
            throw ParseError(*pending_);
        return std::move(spec_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }

    const Token& take() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    // Position reported for the current token; at end of input, the start of
    // the previous token.
    SourceSpan error_span() const
    {
        const Token& t = peek();
        if (t.kind == Tok::End && pos_ > 0)
            return tokens_[pos_ - 1].span;
        return t.span;
    }

    [[noreturn]] void unexpected(std::vector<Tok> expected, std::vector<std::string> extra = {}) const
    {
        std::set<std::string> names(extra.begin(), extra.end());
        for (auto tok : expected)
            names.insert(std::string(detail::token_name(tok)));
        const Token& t = peek();
        std::string message = t.kind == Tok::End ? "unexpected end of input"
                                                 : "unexpected " + std::string(detail::token_name(t.kind)) +
                                                       " '" + std::string(t.text) + "'";
        throw ParseError({Diagnostic::Kind::Syntax, error_span(), std::move(message), {names.begin(), names.end()}});
    }

    // Name and range errors are held back until the whole input has parsed,
    // so a syntax error anywhere wins over them; the first one is reported.
    void semantic(Diagnostic::Kind kind, SourceSpan span, std::string message)
    {
        if (!pending_)
            pending_ = Diagnostic{kind, span, std::move(message), {}};
    }

    const Token& expect(Tok kind)
    {
        if (peek().kind != kind)
            unexpected({kind});
        return take();
    }

    void declare(const Token& name, NameKind kind)
    {
        const std::string key(name.text);
        auto [it, inserted] = names_.emplace(key, std::make_pair(kind, name.span));
        if (!inserted) {
            const auto& prev = it->second.second;
            semantic(Diagnostic::Kind::Duplicate, name.span,
                     "'" + key + "' already declared as " + std::string(name_kind_text(it->second.first)) +
                         " at " + std::to_string(prev.line) + ":" + std::to_string(prev.column));
        }
    }

    void statement()
    {
        switch (peek().kind) {
        case Tok::KwMode:
            return mode_decl();
        case Tok::KwQubit:
            return qubit_decl();
        case Tok::KwParam:
            return param_decl();
        case Tok::KwTerm:
            return term_decl();
        default:
            unexpected({Tok::KwMode, Tok::KwQubit, Tok::KwParam, Tok::KwTerm, Tok::End});
        }
    }

    void mode_decl()
    {
        const SourceSpan start = take().span;
        const Token& name = expect(Tok::Ident);
        expect(Tok::LParen);
        const Token& count = expect(Tok::Int);
        int cutoff = 0;
        const auto [ptr, ec] = std::from_chars(count.text.data(), count.text.data() + count.text.size(), cutoff);
        if (ec != std::errc() || ptr != count.text.data() + count.text.size())
            semantic(Diagnostic::Kind::Semantic, count.span, "mode cutoff out of range");
        expect(Tok::RParen);
        expect(Tok::Semicolon);
        declare(name, NameKind::Mode);
        spec_.modes.push_back({std::string(name.text), cutoff, start});
    }

    void qubit_decl()
    {
        const SourceSpan start = take().span;
        const Token& name = expect(Tok::Ident);
        expect(Tok::Semicolon);
        declare(name, NameKind::Qubit);
        spec_.qubits.push_back({std::string(name.text), start});
    }

    void param_decl()
    {
        const SourceSpan start = take().span;
        const Token& name = expect(Tok::Ident);
        expect(Tok::Equals);
        ExprPtr value = expression(false);
        if (peek().kind != Tok::Semicolon)
            unexpected({Tok::Semicolon, Tok::Plus, Tok::Minus, Tok::Star, Tok::Slash});
        take();
        // Declared after its value so `param g = g;` is an unbound use.
        declare(name, NameKind::Param);
        spec_.params.push_back({std::string(name.text), std::move(value), start});
    }

    void term_decl()
    {
        TermDecl term;
        term.span = take().span;
        term.coefficient = expression(true);
        if (peek().kind != Tok::Star)
            unexpected({Tok::Star, Tok::Plus, Tok::Minus, Tok::Slash});
        take();
        term.factors.push_back(factor());
        while (peek().kind == Tok::Star) {
            take();
            term.factors.push_back(factor());
        }
        if (peek().kind == Tok::At) {
            take();
            term.frequency = expression(false);
        } else if (peek().kind != Tok::HermitianConjugate && peek().kind != Tok::Semicolon) {
            unexpected({Tok::Star, Tok::At, Tok::HermitianConjugate, Tok::Semicolon});
        }
        if (peek().kind == Tok::HermitianConjugate) {
            take();
            term.add_conjugate = true;
        }
        if (peek().kind != Tok::Semicolon) {
            if (term.frequency && !term.add_conjugate)
                unexpected({Tok::HermitianConjugate, Tok::Semicolon, Tok::Plus, Tok::Minus, Tok::Star, Tok::Slash});
            unexpected({Tok::Semicolon});
        }
        take();
        spec_.terms.push_back(std::move(term));
    }

    FactorRef factor()
    {
        static const std::vector<std::string> kFactorNames{"'a'", "'adag'", "'sm'", "'sp'", "'sz'"};
        const Token& head = peek();
        FactorKind kind{};
        if (head.kind != Tok::Ident || !factor_kind(head.text, kind))
            unexpected({}, kFactorNames);
        take();
        expect(Tok::LParen);
        const Token& target = expect(Tok::Ident);
        expect(Tok::RParen);

        const std::string key(target.text);
        const auto it = names_.find(key);
        const NameKind want = acts_on_mode(kind) ? NameKind::Mode : NameKind::Qubit;
        if (it == names_.end())
            semantic(Diagnostic::Kind::Unbound, target.span, "'" + key + "' is not declared");
        else if (it->second.first != want)
            semantic(Diagnostic::Kind::Semantic, target.span,
                     "'" + std::string(head.text) + "' needs a " + std::string(name_kind_text(want)) + ", '" + key +
                         "' is a " + std::string(name_kind_text(it->second.first)));
        return {kind, key, head.span};
    }

    // Inside a term coefficient a '*' followed by `name(` with a factor name
    // starts the operator product instead of continuing the product.
    bool starts_operator_product() const
    {
        FactorKind kind{};
        return peek().kind == Tok::Star && peek(1).kind == Tok::Ident && factor_kind(peek(1).text, kind) &&
               peek(2).kind == Tok::LParen;
    }

    ExprPtr expression(bool in_term)
    {
        ExprPtr lhs = product(in_term);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = take();
            ExprPtr rhs = product(in_term);
            auto node = Expr::binary(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, lhs, rhs);
            lhs = with_span(node, op.span);
        }
        return lhs;
    }

    ExprPtr product(bool in_term)
    {
        ExprPtr lhs = unary(in_term);
        while ((peek().kind == Tok::Star && !(in_term && starts_operator_product())) || peek().kind == Tok::Slash) {
            const Token& op = take();
            ExprPtr rhs = unary(in_term);
            lhs = with_span(Expr::binary(op.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div, lhs, rhs), op.span);
        }
        return lhs;
    }

    ExprPtr unary(bool in_term)
    {
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = take();
            DepthGuard guard(*this);
            ExprPtr operand = unary(in_term);
            return with_span(Expr::unary(op.kind == Tok::Plus ? Expr::Kind::Plus : Expr::Kind::Minus, operand), op.span);
        }
        return primary();
    }

    ExprPtr primary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Int:
        case Tok::Real: {
            take();
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size())
                semantic(Diagnostic::Kind::Semantic, t.span, "number out of range");
            return with_span(Expr::number(v), t.span);
        }
        case Tok::KwI:
        case Tok::KwPi:
            take();
            return std::make_shared<const Expr>(
                Expr{t.kind == Tok::KwI ? Expr::Kind::Imag : Expr::Kind::Pi, 0.0, {}, nullptr, nullptr, t.span});
        case Tok::Ident: {
            take();
            const std::string key(t.text);
            const auto it = names_.find(key);
            if (it == names_.end())
                semantic(Diagnostic::Kind::Unbound, t.span, "'" + key + "' is not declared");
            else if (it->second.first != NameKind::Param)
                semantic(Diagnostic::Kind::Semantic, t.span,
                         "'" + key + "' is a " + std::string(name_kind_text(it->second.first)) +
                             ", not a parameter");
            return with_span(Expr::ident(key), t.span);
        }
        case Tok::LParen: {
            take();
            DepthGuard guard(*this);
            // Parentheses reset the operator-product lookahead.
            ExprPtr inner = expression(false);
            if (peek().kind != Tok::RParen)
                unexpected({Tok::RParen, Tok::Plus, Tok::Minus, Tok::Star, Tok::Slash});
            take();
            return inner;
        }
        default:
            unexpected({Tok::Int, Tok::Real, Tok::Ident, Tok::KwI, Tok::KwPi, Tok::LParen, Tok::Plus, Tok::Minus});
        }
    }

    static ExprPtr with_span(const ExprPtr& e, SourceSpan span)
    {
        auto copy = std::make_shared<Expr>(*e);
        copy->span = span;
        return copy;
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p)
            : parser(p)
        {
            if (++parser.depth_ > kMaxDepth)
                throw ParseError({Diagnostic::Kind::Syntax, parser.error_span(), "expression nested too deeply", {}});
        }
        ~DepthGuard() { --parser.depth_; }
        DepthGuard(const DepthGuard&) = delete;
        DepthGuard& operator=(const DepthGuard&) = delete;
        Parser& parser;
    };

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int depth_ = 0;
    std::map<std::string, std::pair<NameKind, SourceSpan>> names_;
    HamiltonianSpec spec_;
    std::optional<Diagnostic> pending_;
};

}  // namespace

HamiltonianSpec parse(std::string_view text)
{
    return Parser(detail::tokenize(text)).run();
}

}  // namespace ccsim::hspec
