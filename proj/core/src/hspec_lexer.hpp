#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ccsim/hspec.hpp"

namespace ccsim::hspec::detail {

enum class Tok {
    Ident,
    Int,
    Real,
    KwMode,
    KwQubit,
    KwParam,
    KwTerm,
    KwI,
    KwPi,
    LParen,
    RParen,
    Semicolon,
    Equals,
    Star,
    Slash,
    Plus,
    Minus,
    At,
    HermitianConjugate,
    End,
};

/// Display name used in diagnostics, e.g. "';'" or "identifier".
std::string_view token_name(Tok tok);

struct Token {
    Tok kind;
    std::string_view text;
    SourceSpan span;
};

/// Whole input at once; the last token is End. Throws ParseError on a
/// lexical error.
std::vector<Token> tokenize(std::string_view text);

}  // namespace ccsim::hspec::detail
