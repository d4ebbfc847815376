#include "hspec_lexer.hpp"

#include <cctype>
#include <cstdio>

namespace ccsim::hspec::detail {

namespace {

bool is_ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c)
{
    return c >= '0' && c <= '9';
}

Tok keyword_or_ident(std::string_view word)
{
    if (word == "mode")
        return Tok::KwMode;
    if (word == "qubit")
        return Tok::KwQubit;
    if (word == "param")
        return Tok::KwParam;
    if (word == "term")
        return Tok::KwTerm;
    if (word == "i")
        return Tok::KwI;
    if (word == "pi")
        return Tok::KwPi;
    return Tok::Ident;
}

class Lexer {
public:
    explicit Lexer(std::string_view text)
        : text_(text)
    {
    }

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, {}, {line_, column_, 0}});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    void advance(std::size_t n = 1)
    {
        for (std::size_t k = 0; k < n && pos_ < text_.size(); ++k) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    void skip_space_and_comments()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else {
                return;
            }
        }
    }

    [[noreturn]] void fail(const std::string& message, int length = 1) const
    {
        throw ParseError({Diagnostic::Kind::Lexical, {line_, column_, length}, message, {}});
    }

    Token make(Tok kind, std::size_t length)
    {
        Token t{kind, text_.substr(pos_, length), {line_, column_, static_cast<int>(length)}};
        advance(length);
        return t;
    }

    Token number()
    {
        std::size_t end = pos_;
        bool real = false;
        while (end < text_.size() && is_digit(text_[end]))
            ++end;
        if (end < text_.size() && text_[end] == '.') {
            real = true;
            ++end;
            while (end < text_.size() && is_digit(text_[end]))
                ++end;
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t exp = end + 1;
            if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-'))
                ++exp;
            if (exp >= text_.size() || !is_digit(text_[exp])) {
                column_ += static_cast<int>(end - pos_);
                pos_ = end;
                fail("malformed exponent in number");
            }
            while (exp < text_.size() && is_digit(text_[exp]))
                ++exp;
            end = exp;
            real = true;
        }
        if (end < text_.size() && is_ident_start(text_[end])) {
            column_ += static_cast<int>(end - pos_);
            pos_ = end;
            fail("identifier character directly after number");
        }
        return make(real ? Tok::Real : Tok::Int, end - pos_);
    }

    Token next()
    {
        const char c = text_[pos_];
        if (static_cast<unsigned char>(c) >= 0x80)
            fail("non-ASCII byte outside a comment");
        if (is_ident_start(c)) {
            std::size_t end = pos_;
            while (end < text_.size() && is_ident_char(text_[end]))
                ++end;
            return make(keyword_or_ident(text_.substr(pos_, end - pos_)), end - pos_);
        }
        if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
            if (c == '.')
                fail("number must start with a digit");
            return number();
        }
        switch (c) {
        case '(':
            return make(Tok::LParen, 1);
        case ')':
            return make(Tok::RParen, 1);
        case ';':
            return make(Tok::Semicolon, 1);
        case '=':
            return make(Tok::Equals, 1);
        case '*':
            return make(Tok::Star, 1);
        case '/':
            return make(Tok::Slash, 1);
        case '-':
            return make(Tok::Minus, 1);
        case '@':
            return make(Tok::At, 1);
        case '+':
            if (text_.substr(pos_, 5) == "+h.c." &&
                (pos_ + 5 >= text_.size() || !is_ident_char(text_[pos_ + 5])))
                return make(Tok::HermitianConjugate, 5);
            return make(Tok::Plus, 1);
        default:
            break;
        }
        char buf[48];
        if (std::isprint(static_cast<unsigned char>(c)))
            std::snprintf(buf, sizeof buf, "unexpected character '%c'", c);
        else
            std::snprintf(buf, sizeof buf, "unexpected byte 0x%02x", static_cast<unsigned>(static_cast<unsigned char>(c)));
        fail(buf);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

std::string_view token_name(Tok tok)
{
    switch (tok) {
    case Tok::Ident:
        return "identifier";
    case Tok::Int:
        return "integer";
    case Tok::Real:
        return "number";
    case Tok::KwMode:
        return "'mode'";
    case Tok::KwQubit:
        return "'qubit'";
    case Tok::KwParam:
        return "'param'";
    case Tok::KwTerm:
        return "'term'";
    case Tok::KwI:
        return "'i'";
    case Tok::KwPi:
        return "'pi'";
    case Tok::LParen:
        return "'('";
    case Tok::RParen:
        return "')'";
    case Tok::Semicolon:
        return "';'";
    case Tok::Equals:
        return "'='";
    case Tok::Star:
        return "'*'";
    case Tok::Slash:
        return "'/'";
    case Tok::Plus:
        return "'+'";
    case Tok::Minus:
        return "'-'";
    case Tok::At:
        return "'@'";
    case Tok::HermitianConjugate:
        return "'+h.c.'";
    case Tok::End:
        return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view text)
{
    return Lexer(text).run();
}

}  // namespace ccsim::hspec::detail
