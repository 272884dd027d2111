#pragma once

// Small precedence-climbing parser shared by the scalar, series and
// polynomial text forms.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | '(' expr ')' | identifier [call arguments]
//
// The derived class supplies the value type and the semantic actions:
//   T number(const Rational&);
//   T add(T, T), sub(T, T), mul(T, T), div(T, T), neg(T);
//   T pow(T base, T exponent, std::size_t offset);
//   T atom(std::string_view name, std::size_t offset);  // may consume tokens

#include "hahnlog/errors.hpp"
#include "hahnlog/rational.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace hahnlog {

class Lexer {
public:
    enum class Kind { Number, Ident, Punct, End };
    struct Token {
        Kind kind{Kind::End};
        std::string text;
        std::size_t offset{0};
    };

    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const noexcept { return current_; }
    Token next() {
        Token t = current_;
        advance();
        return t;
    }
    bool at_punct(char c) const noexcept { return current_.kind == Kind::Punct && current_.text[0] == c; }
    bool accept(char c) {
        if (!at_punct(c)) return false;
        advance();
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        std::size_t len = current_.kind == Kind::End ? 0 : current_.text.size();
        throw ParseError(what + (current_.kind == Kind::End ? " but reached end of input" : " near '" + current_.text + "'"),
                         current_.offset, len);
    }
    std::string_view source() const noexcept { return text_; }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        current_ = Token{};
        current_.offset = pos_;
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        // U+2212 MINUS SIGN
        if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
            current_.kind = Kind::Punct;
            current_.text = "-";
            pos_ += 3;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ + 1 < text_.size() && text_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
            current_.kind = Kind::Number;
            current_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            current_.kind = Kind::Ident;
            current_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        current_.kind = Kind::Punct;
        current_.text = std::string(1, c);
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_{0};
    Token current_;
};

template <class Derived, class T>
class InfixParser {
public:
    explicit InfixParser(std::string_view text) : lex_(text) {}

    T parse_all() {
        T value = parse_expr();
        if (lex_.peek().kind != Lexer::Kind::End) lex_.fail("unexpected trailing input");
        return value;
    }

    T parse_expr() {
        T lhs = parse_term();
        for (;;) {
            if (lex_.accept('+'))
                lhs = self().add(std::move(lhs), parse_term());
            else if (lex_.accept('-'))
                lhs = self().sub(std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    Lexer& lexer() noexcept { return lex_; }

protected:
    T parse_term() {
        T lhs = parse_unary();
        for (;;) {
            if (lex_.accept('*'))
                lhs = self().mul(std::move(lhs), parse_unary());
            else if (lex_.accept('/'))
                lhs = self().div(std::move(lhs), parse_unary());
            else
                return lhs;
        }
    }

    T parse_unary() {
        if (lex_.accept('-')) return self().neg(parse_unary());
        if (lex_.accept('+')) return parse_unary();
        return parse_power();
    }

    T parse_power() {
        T base = parse_primary();
        if (lex_.at_punct('^')) {
            std::size_t at = lex_.peek().offset;
            lex_.next();
            return self().pow(std::move(base), parse_unary(), at);
        }
        return base;
    }

    T parse_primary() {
        const auto& tok = lex_.peek();
        switch (tok.kind) {
            case Lexer::Kind::Number: {
                Lexer::Token t = lex_.next();
                return self().number(parse_rational(t.text));
            }
            case Lexer::Kind::Ident: {
                Lexer::Token t = lex_.next();
                return self().atom(t.text, t.offset);
            }
            case Lexer::Kind::Punct:
                if (lex_.accept('(')) {
                    T inner = parse_expr();
                    lex_.expect(')');
                    return inner;
                }
                break;
            case Lexer::Kind::End:
                break;
        }
        lex_.fail("expected a number, name or '('");
    }

    Lexer lex_;

private:
    Derived& self() { return static_cast<Derived&>(*this); }
};

}  // namespace hahnlog
