#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dirac_liouville/errors.hpp"
#include "dirac_liouville/polynomial.hpp"

namespace dirac_liouville {

struct ParseOptions {
    unsigned long exponent_cap = 64;
};

/// Prefactor * exp(exponent), the re-parseable solution text form.
struct ParsedSolution {
    Polynomial prefactor;
    Polynomial exponent;
};

namespace detail {

enum class TokenKind { End, UInt, Imag, Var, Word, Plus, Minus, Star, Slash, Caret, LParen, RParen };

struct Token {
    TokenKind kind;
    SourcePosition pos;
    BigInt value;      // UInt only
    std::string text;  // Word only
};

inline std::vector<Token> tokenize(std::string_view input) {
    std::vector<Token> tokens;
    SourcePosition pos;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (input[pos.offset + k] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
        }
        pos.offset += n;
    };
    while (pos.offset < input.size()) {
        char c = input[pos.offset];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            advance(1);
            continue;
        }
        SourcePosition start = pos;
        if (c >= '0' && c <= '9') {
            std::size_t end = pos.offset;
            while (end < input.size() && input[end] >= '0' && input[end] <= '9') ++end;
            Token t{TokenKind::UInt, start, BigInt(std::string(input.substr(pos.offset, end - pos.offset)), 10), {}};
            advance(end - pos.offset);
            tokens.push_back(std::move(t));
            continue;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            std::size_t end = pos.offset;
            while (end < input.size() &&
                   ((input[end] >= 'a' && input[end] <= 'z') ||
                    (input[end] >= 'A' && input[end] <= 'Z') ||
                    (input[end] >= '0' && input[end] <= '9') || input[end] == '_'))
                ++end;
            std::string word(input.substr(pos.offset, end - pos.offset));
            advance(end - pos.offset);
            if (word == "i")
                tokens.push_back({TokenKind::Imag, start, {}, {}});
            else if (word == "x")
                tokens.push_back({TokenKind::Var, start, {}, {}});
            else
                tokens.push_back({TokenKind::Word, start, {}, std::move(word)});
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::Plus; break;
            case '-': kind = TokenKind::Minus; break;
            case '*': kind = TokenKind::Star; break;
            case '/': kind = TokenKind::Slash; break;
            case '^': kind = TokenKind::Caret; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            default:
                throw ParseError(ParseErrorKind::Syntax, start,
                                 std::string("unexpected character '") + c + "'");
        }
        advance(1);
        tokens.push_back({kind, start, {}, {}});
    }
    tokens.push_back({TokenKind::End, pos, {}, {}});
    return tokens;
}

class ExpressionParser {
public:
    ExpressionParser(std::vector<Token> tokens, const ParseOptions& options)
        : tokens_(std::move(tokens)), options_(options) {}

    Polynomial parse_full() {
        Polynomial p = parse_expr();
        expect_end();
        return p;
    }

    Polynomial parse_expr() {
        Polynomial acc = parse_term();
        while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            bool minus = next().kind == TokenKind::Minus;
            Polynomial rhs = parse_term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    void expect_end() {
        if (peek().kind != TokenKind::End)
            throw ParseError(ParseErrorKind::Syntax, peek().pos,
                             "unexpected token (implicit multiplication is not allowed)");
    }

    const std::optional<SourcePosition>& first_var() const noexcept { return first_var_; }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t at = index_ + ahead;
        return at < tokens_.size() ? tokens_[at] : tokens_.back();
    }
    const Token& next() { return tokens_[index_ < tokens_.size() - 1 ? index_++ : index_]; }

private:
    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        while (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash) {
            bool divide = next().kind == TokenKind::Slash;
            SourcePosition divisor_pos = peek().pos;
            Polynomial rhs = parse_factor();
            if (divide) {
                if (!rhs.is_constant())
                    throw ParseError(ParseErrorKind::NonPolynomial, divisor_pos,
                                     "x occurs in a divisor");
                GaussianRational c = rhs.coeff(0);
                if (c.is_zero())
                    throw ParseError(ParseErrorKind::Syntax, divisor_pos, "division by zero");
                acc = acc * c.reciprocal();
            } else {
                acc = checked_product(acc, rhs, divisor_pos);
            }
        }
        return acc;
    }

    Polynomial parse_factor() {
        DepthGuard guard(*this);
        if (peek().kind == TokenKind::Minus) {
            next();
            return -parse_factor();
        }
        Polynomial atom = parse_atom();
        if (peek().kind == TokenKind::Caret) {
            next();
            if (peek().kind == TokenKind::Minus)
                throw ParseError(ParseErrorKind::NonPolynomial, peek().pos,
                                 "negative exponent");
            if (peek().kind != TokenKind::UInt)
                throw ParseError(ParseErrorKind::Syntax, peek().pos,
                                 "expected a nonnegative integer exponent");
            const Token& e = next();
            if (e.value > BigInt(options_.exponent_cap))
                throw ParseError(ParseErrorKind::ExponentCap, e.pos,
                                 "exponent exceeds the cap of " +
                                     std::to_string(options_.exponent_cap));
            unsigned long exponent = e.value.get_ui();
            if (auto d = atom.degree(); d && *d * exponent > kDegreeLimit)
                throw ParseError(ParseErrorKind::Syntax, e.pos, "polynomial degree limit exceeded");
            return power(atom, exponent);
        }
        return atom;
    }

    Polynomial parse_atom() {
        const Token& t = next();
        switch (t.kind) {
            case TokenKind::UInt:
                return Polynomial(GaussianRational(Rational(t.value)));
            case TokenKind::Imag:
                return Polynomial(GaussianRational::i());
            case TokenKind::Var:
                if (!first_var_) first_var_ = t.pos;
                return Polynomial::variable();
            case TokenKind::LParen: {
                Polynomial inner = parse_expr();
                if (peek().kind != TokenKind::RParen)
                    throw ParseError(ParseErrorKind::Syntax, peek().pos, "expected ')'");
                next();
                return inner;
            }
            case TokenKind::Word:
                throw ParseError(ParseErrorKind::Syntax, t.pos,
                                 "unknown identifier '" + t.text + "'");
            default:
                throw ParseError(ParseErrorKind::Syntax, t.pos, "expected a value");
        }
    }

    struct DepthGuard {
        explicit DepthGuard(ExpressionParser& parser) : parser_(parser) {
            if (++parser_.depth_ > kDepthLimit)
                throw ParseError(ParseErrorKind::Syntax, parser_.peek().pos,
                                 "expression nesting too deep");
        }
        ~DepthGuard() { --parser_.depth_; }
        ExpressionParser& parser_;
    };

    Polynomial checked_product(const Polynomial& a, const Polynomial& b, SourcePosition pos) {
        auto da = a.degree();
        auto db = b.degree();
        if (da && db && *da + *db > kDegreeLimit)
            throw ParseError(ParseErrorKind::Syntax, pos, "polynomial degree limit exceeded");
        return a * b;
    }

    static constexpr std::size_t kDegreeLimit = 1u << 20;
    static constexpr std::size_t kDepthLimit = 256;

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
    ParseOptions options_;
    std::optional<SourcePosition> first_var_;
    std::size_t depth_ = 0;
};

}  // namespace detail

/// Parse an expression over the grammar
///   expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
///   factor := '-' factor | atom ('^' uint)? ; atom := uint | 'i' | 'x' | '(' expr ')'
/// folding constants as it goes; division is only allowed by nonzero
/// constant subexpressions.
inline Polynomial parse_polynomial(std::string_view text, const ParseOptions& options = {}) {
    detail::ExpressionParser parser(detail::tokenize(text), options);
    return parser.parse_full();
}

/// Constant subset of the grammar, e.g. "3/2", "-2+i", "2*i".
inline GaussianRational parse_scalar(std::string_view text, const ParseOptions& options = {}) {
    detail::ExpressionParser parser(detail::tokenize(text), options);
    Polynomial p = parser.parse_full();
    if (!p.is_constant())
        throw ParseError(ParseErrorKind::NonConstant,
                         parser.first_var() ? *parser.first_var() : SourcePosition{},
                         "expected a constant expression");
    return p.coeff(0);
}

/// Parse "poly * exp(poly)", "exp(poly)" or a bare polynomial. The
/// exponential factor, when present, must be the last factor of the product.
inline ParsedSolution parse_solution(std::string_view text, const ParseOptions& options = {}) {
    using detail::Token;
    using detail::TokenKind;
    std::vector<Token> tokens = detail::tokenize(text);
    std::size_t exp_index = tokens.size();
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (tokens[k].kind == TokenKind::Word && tokens[k].text == "exp") {
            if (exp_index != tokens.size())
                throw ParseError(ParseErrorKind::Syntax, tokens[k].pos,
                                 "at most one exponential factor is allowed");
            exp_index = k;
        }
    }
    ParsedSolution sol;
    if (exp_index == tokens.size()) {
        detail::ExpressionParser parser(std::move(tokens), options);
        sol.prefactor = parser.parse_full();
        return sol;
    }
    if (exp_index == 0) {
        sol.prefactor = Polynomial(1);
    } else {
        if (tokens[exp_index - 1].kind != TokenKind::Star)
            throw ParseError(ParseErrorKind::Syntax, tokens[exp_index].pos,
                             "the exponential factor must be multiplied with '*'");
        std::vector<Token> head(tokens.begin(), tokens.begin() + (exp_index - 1));
        head.push_back({TokenKind::End, tokens[exp_index - 1].pos, {}, {}});
        detail::ExpressionParser parser(std::move(head), options);
        sol.prefactor = parser.parse_full();
    }
    std::vector<Token> tail(tokens.begin() + exp_index + 1, tokens.end());
    detail::ExpressionParser parser(std::move(tail), options);
    if (parser.peek().kind != TokenKind::LParen)
        throw ParseError(ParseErrorKind::Syntax, parser.peek().pos, "expected '(' after exp");
    parser.next();
    sol.exponent = parser.parse_expr();
    if (parser.peek().kind != TokenKind::RParen)
        throw ParseError(ParseErrorKind::Syntax, parser.peek().pos, "expected ')'");
    parser.next();
    parser.expect_end();
    return sol;
}

}  // namespace dirac_liouville
