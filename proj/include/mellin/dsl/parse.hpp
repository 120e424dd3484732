// Recursive-descent parser for the symbol language. Standard
// precedence (^ above unary minus above *,/ above +,-), everything
// left-associative, whitespace-insensitive. Errors carry the byte
// offset and what was expected. Two static checks run at parse time:
// exponents must be constant expressions, and a division may not have
// the literal zero as its denominator.
//
// so(lambda) is input sugar for the stock slowly oscillating factor
// sin(lambda * ln(1 + ln(1 + t + 1/t))); it expands at parse time.
#pragma once

#include <cctype>
#include <cstdlib>
#include <string>

#include "mellin/dsl/ast.hpp"

namespace mellin::dsl {

struct ParseError : Error {
    size_t offset;
    ParseError(size_t off, const std::string& msg)
        : Error("parse error at offset " + std::to_string(off) + ": " + msg),
          offset(off) {}
};

namespace detail {

struct Lexer {
    enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

    const std::string& src;
    size_t pos = 0;
    Tok tok = Tok::end;
    size_t tok_off = 0;
    double num = 0.0;
    std::string ident;

    explicit Lexer(const std::string& s) : src(s) { advance(); }

    void advance() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        tok_off = pos;
        if (pos >= src.size()) {
            tok = Tok::end;
            return;
        }
        const char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos + 1 < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            char* endp = nullptr;
            num = std::strtod(src.c_str() + pos, &endp);
            if (endp == src.c_str() + pos)
                throw ParseError(pos, "malformed number");
            pos = static_cast<size_t>(endp - src.c_str());
            tok = Tok::number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            ident = src.substr(start, pos - start);
            tok = Tok::ident;
            return;
        }
        ++pos;
        switch (c) {
            case '+': tok = Tok::plus; return;
            case '-': tok = Tok::minus; return;
            case '*': tok = Tok::star; return;
            case '/': tok = Tok::slash; return;
            case '^': tok = Tok::caret; return;
            case '(': tok = Tok::lparen; return;
            case ')': tok = Tok::rparen; return;
            default:
                throw ParseError(tok_off, std::string("unexpected character '") + c + "'");
        }
    }
};

struct Parser {
    Lexer lex;
    int paren_depth = 0;
    explicit Parser(const std::string& s) : lex(s) {}

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        while (lex.tok == Lexer::Tok::plus || lex.tok == Lexer::Tok::minus) {
            const NodeKind k =
                lex.tok == Lexer::Tok::plus ? NodeKind::add : NodeKind::sub;
            lex.advance();
            lhs = make_binary(k, lhs, parse_term());
        }
        return lhs;
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        while (lex.tok == Lexer::Tok::star || lex.tok == Lexer::Tok::slash) {
            const NodeKind k =
                lex.tok == Lexer::Tok::star ? NodeKind::mul : NodeKind::divide;
            const size_t off = lex.tok_off;
            lex.advance();
            NodePtr rhs = parse_unary();
            if (k == NodeKind::divide && is_literal_value(rhs, 0.0))
                throw ParseError(off, "division by zero literal");
            lhs = make_binary(k, lhs, rhs);
        }
        return lhs;
    }

    NodePtr parse_unary() {
        if (lex.tok == Lexer::Tok::minus) {
            lex.advance();
            return make_unary(NodeKind::neg, parse_unary());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr lhs = parse_atom();
        while (lex.tok == Lexer::Tok::caret) {
            const size_t off = lex.tok_off;
            lex.advance();
            NodePtr rhs = parse_signed_atom();
            if (contains_var(rhs))
                throw ParseError(off, "exponent must be a constant expression");
            lhs = make_binary(NodeKind::pow, lhs, rhs);
        }
        return lhs;
    }

    NodePtr parse_signed_atom() {
        if (lex.tok == Lexer::Tok::minus) {
            lex.advance();
            return make_unary(NodeKind::neg, parse_signed_atom());
        }
        return parse_atom();
    }

    NodePtr parse_atom() {
        switch (lex.tok) {
            case Lexer::Tok::number: {
                NodePtr n = make_lit(lex.num);
                lex.advance();
                return n;
            }
            case Lexer::Tok::lparen: {
                const size_t off = lex.tok_off;
                lex.advance();
                ++paren_depth;
                NodePtr n = parse_expr();
                if (lex.tok != Lexer::Tok::rparen)
                    throw ParseError(off, "unbalanced parenthesis");
                --paren_depth;
                lex.advance();
                return n;
            }
            case Lexer::Tok::ident:
                return parse_ident();
            case Lexer::Tok::end:
                throw ParseError(lex.tok_off,
                                 paren_depth > 0
                                     ? "unbalanced parenthesis"
                                     : "unexpected end of input; expected an operand");
            default:
                throw ParseError(lex.tok_off, "expected a number, name, or '('");
        }
    }

    NodePtr parse_ident() {
        const std::string name = lex.ident;
        const size_t off = lex.tok_off;
        lex.advance();
        if (name == "t") return make_leaf(NodeKind::var_t);
        if (name == "x") return make_leaf(NodeKind::var_x);
        if (name == "pi") return make_leaf(NodeKind::const_pi);
        if (name == "e") return make_leaf(NodeKind::const_e);
        if (name == "i") return make_leaf(NodeKind::const_i);

        NodeKind fk;
        bool is_so = false;
        if (name == "exp") fk = NodeKind::fn_exp;
        else if (name == "ln") fk = NodeKind::fn_ln;
        else if (name == "sin") fk = NodeKind::fn_sin;
        else if (name == "cos") fk = NodeKind::fn_cos;
        else if (name == "tanh") fk = NodeKind::fn_tanh;
        else if (name == "atan") fk = NodeKind::fn_atan;
        else if (name == "pplus") fk = NodeKind::fn_pplus;
        else if (name == "pminus") fk = NodeKind::fn_pminus;
        else if (name == "so") is_so = true;
        else throw ParseError(off, "unknown identifier '" + name + "'");

        if (lex.tok != Lexer::Tok::lparen)
            throw ParseError(lex.tok_off, "expected '(' after '" + name + "'");
        const size_t lp = lex.tok_off;
        lex.advance();
        ++paren_depth;
        NodePtr arg = parse_expr();
        if (lex.tok != Lexer::Tok::rparen)
            throw ParseError(lp, "unbalanced parenthesis");
        --paren_depth;
        lex.advance();

        if (!is_so) return make_unary(fk, arg);
        if (contains_var(arg))
            throw ParseError(off, "so() takes a constant rate");
        // sin(lambda * ln(1 + ln(1 + t + 1/t)))
        NodePtr one = make_lit(1.0);
        NodePtr t = make_leaf(NodeKind::var_t);
        NodePtr inner = make_binary(
            NodeKind::add, one,
            make_binary(NodeKind::add, t, make_binary(NodeKind::divide, one, t)));
        NodePtr core = make_binary(
            NodeKind::add, one, make_unary(NodeKind::fn_ln, inner));
        return make_unary(NodeKind::fn_sin,
                          make_binary(NodeKind::mul, arg,
                                      make_unary(NodeKind::fn_ln, core)));
    }
};

}  // namespace detail

inline NodePtr parse(const std::string& src) {
    detail::Parser p(src);
    NodePtr ast = p.parse_expr();
    if (p.lex.tok != detail::Lexer::Tok::end)
        throw ParseError(p.lex.tok_off, "trailing input");
    return ast;
}

}  // namespace mellin::dsl
