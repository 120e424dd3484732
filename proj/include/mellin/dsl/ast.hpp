// Expression AST for the symbol language: variables t and x, real
// literals, the constants pi/e/i, a fixed set of unary functions, and
// +, -, *, /, ^ with constant exponent. Literals are non-negative by
// construction (negation is a node), which keeps print/parse a
// bijection on ASTs.
#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "mellin/symbol.hpp"

namespace mellin::dsl {

enum class NodeKind {
    literal,
    const_pi,
    const_e,
    const_i,
    var_t,
    var_x,
    neg,
    fn_exp,
    fn_ln,
    fn_sin,
    fn_cos,
    fn_tanh,
    fn_atan,
    fn_pplus,
    fn_pminus,
    add,
    sub,
    mul,
    divide,
    pow
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind;
    double lit = 0.0;  // literal payload, >= 0
    NodePtr a, b;
};

inline NodePtr make_lit(double v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::literal;
    n->lit = v;
    return n;
}
inline NodePtr make_leaf(NodeKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}
inline NodePtr make_unary(NodeKind k, NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    return n;
}
inline NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

inline bool is_unary_fn(NodeKind k) {
    return k >= NodeKind::fn_exp && k <= NodeKind::fn_pminus;
}
inline bool is_binary(NodeKind k) { return k >= NodeKind::add; }

inline const char* fn_name(NodeKind k) {
    switch (k) {
        case NodeKind::fn_exp: return "exp";
        case NodeKind::fn_ln: return "ln";
        case NodeKind::fn_sin: return "sin";
        case NodeKind::fn_cos: return "cos";
        case NodeKind::fn_tanh: return "tanh";
        case NodeKind::fn_atan: return "atan";
        case NodeKind::fn_pplus: return "pplus";
        case NodeKind::fn_pminus: return "pminus";
        default: return "?";
    }
}

inline bool equal(const NodePtr& p, const NodePtr& q) {
    if (p == q) return true;
    if (!p || !q) return false;
    if (p->kind != q->kind) return false;
    if (p->kind == NodeKind::literal && p->lit != q->lit) return false;
    return equal(p->a, q->a) && equal(p->b, q->b);
}

inline bool contains(const NodePtr& p, NodeKind k) {
    if (!p) return false;
    if (p->kind == k) return true;
    return contains(p->a, k) || contains(p->b, k);
}
inline bool contains_var(const NodePtr& p) {
    return contains(p, NodeKind::var_t) || contains(p, NodeKind::var_x);
}
inline bool contains_x(const NodePtr& p) { return contains(p, NodeKind::var_x); }

inline bool is_literal_value(const NodePtr& p, double v) {
    return p && p->kind == NodeKind::literal && p->lit == v;
}

// Shortest digit string that parses back to exactly the same double.
inline std::string format_double(double v) {
    char buf[40];
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace detail {

// Precedence: + - (1) < * / (2) < unary - (3) < ^ (4) < atoms (5).
inline int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::add:
        case NodeKind::sub: return 1;
        case NodeKind::mul:
        case NodeKind::divide: return 2;
        case NodeKind::neg: return 3;
        case NodeKind::pow: return 4;
        default: return 5;
    }
}

inline void print_rec(const NodePtr& p, std::string& out) {
    auto child = [&out](const NodePtr& c, bool needs_parens) {
        if (needs_parens) {
            out += '(';
            print_rec(c, out);
            out += ')';
        } else {
            print_rec(c, out);
        }
    };
    const int prec = precedence(p->kind);
    switch (p->kind) {
        case NodeKind::literal: out += format_double(p->lit); return;
        case NodeKind::const_pi: out += "pi"; return;
        case NodeKind::const_e: out += "e"; return;
        case NodeKind::const_i: out += "i"; return;
        case NodeKind::var_t: out += "t"; return;
        case NodeKind::var_x: out += "x"; return;
        case NodeKind::neg:
            out += '-';
            child(p->a, precedence(p->a->kind) < prec);
            return;
        default: break;
    }
    if (is_unary_fn(p->kind)) {
        out += fn_name(p->kind);
        out += '(';
        print_rec(p->a, out);
        out += ')';
        return;
    }
    // binary, all left-associative: parenthesize the right child on
    // ties so structure survives reparsing
    const char* op = p->kind == NodeKind::add      ? " + "
                     : p->kind == NodeKind::sub    ? " - "
                     : p->kind == NodeKind::mul    ? "*"
                     : p->kind == NodeKind::divide ? "/"
                                                   : "^";
    child(p->a, precedence(p->a->kind) < prec);
    out += op;
    child(p->b, precedence(p->b->kind) <= prec);
}

}  // namespace detail

// Canonical minimal-parenthesis form; parse(print(ast)) == ast.
inline std::string print_expr(const NodePtr& ast) {
    if (!ast) return "";
    std::string out;
    detail::print_rec(ast, out);
    return out;
}

}  // namespace mellin::dsl
