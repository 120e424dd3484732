// Compilation of expression ASTs into Symbols: a complex evaluator,
// symbolic x-differentiation (all built-ins have closed-form rules
// expressible inside the grammar itself), and limit analysis at
// x -> +-inf and t -> 0, inf. Limits come in two layers: a symbolic
// layer that rewrites the AST into a t-only expression (used for
// declared limits and for serializing derived symbols), and a numeric
// extended-value evaluator that handles cases the rewrite cannot,
// e.g. bounded oscillations killed by decaying factors.
#pragma once

#include <array>
#include <optional>

#include "mellin/dsl/ast.hpp"
#include "mellin/dsl/parse.hpp"
#include "mellin/symbol.hpp"

namespace mellin::dsl {

// ---------------------------------------------------------------- eval

inline Cplx eval(const NodePtr& p, Cplx t, Cplx x) {
    switch (p->kind) {
        case NodeKind::literal: return Cplx(p->lit);
        case NodeKind::const_pi: return Cplx(M_PI);
        case NodeKind::const_e: return Cplx(std::exp(1.0));
        case NodeKind::const_i: return Cplx(0.0, 1.0);
        case NodeKind::var_t: return t;
        case NodeKind::var_x: return x;
        case NodeKind::neg: return -eval(p->a, t, x);
        case NodeKind::fn_exp: return std::exp(eval(p->a, t, x));
        case NodeKind::fn_ln: return std::log(eval(p->a, t, x));
        case NodeKind::fn_sin: return std::sin(eval(p->a, t, x));
        case NodeKind::fn_cos: return std::cos(eval(p->a, t, x));
        case NodeKind::fn_tanh: return std::tanh(eval(p->a, t, x));
        case NodeKind::fn_atan: return std::atan(eval(p->a, t, x));
        case NodeKind::fn_pplus: return 0.5 * (1.0 + std::tanh(M_PI * eval(p->a, t, x)));
        case NodeKind::fn_pminus: return 0.5 * (1.0 - std::tanh(M_PI * eval(p->a, t, x)));
        case NodeKind::add: return eval(p->a, t, x) + eval(p->b, t, x);
        case NodeKind::sub: return eval(p->a, t, x) - eval(p->b, t, x);
        case NodeKind::mul: return eval(p->a, t, x) * eval(p->b, t, x);
        case NodeKind::divide: return eval(p->a, t, x) / eval(p->b, t, x);
        case NodeKind::pow: return std::pow(eval(p->a, t, x), eval(p->b, t, x));
    }
    return Cplx(0.0);
}

// ---------------------------------------------------------- fold/build

namespace detail {

inline std::optional<double> literal_of(const NodePtr& p) {
    if (p->kind == NodeKind::literal) return p->lit;
    if (p->kind == NodeKind::neg && p->a->kind == NodeKind::literal) return -p->a->lit;
    return std::nullopt;
}

inline NodePtr lit_or_neg(double v) {
    if (std::signbit(v)) return make_unary(NodeKind::neg, make_lit(-v));
    return make_lit(v);
}

// Light constant folding and identity cleanup; keeps literals
// non-negative (negation stays a node).
inline NodePtr fold(NodePtr p);

inline NodePtr fold_unary(NodeKind k, NodePtr a) {
    if (k == NodeKind::neg) {
        if (auto v = literal_of(a)) return lit_or_neg(-*v);
        if (a->kind == NodeKind::neg) return a->a;
    }
    return make_unary(k, std::move(a));
}

inline NodePtr fold_binary(NodeKind k, NodePtr a, NodePtr b) {
    const auto va = literal_of(a), vb = literal_of(b);
    switch (k) {
        case NodeKind::add:
            if (va && *va == 0.0) return b;
            if (vb && *vb == 0.0) return a;
            if (va && vb) return lit_or_neg(*va + *vb);
            break;
        case NodeKind::sub:
            if (vb && *vb == 0.0) return a;
            if (va && vb) return lit_or_neg(*va - *vb);
            if (va && *va == 0.0) return fold_unary(NodeKind::neg, b);
            break;
        case NodeKind::mul:
            if ((va && *va == 0.0) || (vb && *vb == 0.0)) return make_lit(0.0);
            if (va && *va == 1.0) return b;
            if (vb && *vb == 1.0) return a;
            if (va && vb) return lit_or_neg(*va * *vb);
            break;
        case NodeKind::divide:
            if (va && *va == 0.0 && !(vb && *vb == 0.0)) return make_lit(0.0);
            if (vb && *vb == 1.0) return a;
            if (va && vb && *vb != 0.0) return lit_or_neg(*va / *vb);
            break;
        case NodeKind::pow:
            if (vb && *vb == 1.0) return a;
            if (vb && *vb == 0.0) return make_lit(1.0);
            if (va && vb) {
                const double r = std::pow(*va, *vb);
                if (std::isfinite(r)) return lit_or_neg(r);
            }
            break;
        default: break;
    }
    return make_binary(k, std::move(a), std::move(b));
}

inline NodePtr fold(NodePtr p) {
    if (!p->a) return p;
    NodePtr a = fold(p->a);
    if (!p->b) {
        if (a == p->a) return p;
        return fold_unary(p->kind, std::move(a));
    }
    NodePtr b = fold(p->b);
    if (a == p->a && b == p->b) return p;
    return fold_binary(p->kind, std::move(a), std::move(b));
}

}  // namespace detail

// ------------------------------------------------------- d/dx (symbolic)

inline NodePtr differentiate_x(const NodePtr& p) {
    using detail::fold_binary;
    using detail::fold_unary;
    auto D = [](const NodePtr& q) { return differentiate_x(q); };
    auto mul = [](NodePtr a, NodePtr b) {
        return fold_binary(NodeKind::mul, std::move(a), std::move(b));
    };
    auto divi = [](NodePtr a, NodePtr b) {
        return fold_binary(NodeKind::divide, std::move(a), std::move(b));
    };
    switch (p->kind) {
        case NodeKind::var_x: return make_lit(1.0);
        case NodeKind::literal:
        case NodeKind::const_pi:
        case NodeKind::const_e:
        case NodeKind::const_i:
        case NodeKind::var_t: return make_lit(0.0);
        case NodeKind::neg: return fold_unary(NodeKind::neg, D(p->a));
        case NodeKind::fn_exp: return mul(make_unary(NodeKind::fn_exp, p->a), D(p->a));
        case NodeKind::fn_ln: return divi(D(p->a), p->a);
        case NodeKind::fn_sin: return mul(make_unary(NodeKind::fn_cos, p->a), D(p->a));
        case NodeKind::fn_cos:
            return fold_unary(NodeKind::neg, mul(make_unary(NodeKind::fn_sin, p->a), D(p->a)));
        case NodeKind::fn_tanh: {
            // 1 - tanh^2
            NodePtr th = make_unary(NodeKind::fn_tanh, p->a);
            return mul(fold_binary(NodeKind::sub, make_lit(1.0), mul(th, th)), D(p->a));
        }
        case NodeKind::fn_atan:
            return divi(D(p->a), fold_binary(NodeKind::add, make_lit(1.0), mul(p->a, p->a)));
        case NodeKind::fn_pplus:
        case NodeKind::fn_pminus: {
            // (p+-)' = +- (pi/2) (1 - tanh^2(pi u)) u'
            NodePtr piu = fold_binary(NodeKind::mul, make_leaf(NodeKind::const_pi), p->a);
            NodePtr th = make_unary(NodeKind::fn_tanh, piu);
            NodePtr sech2 = fold_binary(NodeKind::sub, make_lit(1.0), mul(th, th));
            NodePtr core = mul(divi(make_leaf(NodeKind::const_pi), make_lit(2.0)),
                               mul(sech2, D(p->a)));
            return p->kind == NodeKind::fn_pplus ? core
                                                 : fold_unary(NodeKind::neg, core);
        }
        case NodeKind::add: return fold_binary(NodeKind::add, D(p->a), D(p->b));
        case NodeKind::sub: return fold_binary(NodeKind::sub, D(p->a), D(p->b));
        case NodeKind::mul:
            return fold_binary(NodeKind::add, mul(D(p->a), p->b), mul(p->a, D(p->b)));
        case NodeKind::divide:
            return divi(fold_binary(NodeKind::sub, mul(D(p->a), p->b), mul(p->a, D(p->b))),
                        mul(p->b, p->b));
        case NodeKind::pow: {
            // exponent is constant by the grammar
            NodePtr cm1 = fold_binary(NodeKind::sub, p->b, make_lit(1.0));
            return mul(mul(p->b, fold_binary(NodeKind::pow, p->a, cm1)), D(p->a));
        }
    }
    return make_lit(0.0);
}

// -------------------------------------------- numeric extended limits

// Extended values for limit propagation: a finite complex limit,
// directed infinities and zeros, "bounded but no limit", or unknown.
struct Ext {
    enum class Tag { finite, pinf, minf, tiny_pos, tiny_neg, bounded, none } tag;
    Cplx v{0.0, 0.0};

    static Ext fin(Cplx c) { return {Tag::finite, c}; }
    static Ext make(Tag t) { return {t, Cplx(0.0)}; }
    bool finite() const { return tag == Tag::finite; }
    bool tiny() const { return tag == Tag::tiny_pos || tag == Tag::tiny_neg; }
    // The limit value, with directed zeros collapsing to 0.
    Cplx value() const { return tiny() ? Cplx(0.0) : v; }
};

namespace detail {

using Tag = Ext::Tag;

inline bool real_nonzero(Cplx c) { return c.imag() == 0.0 && c.real() != 0.0; }

inline Ext ext_neg(Ext a) {
    switch (a.tag) {
        case Tag::finite: return Ext::fin(-a.v);
        case Tag::pinf: return Ext::make(Tag::minf);
        case Tag::minf: return Ext::make(Tag::pinf);
        case Tag::tiny_pos: return Ext::make(Tag::tiny_neg);
        case Tag::tiny_neg: return Ext::make(Tag::tiny_pos);
        default: return a;
    }
}

inline Ext ext_add(Ext a, Ext b) {
    if (a.tag == Tag::none || b.tag == Tag::none) return Ext::make(Tag::none);
    if (a.tag == Tag::pinf || a.tag == Tag::minf) {
        if (b.tag == a.tag || b.finite() || b.tiny() || b.tag == Tag::bounded) return a;
        return Ext::make(Tag::none);  // opposite infinities
    }
    if (b.tag == Tag::pinf || b.tag == Tag::minf) return ext_add(b, a);
    if (a.tag == Tag::bounded || b.tag == Tag::bounded) return Ext::make(Tag::bounded);
    if (a.tiny() && b.tiny())
        return a.tag == b.tag ? a : Ext::fin(Cplx(0.0));
    if (a.tiny()) return b.v == Cplx(0.0) ? a : b;
    if (b.tiny()) return a.v == Cplx(0.0) ? b : a;
    return Ext::fin(a.v + b.v);
}

inline Ext ext_mul(Ext a, Ext b) {
    if (a.tag == Tag::none || b.tag == Tag::none) return Ext::make(Tag::none);
    auto sign_flip = [](Ext inf, bool negative) {
        if (!negative) return inf;
        return inf.tag == Tag::pinf   ? Ext::make(Tag::minf)
               : inf.tag == Tag::minf ? Ext::make(Tag::pinf)
               : inf.tag == Tag::tiny_pos ? Ext::make(Tag::tiny_neg)
                                          : Ext::make(Tag::tiny_pos);
    };
    if (a.finite() && b.finite()) return Ext::fin(a.v * b.v);
    // exact zero factor
    if ((a.finite() && a.v == Cplx(0.0)) || (b.finite() && b.v == Cplx(0.0))) {
        const Ext& other = (a.finite() && a.v == Cplx(0.0)) ? b : a;
        if (other.tag == Tag::bounded || other.finite() || other.tiny())
            return Ext::fin(Cplx(0.0));
        return Ext::make(Tag::none);  // 0 * inf
    }
    if (a.finite() || b.finite()) {
        const Ext& fin = a.finite() ? a : b;
        const Ext& oth = a.finite() ? b : a;
        if (!real_nonzero(fin.v)) {
            // complex-directed scaling of inf: no single real direction
            if (oth.tag == Tag::pinf || oth.tag == Tag::minf) return Ext::make(Tag::none);
            if (oth.tiny()) return Ext::fin(Cplx(0.0));
            return Ext::make(Tag::bounded);  // finite * bounded
        }
        const bool neg = fin.v.real() < 0.0;
        if (oth.tag == Tag::bounded) return Ext::make(Tag::bounded);
        return sign_flip(oth, neg);
    }
    if (a.tag == Tag::bounded || b.tag == Tag::bounded) {
        const Ext& oth = a.tag == Tag::bounded ? b : a;
        if (oth.tiny()) return Ext::fin(Cplx(0.0));
        if (oth.tag == Tag::bounded) return Ext::make(Tag::bounded);
        return Ext::make(Tag::none);  // bounded * inf
    }
    // both are inf/tiny
    auto numeric = [](Tag t) { return t == Tag::pinf ? 2 : t == Tag::minf ? -2 : t == Tag::tiny_pos ? 1 : -1; };
    const int pa = numeric(a.tag), pb = numeric(b.tag);
    const bool neg = (pa < 0) != (pb < 0);
    const bool inf = std::abs(pa) == 2 && std::abs(pb) == 2;
    const bool tiny = std::abs(pa) == 1 && std::abs(pb) == 1;
    if (inf) return Ext::make(neg ? Tag::minf : Tag::pinf);
    if (tiny) return Ext::make(neg ? Tag::tiny_neg : Tag::tiny_pos);
    return Ext::make(Tag::none);  // inf * tiny
}

inline Ext ext_inv(Ext a) {
    switch (a.tag) {
        case Tag::finite:
            if (a.v == Cplx(0.0)) return Ext::make(Tag::none);
            return Ext::fin(1.0 / a.v);
        case Tag::pinf: return Ext::make(Tag::tiny_pos);
        case Tag::minf: return Ext::make(Tag::tiny_neg);
        case Tag::tiny_pos: return Ext::make(Tag::pinf);
        case Tag::tiny_neg: return Ext::make(Tag::minf);
        default: return Ext::make(Tag::none);
    }
}

inline Ext ext_pow(Ext a, Cplx c) {
    if (c.imag() != 0.0) {
        if (a.finite() && a.v != Cplx(0.0)) return Ext::fin(std::pow(a.v, c));
        return Ext::make(Tag::none);
    }
    const double p = c.real();
    if (p == 0.0) return Ext::fin(Cplx(1.0));
    const bool integer = p == std::floor(p);
    const bool even = integer && std::fmod(std::abs(p), 2.0) < 0.5;
    switch (a.tag) {
        case Tag::finite:
            if (a.v == Cplx(0.0)) return p > 0 ? Ext::fin(Cplx(0.0)) : Ext::make(Tag::none);
            return Ext::fin(std::pow(a.v, c));
        case Tag::pinf: return p > 0 ? Ext::make(Tag::pinf) : Ext::make(Tag::tiny_pos);
        case Tag::minf:
            if (!integer) return Ext::make(Tag::none);
            if (p > 0) return Ext::make(even ? Tag::pinf : Tag::minf);
            return Ext::make(even ? Tag::tiny_pos : Tag::tiny_neg);
        case Tag::tiny_pos: return p > 0 ? Ext::make(Tag::tiny_pos) : Ext::make(Tag::pinf);
        case Tag::tiny_neg:
            if (!integer) return Ext::make(Tag::none);
            if (p > 0) return Ext::make(even ? Tag::tiny_pos : Tag::tiny_neg);
            return Ext::make(even ? Tag::pinf : Tag::minf);
        case Tag::bounded: return p > 0 ? Ext::make(Tag::bounded) : Ext::make(Tag::none);
        default: return Ext::make(Tag::none);
    }
}

}  // namespace detail

inline Ext ext_eval(const NodePtr& p, Ext tval, Ext xval) {
    using detail::Tag;
    using detail::ext_add;
    using detail::ext_inv;
    using detail::ext_mul;
    using detail::ext_neg;
    using detail::ext_pow;
    auto rec = [&](const NodePtr& q) { return ext_eval(q, tval, xval); };
    switch (p->kind) {
        case NodeKind::literal: return Ext::fin(Cplx(p->lit));
        case NodeKind::const_pi: return Ext::fin(Cplx(M_PI));
        case NodeKind::const_e: return Ext::fin(Cplx(std::exp(1.0)));
        case NodeKind::const_i: return Ext::fin(Cplx(0.0, 1.0));
        case NodeKind::var_t: return tval;
        case NodeKind::var_x: return xval;
        case NodeKind::neg: return ext_neg(rec(p->a));
        case NodeKind::fn_exp: {
            Ext a = rec(p->a);
            switch (a.tag) {
                case Tag::finite: return Ext::fin(std::exp(a.v));
                case Tag::pinf: return Ext::make(Tag::pinf);
                case Tag::minf: return Ext::make(Tag::tiny_pos);
                case Tag::tiny_pos:
                case Tag::tiny_neg: return Ext::fin(Cplx(1.0));
                case Tag::bounded: return Ext::make(Tag::bounded);
                default: return Ext::make(Tag::none);
            }
        }
        case NodeKind::fn_ln: {
            Ext a = rec(p->a);
            switch (a.tag) {
                case Tag::finite:
                    if (a.v == Cplx(0.0)) return Ext::make(Tag::none);
                    return Ext::fin(std::log(a.v));
                case Tag::pinf: return Ext::make(Tag::pinf);
                case Tag::tiny_pos: return Ext::make(Tag::minf);
                default: return Ext::make(Tag::none);
            }
        }
        case NodeKind::fn_sin:
        case NodeKind::fn_cos: {
            Ext a = rec(p->a);
            if (a.finite())
                return Ext::fin(p->kind == NodeKind::fn_sin ? std::sin(a.v) : std::cos(a.v));
            if (a.tiny())
                return Ext::fin(p->kind == NodeKind::fn_sin ? Cplx(0.0) : Cplx(1.0));
            if (a.tag == Tag::none) return Ext::make(Tag::none);
            // sin/cos of a real-directed unbounded or bounded argument:
            // bounded, but only if the argument stays real
            return Ext::make(Tag::bounded);
        }
        case NodeKind::fn_tanh: {
            Ext a = rec(p->a);
            switch (a.tag) {
                case Tag::finite: return Ext::fin(std::tanh(a.v));
                case Tag::pinf: return Ext::fin(Cplx(1.0));
                case Tag::minf: return Ext::fin(Cplx(-1.0));
                case Tag::tiny_pos:
                case Tag::tiny_neg: return Ext::fin(Cplx(0.0));
                case Tag::bounded: return Ext::make(Tag::bounded);
                default: return Ext::make(Tag::none);
            }
        }
        case NodeKind::fn_atan: {
            Ext a = rec(p->a);
            switch (a.tag) {
                case Tag::finite: return Ext::fin(std::atan(a.v));
                case Tag::pinf: return Ext::fin(Cplx(M_PI / 2.0));
                case Tag::minf: return Ext::fin(Cplx(-M_PI / 2.0));
                case Tag::tiny_pos:
                case Tag::tiny_neg: return Ext::fin(Cplx(0.0));
                case Tag::bounded: return Ext::make(Tag::bounded);
                default: return Ext::make(Tag::none);
            }
        }
        case NodeKind::fn_pplus:
        case NodeKind::fn_pminus: {
            Ext a = rec(p->a);
            const bool plus = p->kind == NodeKind::fn_pplus;
            switch (a.tag) {
                case Tag::finite:
                    return Ext::fin(0.5 * (1.0 + (plus ? 1.0 : -1.0) * std::tanh(M_PI * a.v)));
                case Tag::pinf:
                    return plus ? Ext::fin(Cplx(1.0)) : Ext::make(Tag::tiny_pos);
                case Tag::minf:
                    return plus ? Ext::make(Tag::tiny_pos) : Ext::fin(Cplx(1.0));
                case Tag::tiny_pos:
                case Tag::tiny_neg: return Ext::fin(Cplx(0.5));
                case Tag::bounded: return Ext::make(Tag::bounded);
                default: return Ext::make(Tag::none);
            }
        }
        case NodeKind::add: return ext_add(rec(p->a), rec(p->b));
        case NodeKind::sub: return ext_add(rec(p->a), ext_neg(rec(p->b)));
        case NodeKind::mul: return ext_mul(rec(p->a), rec(p->b));
        case NodeKind::divide: return ext_mul(rec(p->a), ext_inv(rec(p->b)));
        case NodeKind::pow: {
            const Cplx c = eval(p->b, Cplx(1.0), Cplx(0.0));  // constant exponent
            return ext_pow(rec(p->a), c);
        }
    }
    return Ext::make(detail::Tag::none);
}


// ------------------------------------------------- symbolic x-limits

// Result of rewriting lim_{x -> +-inf} of an AST: a t-only AST, a
// directed infinity, "bounded but no limit" (usable only when killed
// by a factor converging to zero), or failure.
struct SymLim {
    enum class Tag { ast, pinf, minf, bounded, fail } tag = Tag::fail;
    NodePtr ast;

    static SymLim of(NodePtr a) { return {Tag::ast, std::move(a)}; }
    static SymLim make(Tag t) { return {t, nullptr}; }
    bool is_ast() const { return tag == Tag::ast; }
};

namespace detail {

// Degree and leading coefficient (a t-only AST) of a polynomial in x.
// Bails on cancellation of leading terms and on anything
// transcendental in x.
inline std::optional<std::pair<int, NodePtr>> poly_profile(const NodePtr& p) {
    using R = std::optional<std::pair<int, NodePtr>>;
    if (!contains_x(p)) return R{{0, p}};
    switch (p->kind) {
        case NodeKind::var_x: return R{{1, make_lit(1.0)}};
        case NodeKind::neg: {
            auto r = poly_profile(p->a);
            if (!r) return std::nullopt;
            return R{{r->first, fold_unary(NodeKind::neg, r->second)}};
        }
        case NodeKind::add:
        case NodeKind::sub: {
            auto ra = poly_profile(p->a), rb = poly_profile(p->b);
            if (!ra || !rb) return std::nullopt;
            const bool minus = p->kind == NodeKind::sub;
            if (ra->first > rb->first) return ra;
            if (rb->first > ra->first)
                return R{{rb->first, minus ? fold_unary(NodeKind::neg, rb->second)
                                           : rb->second}};
            NodePtr c = fold_binary(minus ? NodeKind::sub : NodeKind::add,
                                    ra->second, rb->second);
            if (is_literal_value(c, 0.0)) return std::nullopt;  // leading cancels
            return R{{ra->first, c}};
        }
        case NodeKind::mul: {
            auto ra = poly_profile(p->a), rb = poly_profile(p->b);
            if (!ra || !rb) return std::nullopt;
            return R{{ra->first + rb->first,
                      fold_binary(NodeKind::mul, ra->second, rb->second)}};
        }
        case NodeKind::divide: {
            if (contains_x(p->b)) return std::nullopt;
            auto ra = poly_profile(p->a);
            if (!ra) return std::nullopt;
            return R{{ra->first, fold_binary(NodeKind::divide, ra->second, p->b)}};
        }
        case NodeKind::pow: {
            auto c = literal_of(p->b);
            if (!c || *c < 0.0 || *c != std::floor(*c)) return std::nullopt;
            auto ra = poly_profile(p->a);
            if (!ra) return std::nullopt;
            return R{{ra->first * static_cast<int>(*c),
                      fold_binary(NodeKind::pow, ra->second, p->b)}};
        }
        default: return std::nullopt;
    }
}

}  // namespace detail

inline SymLim sym_limit_x(const NodePtr& p, int sign) {
    using detail::fold_binary;
    using detail::fold_unary;
    using Tag = SymLim::Tag;
    if (!contains_x(p)) return SymLim::of(p);
    auto rec = [sign](const NodePtr& q) { return sym_limit_x(q, sign); };
    switch (p->kind) {
        case NodeKind::var_x:
            return SymLim::make(sign > 0 ? Tag::pinf : Tag::minf);
        case NodeKind::neg: {
            SymLim a = rec(p->a);
            switch (a.tag) {
                case Tag::ast: return SymLim::of(fold_unary(NodeKind::neg, a.ast));
                case Tag::pinf: return SymLim::make(Tag::minf);
                case Tag::minf: return SymLim::make(Tag::pinf);
                default: return a;
            }
        }
        case NodeKind::fn_exp: {
            SymLim a = rec(p->a);
            if (a.is_ast()) return SymLim::of(make_unary(NodeKind::fn_exp, a.ast));
            if (a.tag == Tag::minf) return SymLim::of(make_lit(0.0));
            if (a.tag == Tag::bounded) return SymLim::make(Tag::bounded);
            return SymLim::make(Tag::fail);
        }
        case NodeKind::fn_ln: {
            SymLim a = rec(p->a);
            if (a.is_ast()) return SymLim::of(make_unary(NodeKind::fn_ln, a.ast));
            if (a.tag == Tag::pinf) return SymLim::make(Tag::pinf);
            return SymLim::make(Tag::fail);
        }
        case NodeKind::fn_sin:
        case NodeKind::fn_cos: {
            SymLim a = rec(p->a);
            if (a.is_ast()) return SymLim::of(make_unary(p->kind, a.ast));
            if (a.tag == Tag::fail) return SymLim::make(Tag::fail);
            return SymLim::make(Tag::bounded);
        }
        case NodeKind::fn_tanh: {
            SymLim a = rec(p->a);
            if (a.is_ast()) return SymLim::of(make_unary(NodeKind::fn_tanh, a.ast));
            if (a.tag == Tag::pinf) return SymLim::of(make_lit(1.0));
            if (a.tag == Tag::minf)
                return SymLim::of(fold_unary(NodeKind::neg, make_lit(1.0)));
            if (a.tag == Tag::bounded) return SymLim::make(Tag::bounded);
            return SymLim::make(Tag::fail);
        }
        case NodeKind::fn_atan: {
            SymLim a = rec(p->a);
            NodePtr half_pi = fold_binary(NodeKind::divide,
                                          make_leaf(NodeKind::const_pi), make_lit(2.0));
            if (a.is_ast()) return SymLim::of(make_unary(NodeKind::fn_atan, a.ast));
            if (a.tag == Tag::pinf) return SymLim::of(half_pi);
            if (a.tag == Tag::minf)
                return SymLim::of(fold_unary(NodeKind::neg, half_pi));
            if (a.tag == Tag::bounded) return SymLim::make(Tag::bounded);
            return SymLim::make(Tag::fail);
        }
        case NodeKind::fn_pplus:
        case NodeKind::fn_pminus: {
            SymLim a = rec(p->a);
            const bool plus = p->kind == NodeKind::fn_pplus;
            if (a.is_ast()) return SymLim::of(make_unary(p->kind, a.ast));
            if (a.tag == Tag::pinf) return SymLim::of(make_lit(plus ? 1.0 : 0.0));
            if (a.tag == Tag::minf) return SymLim::of(make_lit(plus ? 0.0 : 1.0));
            if (a.tag == Tag::bounded) return SymLim::make(Tag::bounded);
            return SymLim::make(Tag::fail);
        }
        case NodeKind::add:
        case NodeKind::sub: {
            SymLim a = rec(p->a);
            SymLim b = rec(p->b);
            if (p->kind == NodeKind::sub) {
                if (b.tag == Tag::ast) b.ast = fold_unary(NodeKind::neg, b.ast);
                else if (b.tag == Tag::pinf) b = SymLim::make(Tag::minf);
                else if (b.tag == Tag::minf) b = SymLim::make(Tag::pinf);
            }
            if (a.tag == Tag::fail || b.tag == Tag::fail) return SymLim::make(Tag::fail);
            if (a.tag == Tag::pinf || a.tag == Tag::minf) {
                if (b.tag == a.tag || b.is_ast() || b.tag == Tag::bounded) return a;
                return SymLim::make(Tag::fail);
            }
            if (b.tag == Tag::pinf || b.tag == Tag::minf) {
                if (a.is_ast() || a.tag == Tag::bounded) return b;
                return SymLim::make(Tag::fail);
            }
            if (a.tag == Tag::bounded || b.tag == Tag::bounded)
                return SymLim::make(Tag::bounded);
            return SymLim::of(fold_binary(NodeKind::add, a.ast, b.ast));
        }
        case NodeKind::mul: {
            SymLim a = rec(p->a);
            SymLim b = rec(p->b);
            if (a.tag == Tag::fail || b.tag == Tag::fail) return SymLim::make(Tag::fail);
            auto zero_kills = [](const SymLim& z, const SymLim& other) {
                return z.is_ast() && is_literal_value(z.ast, 0.0) &&
                       (other.is_ast() || other.tag == Tag::bounded);
            };
            if (zero_kills(a, b) || zero_kills(b, a)) return SymLim::of(make_lit(0.0));
            if (a.is_ast() && b.is_ast())
                return SymLim::of(fold_binary(NodeKind::mul, a.ast, b.ast));
            if (a.tag == Tag::bounded && b.tag == Tag::bounded)
                return SymLim::make(Tag::bounded);
            if ((a.tag == Tag::bounded && b.is_ast()) ||
                (b.tag == Tag::bounded && a.is_ast()))
                return SymLim::make(Tag::bounded);
            // one side is a directed infinity
            const SymLim& inf = (a.tag == Tag::pinf || a.tag == Tag::minf) ? a : b;
            const SymLim& oth = (&inf == &a) ? b : a;
            if (oth.is_ast() && !contains_var(oth.ast)) {
                const Cplx c = eval(oth.ast, Cplx(1.0), Cplx(0.0));
                if (c.imag() == 0.0 && c.real() != 0.0) {
                    const bool flip = c.real() < 0.0;
                    const bool plus = inf.tag == Tag::pinf;
                    return SymLim::make(plus != flip ? Tag::pinf : Tag::minf);
                }
            }
            if (oth.tag == Tag::pinf || oth.tag == Tag::minf) {
                const bool plus = (inf.tag == Tag::pinf) == (oth.tag == Tag::pinf);
                return SymLim::make(plus ? Tag::pinf : Tag::minf);
            }
            return SymLim::make(Tag::fail);
        }
        case NodeKind::divide: {
            // rational route first: both sides polynomial in x
            auto rn = detail::poly_profile(p->a);
            auto rd = detail::poly_profile(p->b);
            if (rn && rd && contains_x(p->b)) {
                if (rn->first < rd->first) return SymLim::of(make_lit(0.0));
                if (rn->first == rd->first)
                    return SymLim::of(fold_binary(NodeKind::divide, rn->second, rd->second));
                return SymLim::make(Tag::fail);
            }
            SymLim a = rec(p->a);
            SymLim b = rec(p->b);
            if (a.tag == Tag::fail || b.tag == Tag::fail) return SymLim::make(Tag::fail);
            if (b.is_ast()) {
                if (is_literal_value(b.ast, 0.0)) return SymLim::make(Tag::fail);
                if (a.is_ast())
                    return SymLim::of(fold_binary(NodeKind::divide, a.ast, b.ast));
                return SymLim::make(Tag::fail);  // inf or bounded over unchecked AST
            }
            if (b.tag == Tag::pinf || b.tag == Tag::minf) {
                if (a.is_ast() || a.tag == Tag::bounded) return SymLim::of(make_lit(0.0));
            }
            return SymLim::make(Tag::fail);
        }
        case NodeKind::pow: {
            SymLim a = rec(p->a);
            if (a.is_ast())
                return SymLim::of(fold_binary(NodeKind::pow, a.ast, p->b));
            auto c = detail::literal_of(p->b);
            if (!c) return SymLim::make(Tag::fail);
            if (a.tag == Tag::pinf && *c < 0.0) return SymLim::of(make_lit(0.0));
            if (a.tag == Tag::minf && *c < 0.0 && *c == std::floor(*c))
                return SymLim::of(make_lit(0.0));
            if (a.tag == Tag::bounded && *c > 0.0) return SymLim::make(Tag::bounded);
            return SymLim::make(Tag::fail);
        }
        default:
            return SymLim::make(Tag::fail);
    }
}

// --------------------------------------------------------- to_symbol

struct CompiledSymbol {
    Symbol sym;
    NodePtr ast;
    NodePtr dx_ast;
    NodePtr xlim_minus_ast, xlim_plus_ast;  // null when not symbolically derivable
};

namespace detail {

inline Cplx ext_limit_or_throw(const NodePtr& ast, Ext tval, Ext xval,
                               const std::string& what) {
    Ext r = ext_eval(ast, tval, xval);
    if (!r.finite() && !r.tiny())
        throw NonConvergence("limit analysis failed: " + what);
    return r.value();
}

}  // namespace detail

// Compile an AST. dx is always symbolic; x-limits are declared when
// the symbolic rewrite succeeds or, failing that, when the numeric
// extended evaluator yields finite values at probe points; t-limits
// likewise via the numeric layer.
inline CompiledSymbol to_symbol(const NodePtr& ast_in, std::string label = "") {
    CompiledSymbol cs;
    cs.ast = detail::fold(ast_in);
    cs.dx_ast = detail::fold(differentiate_x(cs.ast));
    NodePtr ast = cs.ast;
    NodePtr dxa = cs.dx_ast;
    cs.sym.eval = [ast](double t, double x) { return eval(ast, Cplx(t), Cplx(x)); };
    cs.sym.dx = [dxa](double t, double x) { return eval(dxa, Cplx(t), Cplx(x)); };
    cs.sym.label = label.empty() ? print_expr(cs.ast) : std::move(label);

    const std::array<double, 3> t_probes = {0.37, 1.0, 2.9};
    const std::array<double, 3> x_probes = {-1.7, 0.0, 2.3};

    SymLim lm = sym_limit_x(cs.ast, -1);
    SymLim lp = sym_limit_x(cs.ast, +1);
    if (lm.is_ast() && lp.is_ast()) {
        cs.xlim_minus_ast = lm.ast;
        cs.xlim_plus_ast = lp.ast;
        cs.sym.xlim_minus = [a = lm.ast](double t) { return eval(a, Cplx(t), Cplx(0.0)); };
        cs.sym.xlim_plus = [a = lp.ast](double t) { return eval(a, Cplx(t), Cplx(0.0)); };
    } else {
        bool ok = true;
        for (double t : t_probes) {
            for (int sign : {-1, +1}) {
                Ext r = ext_eval(ast, Ext::fin(Cplx(t)),
                                 Ext::make(sign > 0 ? Ext::Tag::pinf : Ext::Tag::minf));
                if (!r.finite() && !r.tiny()) ok = false;
            }
        }
        if (ok) {
            cs.sym.xlim_minus = [ast](double t) {
                return detail::ext_limit_or_throw(ast, Ext::fin(Cplx(t)),
                                                  Ext::make(Ext::Tag::minf), "x->-inf");
            };
            cs.sym.xlim_plus = [ast](double t) {
                return detail::ext_limit_or_throw(ast, Ext::fin(Cplx(t)),
                                                  Ext::make(Ext::Tag::pinf), "x->+inf");
            };
        }
    }

    for (int side = 0; side < 2; ++side) {
        const Ext tv = Ext::make(side == 0 ? Ext::Tag::tiny_pos : Ext::Tag::pinf);
        bool ok = true;
        for (double x : x_probes) {
            Ext r = ext_eval(ast, tv, Ext::fin(Cplx(x)));
            if (!r.finite() && !r.tiny()) ok = false;
        }
        if (ok) {
            auto f = [ast, tv, side](double x) {
                return detail::ext_limit_or_throw(ast, tv, Ext::fin(Cplx(x)),
                                                  side == 0 ? "t->0" : "t->inf");
            };
            if (side == 0) cs.sym.tlim_zero = f;
            else cs.sym.tlim_inf = f;
        }
    }
    return cs;
}

inline CompiledSymbol compile(const std::string& src, std::string label = "") {
    return to_symbol(parse(src), std::move(label));
}

}  // namespace mellin::dsl
