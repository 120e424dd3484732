// Symbol spec files. Plain form:
//
//   { "expr": "...", "dx_expr": "...", "xlim_minus": "...",
//     "xlim_plus": "...", "label": "..." }
//
// with everything but expr optional; declared dx/x-limit expressions
// override the compiler's own derivation. A regularizer is emitted as
// a derived piecewise spec,
//
//   { "kind": "piecewise_regularizer", "r": ..., "outer_expr": "1/(a)",
//     "middle_expr": "...", "xlim_minus": ..., "xlim_plus": ..., "label": ... }
//
// which this loader also accepts: outer on t outside (1/r, r), middle
// inside. The middle expression exists whenever the x-limits of the
// base symbol were symbolically derivable; otherwise the spec carries
// a note and only the outer piece.
#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "mellin/dsl/compile.hpp"
#include "mellin/symbol.hpp"

namespace mellin::dsl {

struct LoadedSymbol {
    Symbol sym;
    CompiledSymbol compiled;  // compiled.ast null for piecewise specs
    bool piecewise = false;
};

namespace detail {

inline NodePtr substitute_t(const NodePtr& p, const NodePtr& repl) {
    if (!p) return p;
    if (p->kind == NodeKind::var_t) return repl;
    if (!p->a) return p;
    NodePtr a = substitute_t(p->a, repl);
    if (!p->b) {
        if (a == p->a) return p;
        return make_unary(p->kind, std::move(a));
    }
    NodePtr b = substitute_t(p->b, repl);
    if (a == p->a && b == p->b) return p;
    return make_binary(p->kind, std::move(a), std::move(b));
}

}  // namespace detail

inline LoadedSymbol symbol_from_json(const nlohmann::json& j) {
    LoadedSymbol out;
    const std::string label = j.value("label", "");

    if (j.value("kind", "") == std::string("piecewise_regularizer")) {
        const double r = j.at("r").get<double>();
        if (!(r > 1.0)) throw Error("piecewise spec: r must exceed 1");
        CompiledSymbol outer = compile(j.at("outer_expr").get<std::string>());
        if (!j.contains("middle_expr") || j["middle_expr"].is_null())
            throw Error("piecewise spec: middle_expr missing (emitted without "
                        "expressible x-limits); cannot evaluate inside (1/r, r)");
        CompiledSymbol middle = compile(j.at("middle_expr").get<std::string>());
        Symbol s;
        auto oe = outer.sym.eval, me = middle.sym.eval;
        auto od = outer.sym.dx, md = middle.sym.dx;
        s.eval = [oe, me, r](double t, double x) {
            return (t < 1.0 / r || t > r) ? oe(t, x) : me(t, x);
        };
        s.dx = [od, md, r](double t, double x) {
            return (t < 1.0 / r || t > r) ? od(t, x) : md(t, x);
        };
        if (j.contains("xlim_minus") && !j["xlim_minus"].is_null()) {
            CompiledSymbol lm = compile(j["xlim_minus"].get<std::string>());
            s.xlim_minus = [e = lm.sym.eval](double t) { return e(t, 0.0); };
        }
        if (j.contains("xlim_plus") && !j["xlim_plus"].is_null()) {
            CompiledSymbol lp = compile(j["xlim_plus"].get<std::string>());
            s.xlim_plus = [e = lp.sym.eval](double t) { return e(t, 0.0); };
        }
        s.tlim_zero = outer.sym.tlim_zero;
        s.tlim_inf = outer.sym.tlim_inf;
        s.label = label.empty() ? "piecewise_regularizer" : label;
        out.sym = s;
        out.piecewise = true;
        return out;
    }

    CompiledSymbol cs = compile(j.at("expr").get<std::string>(), label);
    if (j.contains("dx_expr") && !j["dx_expr"].is_null()) {
        CompiledSymbol d = compile(j["dx_expr"].get<std::string>());
        cs.dx_ast = d.ast;
        cs.sym.dx = [e = d.sym.eval](double t, double x) { return e(t, x); };
    }
    if (j.contains("xlim_minus") && !j["xlim_minus"].is_null()) {
        CompiledSymbol lm = compile(j["xlim_minus"].get<std::string>());
        cs.xlim_minus_ast = lm.ast;
        cs.sym.xlim_minus = [e = lm.sym.eval](double t) { return e(t, 0.0); };
    }
    if (j.contains("xlim_plus") && !j["xlim_plus"].is_null()) {
        CompiledSymbol lp = compile(j["xlim_plus"].get<std::string>());
        cs.xlim_plus_ast = lp.ast;
        cs.sym.xlim_plus = [e = lp.sym.eval](double t) { return e(t, 0.0); };
    }
    out.sym = cs.sym;
    out.compiled = cs;
    return out;
}

inline LoadedSymbol load_symbol_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open symbol file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw Error("bad symbol file " + path + ": " + ex.what());
    }
    return symbol_from_json(j);
}

// --symbol accepts a file path or an inline expression.
inline LoadedSymbol load_symbol_arg(const std::string& arg) {
    if (std::ifstream probe(arg); probe.good()) return load_symbol_file(arg);
    LoadedSymbol out;
    out.compiled = compile(arg);
    out.sym = out.compiled.sym;
    return out;
}

// Derived spec for the regularizer of a compiled symbol. Needs the
// base AST and its symbolic x-limit ASTs; with them, every piece is a
// plain expression: ell-+(t) carry r as a literal, the frozen sections
// are t-substitutions, and c-+(t) use the x-limit expressions.
inline nlohmann::json derived_regularizer_spec(const CompiledSymbol& base, double r,
                                               const std::string& label) {
    using detail::substitute_t;
    nlohmann::json j;
    j["kind"] = "piecewise_regularizer";
    j["r"] = r;
    j["label"] = label;
    NodePtr one = make_lit(1.0);
    j["outer_expr"] = print_expr(detail::fold_binary(NodeKind::divide, one, base.ast));
    if (!base.xlim_minus_ast || !base.xlim_plus_ast) {
        j["middle_expr"] = nullptr;
        j["note"] = "x-limits of the base symbol are not symbolically expressible; "
                    "middle zone omitted from the derived spec";
        return j;
    }
    auto bin = [](NodeKind k, NodePtr a, NodePtr b) {
        return detail::fold_binary(k, std::move(a), std::move(b));
    };
    NodePtr rlit = make_lit(r);
    NodePtr rinv = make_lit(1.0 / r);
    NodePtr lnr = make_unary(NodeKind::fn_ln, rlit);
    NodePtr lnt = make_unary(NodeKind::fn_ln, make_leaf(NodeKind::var_t));
    NodePtr two_lnr = bin(NodeKind::mul, make_lit(2.0), lnr);
    NodePtr ell_minus = bin(NodeKind::divide, bin(NodeKind::sub, lnr, lnt), two_lnr);
    NodePtr ell_plus = bin(NodeKind::divide, bin(NodeKind::add, lnr, lnt), two_lnr);
    NodePtr a_rinv = substitute_t(base.ast, rinv);
    NodePtr a_r = substitute_t(base.ast, rlit);
    auto c_of = [&](const NodePtr& lim) {
        NodePtr at_rinv = substitute_t(lim, rinv);
        NodePtr at_r = substitute_t(lim, rlit);
        return bin(NodeKind::sub,
                   bin(NodeKind::sub, bin(NodeKind::divide, one, lim),
                       bin(NodeKind::divide, ell_minus, at_rinv)),
                   bin(NodeKind::divide, ell_plus, at_r));
    };
    NodePtr x = make_leaf(NodeKind::var_x);
    NodePtr middle = bin(
        NodeKind::add,
        bin(NodeKind::add,
            bin(NodeKind::add, bin(NodeKind::divide, ell_minus, a_rinv),
                bin(NodeKind::divide, ell_plus, a_r)),
            bin(NodeKind::mul, c_of(base.xlim_minus_ast),
                make_unary(NodeKind::fn_pminus, x))),
        bin(NodeKind::mul, c_of(base.xlim_plus_ast), make_unary(NodeKind::fn_pplus, x)));
    j["middle_expr"] = print_expr(middle);
    j["xlim_minus"] = print_expr(bin(NodeKind::divide, one, base.xlim_minus_ast));
    j["xlim_plus"] = print_expr(bin(NodeKind::divide, one, base.xlim_plus_ast));
    return j;
}

}  // namespace mellin::dsl
