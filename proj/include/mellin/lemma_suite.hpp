// Measured checks of the closed-form facts the construction rests on:
// the V norm of the transition sigmoids, their shift and tail bounds,
// the inverse-closedness inequality, and the exact transition
// identities. Shared by the verify-lemmas subcommand and the
// acceptance suite.
//
// Note on the tail closed form: |p'| integrates to 1 - tanh(pi m)
// = 2/(e^{2 pi m}+1) over |x| > m; the one-sided tail is
// 1/(e^{2 pi m}+1) < e^{-2 pi m}. Both are checked.
#pragma once

#include <string>
#include <vector>

#include "mellin/norms.hpp"
#include "mellin/quadrature.hpp"
#include "mellin/reciprocal.hpp"
#include "mellin/regularizer.hpp"
#include "mellin/transition.hpp"

namespace mellin {

struct LemmaCheck {
    std::string name;
    double measured = 0.0;
    double reference = 0.0;  // closed form or bound
    double tolerance = 0.0;  // 0: one-sided bound check
    bool passed = false;
};

inline Symbol p_plus_symbol() {
    return from_x_function([](double x) { return Cplx(p_plus(x)); },
                           [](double x) { return Cplx(dp_plus(x)); },
                           [] { return Cplx(0.0); }, [] { return Cplx(1.0); },
                           "pplus(x)");
}

inline Symbol p_minus_symbol() {
    return from_x_function([](double x) { return Cplx(p_minus(x)); },
                           [](double x) { return Cplx(dp_minus(x)); },
                           [] { return Cplx(1.0); }, [] { return Cplx(0.0); },
                           "pminus(x)");
}

inline std::vector<LemmaCheck> run_lemma_suite() {
    std::vector<LemmaCheck> out;
    QuadConfig quad;
    quad.tol = 1e-12;

    for (const Symbol& p : {p_minus_symbol(), p_plus_symbol()}) {
        {
            LemmaCheck c;
            c.name = "|" + p.label + "|_V = 2";
            c.measured = v_norm(p, 1.0, quad);
            c.reference = 2.0;
            c.tolerance = 1e-8;
            c.passed = std::abs(c.measured - c.reference) <= c.tolerance;
            out.push_back(c);
        }
        for (double h : {1e-3, 1e-2, 1e-1, 1.0}) {
            LemmaCheck c;
            c.name = "shift bound |" + p.label + " - shift(" +
                     dsl::format_double(h) + ")|_V <= 5 pi h/2";
            c.measured = translate_defect(p, h, {1.0}, quad);
            c.reference = 5.0 * M_PI * h / 2.0;
            c.passed = c.measured <= c.reference + 1e-9;
            out.push_back(c);
        }
        for (double m : {0.5, 1.0, 2.0}) {
            const double one_sided_closed = 1.0 / (std::exp(2.0 * M_PI * m) + 1.0);
            auto integrand = [&p](double x) { return std::abs(p.dx(0.0, x)); };
            QuadOutcome right = detail::integrate_segment(
                integrand, m, std::max(2.0 * m, 16.0) * 4.0, quad.tol, quad.max_depth);
            {
                LemmaCheck c;
                c.name = "one-sided tail(" + p.label + ", m=" + dsl::format_double(m) +
                         ") = 1/(e^{2 pi m}+1)";
                c.measured = right.value;
                c.reference = one_sided_closed;
                c.tolerance = 1e-10;
                c.passed = std::abs(c.measured - c.reference) <= c.tolerance;
                out.push_back(c);
            }
            {
                LemmaCheck c;
                c.name = "one-sided tail(" + p.label + ", m=" + dsl::format_double(m) +
                         ") < e^{-2 pi m}";
                c.measured = right.value;
                c.reference = std::exp(-2.0 * M_PI * m);
                c.passed = c.measured < c.reference;
                out.push_back(c);
            }
            {
                LemmaCheck c;
                c.name = "two-sided tail(" + p.label + ", m=" + dsl::format_double(m) +
                         ") = 2/(e^{2 pi m}+1)";
                c.measured = tail_variation(p, m, {1.0}, quad);
                c.reference = 2.0 * one_sided_closed;
                c.tolerance = 1e-10;
                c.passed = std::abs(c.measured - c.reference) <= c.tolerance;
                out.push_back(c);
            }
        }
    }

    // inverse-closedness on stock bounded-away symbols
    {
        std::vector<Symbol> stock;
        stock.push_back(constant_symbol(2.0, "2"));
        stock.push_back(algebra_add(constant_symbol(2.0, "2"), p_plus_symbol()));
        Symbol osc;
        osc.eval = [](double t, double x) {
            const double u = std::log(t);
            return Cplx(2.0 + 0.5 * p_plus(x) * std::exp(-u * u / 64.0));
        };
        osc.dx = [](double t, double x) {
            const double u = std::log(t);
            return Cplx(0.5 * dp_plus(x) * std::exp(-u * u / 64.0));
        };
        osc.xlim_minus = [](double) { return Cplx(2.0); };
        osc.xlim_plus = [](double t) {
            const double u = std::log(t);
            return Cplx(2.0 + 0.5 * std::exp(-u * u / 64.0));
        };
        osc.label = "2 + pplus(x) exp(-(ln t)^2/64)/2";
        stock.push_back(osc);
        for (const Symbol& a : stock) {
            auto [inv, rep] = reciprocal(a, dyadic_tgrid(-8, 8), quad);
            LemmaCheck c;
            c.name = "inverse closedness: |1/(" + a.label + ")|_CbV <= |1/a|_oo^2 |a|_CbV";
            c.measured = rep.measured;
            c.reference = rep.bound;
            c.tolerance = 1e-6;
            c.passed = c.measured <= c.reference + c.tolerance;
            out.push_back(c);
        }
    }

    // transition identities at r = 4 on a t-dependent symbol
    {
        Symbol a;
        a.eval = [](double t, double x) {
            const double u = std::log(t);
            return Cplx(2.0 + 0.25 * std::sin(0.5 * std::log(1.0 + std::log(1.0 + t + 1.0 / t))) *
                                  p_plus(x) * std::exp(-u * u / 100.0));
        };
        a.xlim_minus = [](double) { return Cplx(2.0); };
        a.xlim_plus = [](double t) {
            const double u = std::log(t);
            return Cplx(2.0 + 0.25 * std::sin(0.5 * std::log(1.0 + std::log(1.0 + t + 1.0 / t))) *
                                  std::exp(-u * u / 100.0));
        };
        a.label = "gentle suite symbol";
        const double r = 4.0;
        TransitionPack pack = build_transition(a, r);
        LemmaCheck c1;
        c1.name = "c+-(r) = c+-(1/r) = 0";
        c1.measured = std::max({std::abs(pack.c_minus(r)), std::abs(pack.c_plus(r)),
                                std::abs(pack.c_minus(1.0 / r)),
                                std::abs(pack.c_plus(1.0 / r))});
        c1.reference = 0.0;
        c1.tolerance = 1e-12;
        c1.passed = c1.measured <= c1.tolerance;
        out.push_back(c1);
        LemmaCheck c2;
        c2.name = "ell- + ell+ = 1 on [1/r, r]";
        double worst = 0.0;
        for (int i = 0; i <= 64; ++i) {
            const double t = std::exp(-std::log(r) + 2.0 * std::log(r) * i / 64.0);
            worst = std::max(worst,
                             std::abs(pack.ell_minus(t) + pack.ell_plus(t) - 1.0));
        }
        c2.measured = worst;
        c2.reference = 0.0;
        c2.tolerance = 1e-12;
        c2.passed = c2.measured <= c2.tolerance;
        out.push_back(c2);
    }
    return out;
}

}  // namespace mellin
