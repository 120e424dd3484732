// Pointwise inversion 1/a with the inverse-closedness certificate:
// the measured C_b(R+,V(R)) norm of 1/a is checked against the bound
// |1/a|_oo^2 * |a|_{C_b(V)}.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mellin/norms.hpp"
#include "mellin/symbol.hpp"

namespace mellin {

struct InverseReport {
    double inf_modulus = 0.0;   // sampled inf |a| over the probe set
    double inf_t = 0.0, inf_x = 0.0;
    double sup_inverse = 0.0;   // 1 / inf_modulus
    double measured = 0.0;      // |1/a|_{C_b(V)} over the t-grid
    double measured_argmax_t = 0.0;
    double bound = 0.0;         // sup_inverse^2 * |a|_{C_b(V)}
    bool within_bound = false;
};

namespace detail {

inline std::vector<double> default_x_probes() {
    std::vector<double> xs;
    const double smax = std::asinh(std::ldexp(1.0, 24));
    for (int j = -96; j <= 96; ++j) xs.push_back(std::sinh(smax * j / 96.0));
    return xs;
}

}  // namespace detail

// Sampled inf of |a| over tgrid x (x probes + declared limits).
inline InverseReport sample_inf_modulus(const Symbol& a,
                                        const std::vector<double>& tgrid) {
    InverseReport rep;
    rep.inf_modulus = std::numeric_limits<double>::infinity();
    const std::vector<double> xs = detail::default_x_probes();
    for (double t : tgrid) {
        for (double x : xs) {
            const double m = std::abs(a.eval(t, x));
            if (m < rep.inf_modulus) {
                rep.inf_modulus = m;
                rep.inf_t = t;
                rep.inf_x = x;
            }
        }
        if (a.xlim_minus) {
            const double m = std::abs(a.xlim_minus(t));
            if (m < rep.inf_modulus) {
                rep.inf_modulus = m;
                rep.inf_t = t;
                rep.inf_x = -std::numeric_limits<double>::infinity();
            }
        }
        if (a.xlim_plus) {
            const double m = std::abs(a.xlim_plus(t));
            if (m < rep.inf_modulus) {
                rep.inf_modulus = m;
                rep.inf_t = t;
                rep.inf_x = std::numeric_limits<double>::infinity();
            }
        }
    }
    return rep;
}

inline Symbol reciprocal_symbol(const Symbol& a) {
    Symbol s;
    auto e = a.eval;
    s.eval = [e](double t, double x) { return 1.0 / e(t, x); };
    if (a.dx) {
        auto d = a.dx;
        s.dx = [e, d](double t, double x) {
            const Cplx v = e(t, x);
            return -d(t, x) / (v * v);
        };
    }
    if (a.xlim_minus) s.xlim_minus = [g = a.xlim_minus](double t) { return 1.0 / g(t); };
    if (a.xlim_plus) s.xlim_plus = [g = a.xlim_plus](double t) { return 1.0 / g(t); };
    if (a.tlim_zero) s.tlim_zero = [g = a.tlim_zero](double x) { return 1.0 / g(x); };
    if (a.tlim_inf) s.tlim_inf = [g = a.tlim_inf](double x) { return 1.0 / g(x); };
    s.label = "1/(" + a.label + ")";
    return s;
}

// 1/a with the certificate. Throws DegenerateSymbol when the sampled
// modulus dips below the floor.
inline std::pair<Symbol, InverseReport> reciprocal(
    const Symbol& a, const std::vector<double>& tgrid,
    const QuadConfig& quad = {}, double floor = 1e-6, double tol = 1e-6) {
    InverseReport rep = sample_inf_modulus(a, tgrid);
    if (!(rep.inf_modulus > floor))
        throw DegenerateSymbol("reciprocal(" + a.label +
                               "): not invertible in C_b; |a|=" +
                               std::to_string(rep.inf_modulus) + " at t=" +
                               std::to_string(rep.inf_t) + ", x=" +
                               std::to_string(rep.inf_x));
    rep.sup_inverse = 1.0 / rep.inf_modulus;
    Symbol inv = reciprocal_symbol(a);
    CbNormResult inv_norm = cb_norm(inv, tgrid, quad);
    CbNormResult a_norm = cb_norm(a, tgrid, quad);
    rep.measured = inv_norm.value;
    rep.measured_argmax_t = inv_norm.argmax_t;
    rep.bound = rep.sup_inverse * rep.sup_inverse * a_norm.value;
    rep.within_bound = rep.measured <= rep.bound + tol;
    return {inv, rep};
}

}  // namespace mellin
