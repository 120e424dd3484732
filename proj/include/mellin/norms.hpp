// Norms and moduli on symbols: the V(R) norm |a|_V = |a|_oo + V(a),
// its sup over a t-grid (the C_b(R+,V(R)) norm), the oscillation
// modulus cm_r over dyadic windows [r,2r], the translation defect
// sup_t |a - a^h|_V, and the derivative tail integrals.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "mellin/quadrature.hpp"
#include "mellin/symbol.hpp"

namespace mellin {

inline std::vector<double> dyadic_tgrid(int kmin = -20, int kmax = 20) {
    std::vector<double> g;
    for (int k = kmin; k <= kmax; ++k) g.push_back(std::ldexp(1.0, k));
    return g;
}

struct VNormParts {
    double sup = 0.0;
    double sup_arg = 0.0;
    double variation = 0.0;
    double value = 0.0;    // sup + variation
    double error = 0.0;    // quadrature error estimate for the variation part
    bool converged = true;
    std::string note;
};

// |a(t,.)|_V for one t. The variation is an adaptive line integral of
// |d/dx a|; the sup is a dense scan over the integration domain plus
// the declared limits at +-inf when available.
inline VNormParts v_norm_parts(const Symbol& a, double t, const QuadConfig& quad) {
    VNormParts p;
    auto integrand = [&a, t](double x) { return std::abs(a.dx_or_fd(t, x)); };
    QuadOutcome var = integrate_line(integrand, quad);
    p.variation = var.value;
    p.error = var.error;
    p.converged = var.converged;
    p.note = var.note;
    const double X = std::max(var.domain_halfwidth, quad.initial_halfwidth);
    auto mod = [&a, t](double x) { return std::abs(a.eval(t, x)); };
    SupEstimate sup = sup_on_line(mod, X, quad.sup_samples);
    p.sup = sup.value;
    p.sup_arg = sup.arg;
    if (a.xlim_minus) p.sup = std::max(p.sup, std::abs(a.xlim_minus(t)));
    if (a.xlim_plus) p.sup = std::max(p.sup, std::abs(a.xlim_plus(t)));
    p.value = p.sup + p.variation;
    return p;
}

// Throwing convenience; non-convergent variation is reported as the
// "not of bounded variation" diagnostic.
inline double v_norm(const Symbol& a, double t, const QuadConfig& quad = {}) {
    VNormParts p = v_norm_parts(a, t, quad);
    if (!p.converged)
        throw NonConvergence("v_norm(" + a.label + ", t=" + std::to_string(t) +
                             "): not of bounded variation (" + p.note + ")");
    return p.value;
}

struct CbNormResult {
    double value = 0.0;
    double argmax_t = 0.0;
    VNormParts parts;  // parts at the argmax t
};

inline CbNormResult cb_norm(const Symbol& a, const std::vector<double>& tgrid,
                            const QuadConfig& quad = {}) {
    if (tgrid.empty()) throw Error("cb_norm: empty t-grid");
    CbNormResult best;
    best.value = -1.0;
    for (double t : tgrid) {
        VNormParts p = v_norm_parts(a, t, quad);
        if (!p.converged)
            throw NonConvergence("cb_norm(" + a.label + "): not of bounded variation at t=" +
                                 std::to_string(t) + " (" + p.note + ")");
        if (p.value > best.value) {
            best.value = p.value;
            best.argmax_t = t;
            best.parts = p;
        }
    }
    return best;
}

// cm_r(a) = max over t,tau in [r,2r] of |a(t,.) - a(tau,.)|_{L^oo},
// with the (t,tau,x) sampling refined until the value is stable.
inline double cm_modulus(const Symbol& a, double r, double tol = 1e-6) {
    if (!(r > 0.0)) throw Error("cm_modulus: r must be positive");
    double prev = -1.0;
    double cm = 0.0;
    for (int level = 0; level < 5; ++level) {
        const int nt = 8 * (1 << level) + 1;
        const int nx = 64 * (1 << level);
        std::vector<double> ts(static_cast<size_t>(nt));
        for (int i = 0; i < nt; ++i)
            ts[static_cast<size_t>(i)] = r * std::pow(2.0, double(i) / (nt - 1));
        // sinh-spaced x nodes: dense near 0, reaching out to ~2^20
        std::vector<double> xs;
        xs.reserve(static_cast<size_t>(2 * nx + 1));
        const double smax = std::asinh(std::ldexp(1.0, 20));
        for (int j = -nx; j <= nx; ++j)
            xs.push_back(std::sinh(smax * double(j) / nx));
        cm = 0.0;
        std::vector<Cplx> vals(static_cast<size_t>(nt));
        for (double x : xs) {
            for (int i = 0; i < nt; ++i) vals[static_cast<size_t>(i)] = a.eval(ts[static_cast<size_t>(i)], x);
            for (int i = 0; i < nt; ++i)
                for (int j = i + 1; j < nt; ++j)
                    cm = std::max(cm, std::abs(vals[static_cast<size_t>(i)] - vals[static_cast<size_t>(j)]));
        }
        if (a.has_xlim()) {
            for (auto side : {&Symbol::xlim_minus, &Symbol::xlim_plus}) {
                for (int i = 0; i < nt; ++i) vals[static_cast<size_t>(i)] = (a.*side)(ts[static_cast<size_t>(i)]);
                for (int i = 0; i < nt; ++i)
                    for (int j = i + 1; j < nt; ++j)
                        cm = std::max(cm, std::abs(vals[static_cast<size_t>(i)] - vals[static_cast<size_t>(j)]));
            }
        }
        if (prev >= 0.0 && cm - prev <= tol) break;
        prev = cm;
    }
    return cm;
}

// sup over the t-grid of |a(t,.) - a(t,.+h)|_V.
inline double translate_defect(const Symbol& a, double h,
                               const std::vector<double>& tgrid,
                               const QuadConfig& quad = {}) {
    if (h == 0.0) return 0.0;
    Symbol diff = algebra_sub(a, translate_x(a, h));
    diff.label = a.label + " - shift";
    return cb_norm(diff, tgrid, quad).value;
}

// sup over the t-grid of the derivative tail integral over |x| > m.
inline double tail_variation(const Symbol& a, double m,
                             const std::vector<double>& tgrid,
                             const QuadConfig& quad = {}) {
    if (!(m > 0.0)) throw Error("tail_variation: m must be positive");
    double worst = 0.0;
    for (double t : tgrid) {
        auto integrand = [&a, t](double x) { return std::abs(a.dx_or_fd(t, x)); };
        QuadOutcome out = integrate_tails(integrand, m, quad);
        if (!out.converged)
            throw NonConvergence("tail_variation(" + a.label + ", t=" + std::to_string(t) +
                                 "): not of bounded variation (" + out.note + ")");
        worst = std::max(worst, out.value);
    }
    return worst;
}

struct SweepConfig {
    std::vector<double> tgrid = dyadic_tgrid();
    std::vector<double> r_grid_zero;  // cm probes toward 0
    std::vector<double> r_grid_inf;   // cm probes toward infinity
    std::vector<double> h_grid;       // translation probes toward 0
    std::vector<double> m_grid;       // tail probes toward infinity
    QuadConfig quad;
    double cm_tol = 1e-6;

    SweepConfig() {
        for (int k = 5; k <= 25; k += 4) r_grid_zero.push_back(std::ldexp(1.0, -k));
        for (int k = 4; k <= 24; k += 4) r_grid_inf.push_back(std::ldexp(1.0, k));
        for (int k = 0; k <= 4; ++k) h_grid.push_back(std::pow(10.0, -1 - k));
        for (int k = 0; k <= 12; ++k) m_grid.push_back(std::ldexp(1.0, k));
    }
};

// Aggregate report. sup_norm/variation/v_norm are the parts at the
// t-grid argmax of the V norm, so v_norm = sup_norm + variation holds
// exactly.
struct VNormReport {
    double sup_norm = 0.0;
    double variation = 0.0;
    double v_norm = 0.0;
    double argmax_t = 0.0;
    std::vector<std::pair<double, double>> cm_values;
    std::vector<std::pair<double, double>> translate_defects;
    std::vector<std::pair<double, double>> tail_defects;
    double quadrature_error_bound = 0.0;
};

inline VNormReport analyze_norms(const Symbol& a, const SweepConfig& cfg = {}) {
    VNormReport rep;
    CbNormResult cb = cb_norm(a, cfg.tgrid, cfg.quad);
    rep.sup_norm = cb.parts.sup;
    rep.variation = cb.parts.variation;
    rep.v_norm = cb.parts.sup + cb.parts.variation;
    rep.argmax_t = cb.argmax_t;
    rep.quadrature_error_bound = cb.parts.error;
    for (double r : cfg.r_grid_zero)
        rep.cm_values.emplace_back(r, cm_modulus(a, r, cfg.cm_tol));
    for (double r : cfg.r_grid_inf)
        rep.cm_values.emplace_back(r, cm_modulus(a, r, cfg.cm_tol));
    for (double h : cfg.h_grid) {
        double d = translate_defect(a, h, cfg.tgrid, cfg.quad);
        rep.translate_defects.emplace_back(h, d);
    }
    for (double m : cfg.m_grid) {
        double d = tail_variation(a, m, cfg.tgrid, cfg.quad);
        rep.tail_defects.emplace_back(m, d);
    }
    return rep;
}

}  // namespace mellin
