// Adaptive quadrature over the real line with domain doubling, and a
// dense-scan + golden-section sup estimator. Both are the workhorses
// behind the V(R) norm: variation by integration of |d/dx a|, sup by
// sampling. Integrands here are expected to decay; the doubling loop
// detects non-decay and reports it instead of looping forever.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mellin/symbol.hpp"

namespace mellin {

struct QuadConfig {
    double tol = 1e-9;               // absolute tolerance for the integral
    double initial_halfwidth = 16.0; // first domain is [-X, X]
    int max_doublings = 48;          // X doubles until the tail settles
    int max_depth = 34;              // adaptive bisection depth per panel
    int sup_samples = 2048;          // dense-scan resolution per domain
};

struct QuadOutcome {
    double value = 0.0;
    double error = 0.0;      // accumulated local error estimates
    bool converged = true;   // false: tail not settling / depth exhausted
    double domain_halfwidth = 0.0;  // final X after doubling
    std::string note;
};

struct SupEstimate {
    double value = 0.0;  // refined lower bound for the sup
    double arg = 0.0;    // where it was attained
};

namespace detail {

using RealFn = std::function<double(double)>;

// Adaptive Simpson on [a,b]. Panels that hit the depth cap are
// accepted with their error estimate; the segment wrapper decides
// afterwards whether the accumulated error meets the tolerance.
inline void simpson_rec(const RealFn& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol,
                        int depth, QuadOutcome& out) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
        out.value += left + right + delta / 15.0;
        out.error += std::abs(delta) / 15.0;
        return;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, out);
    simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, out);
}

inline QuadOutcome integrate_segment(const RealFn& f, double a, double b,
                                     double tol, int max_depth) {
    QuadOutcome out;
    if (!(b > a)) return out;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth, out);
    if (out.error > std::max(4.0 * tol, 1e-15)) {
        out.converged = false;
        out.note = "requested tolerance not met on [" + std::to_string(a) +
                   ", " + std::to_string(b) + "]";
    }
    return out;
}

}  // namespace detail

// Integral of f over [-X0, X0] with X doubling until the newest shell
// contributes < tol/10. Three consecutive non-decreasing shell
// contributions above tolerance mark the integral as non-convergent.
inline QuadOutcome integrate_line(const detail::RealFn& f, const QuadConfig& cfg) {
    QuadOutcome total = detail::integrate_segment(
        f, -cfg.initial_halfwidth, cfg.initial_halfwidth, cfg.tol, cfg.max_depth);
    double X = cfg.initial_halfwidth;
    total.domain_halfwidth = X;
    double prev_shell = -1.0;
    int rising = 0;
    for (int d = 0; d < cfg.max_doublings; ++d) {
        QuadOutcome left = detail::integrate_segment(f, -2.0 * X, -X, cfg.tol, cfg.max_depth);
        QuadOutcome right = detail::integrate_segment(f, X, 2.0 * X, cfg.tol, cfg.max_depth);
        const double shell = left.value + right.value;
        total.value += shell;
        total.error += left.error + right.error;
        total.converged = total.converged && left.converged && right.converged;
        X *= 2.0;
        total.domain_halfwidth = X;
        if (std::abs(shell) < cfg.tol / 10.0) return total;
        if (prev_shell >= 0.0 && std::abs(shell) >= prev_shell) {
            if (++rising >= 3) {
                total.converged = false;
                total.note = "tail contribution not decreasing across doublings";
                return total;
            }
        } else {
            rising = 0;
        }
        prev_shell = std::abs(shell);
    }
    total.converged = false;
    total.note = "doubling budget exhausted before tail settled";
    return total;
}

// Integral of f over |x| > m (two half-lines), same doubling policy.
inline QuadOutcome integrate_tails(const detail::RealFn& f, double m,
                                   const QuadConfig& cfg) {
    double X = std::max(2.0 * m, cfg.initial_halfwidth);
    QuadOutcome total;
    {
        QuadOutcome right = detail::integrate_segment(f, m, X, cfg.tol, cfg.max_depth);
        QuadOutcome left = detail::integrate_segment(f, -X, -m, cfg.tol, cfg.max_depth);
        total.value = left.value + right.value;
        total.error = left.error + right.error;
        total.converged = left.converged && right.converged;
        total.domain_halfwidth = X;
    }
    double prev_shell = -1.0;
    int rising = 0;
    for (int d = 0; d < cfg.max_doublings; ++d) {
        QuadOutcome left = detail::integrate_segment(f, -2.0 * X, -X, cfg.tol, cfg.max_depth);
        QuadOutcome right = detail::integrate_segment(f, X, 2.0 * X, cfg.tol, cfg.max_depth);
        const double shell = left.value + right.value;
        total.value += shell;
        total.error += left.error + right.error;
        total.converged = total.converged && left.converged && right.converged;
        X *= 2.0;
        total.domain_halfwidth = X;
        if (std::abs(shell) < cfg.tol / 10.0) return total;
        if (prev_shell >= 0.0 && std::abs(shell) >= prev_shell) {
            if (++rising >= 3) {
                total.converged = false;
                total.note = "tail contribution not decreasing across doublings";
                return total;
            }
        } else {
            rising = 0;
        }
        prev_shell = std::abs(shell);
    }
    total.converged = false;
    total.note = "doubling budget exhausted before tail settled";
    return total;
}

// Dense scan over [-X, X] followed by golden-section refinement around
// the best sample. The result is a certified lower bound for sup |g|.
inline SupEstimate sup_on_line(const detail::RealFn& g, double halfwidth,
                               int samples) {
    SupEstimate best;
    best.arg = -halfwidth;
    best.value = g(-halfwidth);
    const double step = 2.0 * halfwidth / samples;
    int best_i = 0;
    std::vector<double> vals(static_cast<size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) {
        const double x = -halfwidth + i * step;
        vals[static_cast<size_t>(i)] = g(x);
        if (vals[static_cast<size_t>(i)] > best.value) {
            best.value = vals[static_cast<size_t>(i)];
            best.arg = x;
            best_i = i;
        }
    }
    // Golden-section on the bracketing interval.
    double lo = -halfwidth + std::max(0, best_i - 1) * step;
    double hi = -halfwidth + std::min(samples, best_i + 1) * step;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = g(c), fd = g(d);
    for (int it = 0; it < 80; ++it) {
        if (fc > fd) {
            hi = d; d = c; fd = fc;
            c = hi - invphi * (hi - lo);
            fc = g(c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + invphi * (hi - lo);
            fd = g(d);
        }
    }
    const double xm = 0.5 * (lo + hi);
    const double fm = g(xm);
    if (fm > best.value) {
        best.value = fm;
        best.arg = xm;
    }
    return best;
}

}  // namespace mellin
