// Limits of symbols at the edges of the half-plane: x -> +-inf per t
// (declared or extrapolated along x = 2^k with Aitken acceleration),
// and sequential probes of a(t,.) as t -> 0 or infinity. The latter
// stand in for the fiber values over the maximal-ideal boundary, which
// have no finite description; a profile therefore carries an explicit
// converged flag and must not be consumed when false unless the caller
// opted in.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "mellin/norms.hpp"
#include "mellin/symbol.hpp"

namespace mellin {

struct LimitEstimate {
    Cplx value{0.0, 0.0};
    double error = 0.0;
};

namespace detail {

// One pass of Aitken's delta-squared; returns the accelerated sequence.
inline std::vector<Cplx> aitken_pass(const std::vector<Cplx>& v) {
    if (v.size() < 3) return v;
    std::vector<Cplx> out;
    out.reserve(v.size() - 2);
    for (size_t i = 0; i + 2 < v.size(); ++i) {
        const Cplx d1 = v[i + 1] - v[i];
        const Cplx d2 = v[i + 2] - 2.0 * v[i + 1] + v[i];
        if (std::abs(d2) < 1e-300) {
            out.push_back(v[i + 2]);
        } else {
            out.push_back(v[i + 2] - (v[i + 2] - v[i + 1]) * (v[i + 2] - v[i + 1]) / d2);
        }
    }
    return out;
}

// Accelerated limit of a sampled sequence, with a crude error estimate
// (last raw increment vs. last accelerated increment).
inline LimitEstimate accelerate(const std::vector<Cplx>& raw) {
    LimitEstimate est;
    std::vector<Cplx> cur = raw;
    double last_diff = raw.size() >= 2
                           ? std::abs(raw.back() - raw[raw.size() - 2])
                           : 0.0;
    for (int pass = 0; pass < 3 && cur.size() >= 3; ++pass) {
        std::vector<Cplx> nxt = aitken_pass(cur);
        if (nxt.size() >= 2) {
            const double nd = std::abs(nxt.back() - nxt[nxt.size() - 2]);
            if (nd > last_diff) break;  // acceleration stopped helping
            last_diff = nd;
        }
        cur = nxt;
    }
    est.value = cur.back();
    est.error = last_diff;
    return est;
}

}  // namespace detail

// Limits a(t,-inf), a(t,+inf). Declared limits win; otherwise the
// symbol is probed along x = +-2^k and accelerated. Throws when the
// raw increments refuse to decay.
inline std::pair<LimitEstimate, LimitEstimate> x_limits(const Symbol& a, double t,
                                                        double tol = 1e-9) {
    std::pair<LimitEstimate, LimitEstimate> result;
    auto one_side = [&](int sign) -> LimitEstimate {
        if (sign < 0 && a.xlim_minus) return {a.xlim_minus(t), 0.0};
        if (sign > 0 && a.xlim_plus) return {a.xlim_plus(t), 0.0};
        std::vector<Cplx> vals;
        vals.reserve(40);
        double prev_diff = std::numeric_limits<double>::infinity();
        int stalled = 0;  // cumulative count of non-decaying increments
        for (int k = 2; k <= 40; ++k) {
            const double x = sign * std::ldexp(1.0, k);
            vals.push_back(a.eval(t, x));
            if (vals.size() >= 2) {
                const double d = std::abs(vals.back() - vals[vals.size() - 2]);
                if (d < tol * 1e-3) break;
                if (d >= 0.9 * prev_diff && d > tol) ++stalled;
                if (stalled >= 8)
                    throw NonConvergence("x_limits(" + a.label + "): no finite limit at x=" +
                                         (sign > 0 ? std::string("+inf") : std::string("-inf")) +
                                         " (t=" + std::to_string(t) + ")");
                prev_diff = d;
            }
        }
        return detail::accelerate(vals);
    };
    result.first = one_side(-1);
    result.second = one_side(+1);
    return result;
}

struct ProbeConfig {
    double u_start = 40.0;   // first probe at t = exp(+-u_start)
    double u_step = 6.0;     // geometric ratio exp(u_step) between probes
    int count = 14;          // number of probes (>= 3)
    double tol = 1e-3;       // convergence threshold for the Cauchy defect
    std::vector<double> xgrid;  // where limit values are reported
    QuadConfig quad;

    ProbeConfig() {
        for (int j = -16; j <= 16; ++j) xgrid.push_back(std::sinh(0.35 * j));
    }
};

enum class BoundarySide { zero, infinity };

struct BoundaryProfile {
    BoundarySide side = BoundarySide::infinity;
    std::vector<double> sample_ts;          // geometric probe sequence
    std::vector<double> xgrid;
    std::vector<Cplx> limit_values;         // extrapolated a(side, x) per x
    LimitEstimate corner_minus, corner_plus;  // extrapolated a(side, -+inf)
    double cauchy_defect = 0.0;  // max consecutive |a(t_j,.) - a(t_{j+1},.)|_V
    bool converged = false;
    std::string note;
};

// Probe a(t_j,.) along t_j -> 0 or infinity. The Cauchy defect is the
// max over consecutive probes of the V-norm difference; limit values
// are Aitken-accelerated per grid point.
inline BoundaryProfile t_limit_profile(const Symbol& a, BoundarySide side,
                                       const ProbeConfig& cfg = {}) {
    if (cfg.count < 3) throw Error("t_limit_profile: need at least 3 probes");
    BoundaryProfile prof;
    prof.side = side;
    prof.xgrid = cfg.xgrid;
    const double dir = (side == BoundarySide::infinity) ? 1.0 : -1.0;
    for (int j = 0; j < cfg.count; ++j)
        prof.sample_ts.push_back(std::exp(dir * (cfg.u_start + cfg.u_step * j)));

    for (size_t j = 0; j + 1 < prof.sample_ts.size(); ++j) {
        Symbol diff = algebra_sub(freeze_t(a, prof.sample_ts[j]),
                                  freeze_t(a, prof.sample_ts[j + 1]));
        VNormParts p = v_norm_parts(diff, 1.0, cfg.quad);
        if (!p.converged) {
            prof.note = "V-norm probe did not converge at t=" +
                        std::to_string(prof.sample_ts[j]);
            prof.cauchy_defect = std::numeric_limits<double>::infinity();
            prof.converged = false;
            return prof;
        }
        prof.cauchy_defect = std::max(prof.cauchy_defect, p.value);
    }
    prof.converged = prof.cauchy_defect < cfg.tol;

    std::vector<Cplx> seq(prof.sample_ts.size());
    for (double x : cfg.xgrid) {
        for (size_t j = 0; j < prof.sample_ts.size(); ++j)
            seq[j] = a.eval(prof.sample_ts[j], x);
        prof.limit_values.push_back(detail::accelerate(seq).value);
    }
    // Corner values a(side, -+inf): extrapolate the per-probe x-limits.
    std::vector<Cplx> cm(prof.sample_ts.size()), cp(prof.sample_ts.size());
    for (size_t j = 0; j < prof.sample_ts.size(); ++j) {
        auto [lm, lp] = x_limits(a, prof.sample_ts[j]);
        cm[j] = lm.value;
        cp[j] = lp.value;
    }
    prof.corner_minus = detail::accelerate(cm);
    prof.corner_plus = detail::accelerate(cp);
    return prof;
}

}  // namespace mellin
