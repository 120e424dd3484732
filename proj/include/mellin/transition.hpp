// The transition machinery behind the regularizer: the sigmoid pair
// p-(x) = (1 - tanh(pi x))/2, p+(x) = (1 + tanh(pi x))/2, the linear
// interpolation weights ell+-(t) = (ln r +- ln t)/(2 ln r) on
// [1/r, r], and the correction coefficients c+-(t) that make the
// middle-zone formula match 1/a at both seams and at x = +-inf.
#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "mellin/limits.hpp"
#include "mellin/symbol.hpp"

namespace mellin {

inline double p_plus(double x) { return 0.5 * (1.0 + std::tanh(M_PI * x)); }
inline double p_minus(double x) { return 0.5 * (1.0 - std::tanh(M_PI * x)); }

// (p+-)'(x) = +- pi / (2 cosh^2(pi x)); underflows cleanly to 0 far out.
inline double dp_plus(double x) {
    const double c = std::cosh(M_PI * x);
    if (std::isinf(c)) return 0.0;
    return M_PI / (2.0 * c * c);
}
inline double dp_minus(double x) { return -dp_plus(x); }

struct TransitionPack {
    double r = 2.0;
    std::function<double(double)> ell_minus, ell_plus;  // on [1/r, r]
    std::function<Cplx(double)> c_minus, c_plus;        // on [1/r, r]
    Symbol a_at_rinv, a_at_r;                           // frozen x-sections
    std::function<Cplx(double)> alim_minus, alim_plus;  // a(t, -+inf)
    Cplx a_rinv_minus, a_rinv_plus;                     // a(1/r, -+inf)
    Cplx a_r_minus, a_r_plus;                           // a(r, -+inf)
};

// Materialize ell+-, c+- and the frozen sections for a given r > 1.
// Requires nonzero a(t,+-inf) on [1/r, r]; checked on a log-spaced
// sample with the boundary points exact.
inline TransitionPack build_transition(const Symbol& a, double r,
                                       double floor = 1e-12) {
    if (!(r > 1.0)) throw Error("build_transition: r must exceed 1");
    TransitionPack pack;
    pack.r = r;
    const double lnr = std::log(r);
    pack.ell_minus = [lnr](double t) { return (lnr - std::log(t)) / (2.0 * lnr); };
    pack.ell_plus = [lnr](double t) { return (lnr + std::log(t)) / (2.0 * lnr); };

    auto lim_of = [&a](double t) { return x_limits(a, t); };
    auto [rm, rp] = lim_of(r);
    auto [im, ip] = lim_of(1.0 / r);
    pack.a_r_minus = rm.value;
    pack.a_r_plus = rp.value;
    pack.a_rinv_minus = im.value;
    pack.a_rinv_plus = ip.value;
    for (auto [v, where] : {std::pair<Cplx, const char*>{rm.value, "t=r, x=-inf"},
                            {rp.value, "t=r, x=+inf"},
                            {im.value, "t=1/r, x=-inf"},
                            {ip.value, "t=1/r, x=+inf"}}) {
        if (std::abs(v) <= floor)
            throw DegenerateSymbol(std::string("build_transition(") + a.label +
                                   "): zero boundary value at " + where);
    }
    // Interior sweep of a(t, +-inf) over the middle zone.
    for (int i = 0; i <= 64; ++i) {
        const double t = std::exp(-lnr + 2.0 * lnr * i / 64.0);
        auto [lm, lp] = lim_of(t);
        if (std::abs(lm.value) <= floor || std::abs(lp.value) <= floor)
            throw DegenerateSymbol("build_transition(" + a.label +
                                   "): zero x-limit inside middle zone at t=" +
                                   std::to_string(t));
    }

    pack.a_at_rinv = freeze_t(a, 1.0 / r);
    pack.a_at_r = freeze_t(a, r);

    auto alim = [a](int sign) {  // copy: the pack may outlive the caller's symbol
        return std::function<Cplx(double)>([a, sign](double t) {
            auto [lm, lp] = x_limits(a, t);
            return sign < 0 ? lm.value : lp.value;
        });
    };
    pack.alim_minus = a.xlim_minus ? a.xlim_minus : alim(-1);
    pack.alim_plus = a.xlim_plus ? a.xlim_plus : alim(+1);

    auto make_c = [pack_ell_m = pack.ell_minus, pack_ell_p = pack.ell_plus](
                      std::function<Cplx(double)> lim, Cplx at_rinv, Cplx at_r) {
        return std::function<Cplx(double)>(
            [lim, at_rinv, at_r, pack_ell_m, pack_ell_p](double t) {
                return 1.0 / lim(t) - pack_ell_m(t) / at_rinv - pack_ell_p(t) / at_r;
            });
    };
    pack.c_minus = make_c(pack.alim_minus, pack.a_rinv_minus, pack.a_r_minus);
    pack.c_plus = make_c(pack.alim_plus, pack.a_rinv_plus, pack.a_r_plus);
    return pack;
}

}  // namespace mellin
