// Symbols a(t,x) on the half-plane (0,inf) x R, with optional analytic
// x-derivative and optional declared limits at x = +-inf and t -> 0, inf.
// All evaluation is pure; a Symbol is immutable after construction and
// safe to share across threads.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace mellin {

using Cplx = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature tail does not settle, or a limit extrapolation diverges.
struct NonConvergence : Error {
    using Error::Error;
};

// A pointwise non-degeneracy assumption failed (zero limit, vanishing
// modulus, ...). Carries the offending point in the message.
struct DegenerateSymbol : Error {
    using Error::Error;
};

struct Symbol {
    std::function<Cplx(double, double)> eval;  // a(t,x), required
    std::function<Cplx(double, double)> dx;    // d/dx a(t,x), optional
    std::function<Cplx(double)> xlim_minus;    // a(t,-inf), optional
    std::function<Cplx(double)> xlim_plus;     // a(t,+inf), optional
    std::function<Cplx(double)> tlim_zero;     // lim_{t->0} a(t,x), optional
    std::function<Cplx(double)> tlim_inf;      // lim_{t->inf} a(t,x), optional
    std::string label;

    Cplx operator()(double t, double x) const { return eval(t, x); }

    bool has_dx() const { return static_cast<bool>(dx); }
    bool has_xlim() const { return xlim_minus && xlim_plus; }
    bool has_tlim() const { return tlim_zero && tlim_inf; }

    // x-derivative with central-difference fallback, step 1e-5*(1+|x|).
    Cplx dx_or_fd(double t, double x) const {
        if (dx) return dx(t, x);
        const double h = 1e-5 * (1.0 + std::abs(x));
        return (eval(t, x + h) - eval(t, x - h)) / (2.0 * h);
    }
};

inline Symbol constant_symbol(Cplx c, std::string label = "const") {
    Symbol s;
    s.eval = [c](double, double) { return c; };
    s.dx = [](double, double) { return Cplx(0.0); };
    s.xlim_minus = [c](double) { return c; };
    s.xlim_plus = [c](double) { return c; };
    s.tlim_zero = [c](double) { return c; };
    s.tlim_inf = [c](double) { return c; };
    s.label = std::move(label);
    return s;
}

// t-independent symbol from a function of x alone. Derivative and limits
// may be empty.
inline Symbol from_x_function(std::function<Cplx(double)> f,
                              std::function<Cplx(double)> df = {},
                              std::function<Cplx()> lim_minus = {},
                              std::function<Cplx()> lim_plus = {},
                              std::string label = "f(x)") {
    Symbol s;
    s.eval = [f](double, double x) { return f(x); };
    if (df) s.dx = [df](double, double x) { return df(x); };
    if (lim_minus) s.xlim_minus = [lim_minus](double) { return lim_minus(); };
    if (lim_plus) s.xlim_plus = [lim_plus](double) { return lim_plus(); };
    s.tlim_zero = [f](double x) { return f(x); };
    s.tlim_inf = [f](double x) { return f(x); };
    s.label = std::move(label);
    return s;
}

inline Symbol from_t_function(std::function<Cplx(double)> g,
                              std::string label = "g(t)") {
    Symbol s;
    s.eval = [g](double t, double) { return g(t); };
    s.dx = [](double, double) { return Cplx(0.0); };
    s.xlim_minus = [g](double t) { return g(t); };
    s.xlim_plus = [g](double t) { return g(t); };
    s.label = std::move(label);
    return s;
}

// a^h(t,x) := a(t,x+h). Limits at +-inf are translation invariant.
inline Symbol translate_x(const Symbol& a, double h) {
    Symbol s;
    auto e = a.eval;
    s.eval = [e, h](double t, double x) { return e(t, x + h); };
    if (a.dx) {
        auto d = a.dx;
        s.dx = [d, h](double t, double x) { return d(t, x + h); };
    }
    s.xlim_minus = a.xlim_minus;
    s.xlim_plus = a.xlim_plus;
    if (a.tlim_zero) s.tlim_zero = [g = a.tlim_zero, h](double x) { return g(x + h); };
    if (a.tlim_inf) s.tlim_inf = [g = a.tlim_inf, h](double x) { return g(x + h); };
    s.label = a.label + "^h";
    return s;
}

// Freeze the x-section a(t0, .) as a t-independent symbol.
inline Symbol freeze_t(const Symbol& a, double t0) {
    Symbol s;
    auto e = a.eval;
    s.eval = [e, t0](double, double x) { return e(t0, x); };
    if (a.dx) {
        auto d = a.dx;
        s.dx = [d, t0](double, double x) { return d(t0, x); };
    }
    if (a.xlim_minus) s.xlim_minus = [g = a.xlim_minus, t0](double) { return g(t0); };
    if (a.xlim_plus) s.xlim_plus = [g = a.xlim_plus, t0](double) { return g(t0); };
    s.tlim_zero = [e, t0](double x) { return e(t0, x); };
    s.tlim_inf = [e, t0](double x) { return e(t0, x); };
    s.label = a.label + "|t=" + std::to_string(t0);
    return s;
}

namespace detail {

template <class Op>
Symbol combine(const Symbol& a, const Symbol& b, Op op, const char* glue) {
    Symbol s;
    auto ea = a.eval, eb = b.eval;
    s.eval = [ea, eb, op](double t, double x) { return op(ea(t, x), eb(t, x)); };
    if (a.xlim_minus && b.xlim_minus)
        s.xlim_minus = [ga = a.xlim_minus, gb = b.xlim_minus, op](double t) {
            return op(ga(t), gb(t));
        };
    if (a.xlim_plus && b.xlim_plus)
        s.xlim_plus = [ga = a.xlim_plus, gb = b.xlim_plus, op](double t) {
            return op(ga(t), gb(t));
        };
    if (a.tlim_zero && b.tlim_zero)
        s.tlim_zero = [ga = a.tlim_zero, gb = b.tlim_zero, op](double x) {
            return op(ga(x), gb(x));
        };
    if (a.tlim_inf && b.tlim_inf)
        s.tlim_inf = [ga = a.tlim_inf, gb = b.tlim_inf, op](double x) {
            return op(ga(x), gb(x));
        };
    s.label = "(" + a.label + ")" + glue + "(" + b.label + ")";
    return s;
}

}  // namespace detail

inline Symbol algebra_add(const Symbol& a, const Symbol& b) {
    Symbol s = detail::combine(a, b, [](Cplx u, Cplx v) { return u + v; }, "+");
    if (a.dx && b.dx) {
        auto da = a.dx, db = b.dx;
        s.dx = [da, db](double t, double x) { return da(t, x) + db(t, x); };
    }
    return s;
}

inline Symbol algebra_sub(const Symbol& a, const Symbol& b) {
    Symbol s = detail::combine(a, b, [](Cplx u, Cplx v) { return u - v; }, "-");
    if (a.dx && b.dx) {
        auto da = a.dx, db = b.dx;
        s.dx = [da, db](double t, double x) { return da(t, x) - db(t, x); };
    }
    return s;
}

inline Symbol algebra_mul(const Symbol& a, const Symbol& b) {
    Symbol s = detail::combine(a, b, [](Cplx u, Cplx v) { return u * v; }, "*");
    if (a.dx && b.dx) {
        auto da = a.dx, db = b.dx, ea = a.eval, eb = b.eval;
        s.dx = [da, db, ea, eb](double t, double x) {
            return da(t, x) * eb(t, x) + ea(t, x) * db(t, x);
        };
    }
    return s;
}

inline Symbol scalar_mul(Cplx c, const Symbol& a) {
    return algebra_mul(constant_symbol(c), a);
}

}  // namespace mellin
