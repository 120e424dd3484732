// A log-uniform grid on the half-line paired with its discrete
// frequency dual: t_k = exp(u_min + k du) with u = ln t, and the
// centered frequencies x_j = (j - n/2) dx, dx = 2 pi / (n du). This is
// the E-conjugated picture in which a Mellin operator becomes a
// Fourier one.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "mellin/fft.hpp"
#include "mellin/symbol.hpp"

namespace mellin {

struct LogGrid {
    int n = 0;
    double u_min = 0.0, u_max = 0.0;

    static LogGrid make(int n, double u_min, double u_max) {
        if (n < 8 || !is_pow2(n))
            throw Error("LogGrid: n must be a power of two, at least 8");
        if (!(u_max > u_min)) throw Error("LogGrid: need u_max > u_min");
        LogGrid g;
        g.n = n;
        g.u_min = u_min;
        g.u_max = u_max;
        return g;
    }

    double du() const { return (u_max - u_min) / n; }
    double dx() const { return 2.0 * M_PI / (n * du()); }  // du*dx = 2 pi / n
    double u(int k) const { return u_min + k * du(); }
    double t(int k) const { return std::exp(u(k)); }
    double xfreq(int j) const { return (j - n / 2) * dx(); }

    std::vector<double> t_points() const {
        std::vector<double> ts(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) ts[static_cast<size_t>(k)] = t(k);
        return ts;
    }
    std::vector<double> x_freqs() const {
        std::vector<double> xs(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) xs[static_cast<size_t>(j)] = xfreq(j);
        return xs;
    }
};

// Samples (f(t_k))_k, i.e. (Ef)(u_k) on the uniform u-grid.
inline std::vector<Cplx> log_sample(const std::function<Cplx(double)>& f,
                                    const LogGrid& g) {
    std::vector<Cplx> v(static_cast<size_t>(g.n));
    for (int k = 0; k < g.n; ++k) v[static_cast<size_t>(k)] = f(g.t(k));
    return v;
}

// Symmetric widening of the u-range until |f| at both boundaries drops
// below the floor. Truncation of the line is our artifact; this keeps
// the periodization error of the discrete transform under control.
inline LogGrid widen_until_decayed(const std::function<Cplx(double)>& f, int n,
                                   double half_range = 8.0, double floor = 1e-12,
                                   int max_widenings = 12) {
    double R = half_range;
    for (int i = 0; i < max_widenings; ++i) {
        if (std::abs(f(std::exp(-R))) < floor && std::abs(f(std::exp(R))) < floor)
            break;
        R *= 2.0;
    }
    return LogGrid::make(n, -R, R);
}

}  // namespace mellin
