// Discrete Mellin transform pair on a LogGrid and the frequency
// multiplier built from it. In log coordinates the transform is the
// Riemann-sum Fourier transform (M f)(x) = int (Ef)(u) e^{-ixu} du,
// realized by one FFT with centering twists and the u_min phase; the
// inverse is its exact algebraic inverse and coincides with the
// quadrature rule for (1/2 pi) int g(x) e^{ixu} dx.
#pragma once

#include <functional>
#include <vector>

#include "mellin/fft.hpp"
#include "mellin/log_grid.hpp"

namespace mellin {

inline std::vector<Cplx> mellin_forward(std::vector<Cplx> f, const LogGrid& g) {
    if (static_cast<int>(f.size()) != g.n)
        throw Error("mellin_forward: length mismatch");
    for (int k = 1; k < g.n; k += 2) f[static_cast<size_t>(k)] = -f[static_cast<size_t>(k)];
    fft_pow2(f, false);
    const double du = g.du();
    for (int j = 0; j < g.n; ++j) {
        const double phase = -g.xfreq(j) * g.u_min;
        f[static_cast<size_t>(j)] *= du * Cplx(std::cos(phase), std::sin(phase));
    }
    return f;
}

inline std::vector<Cplx> mellin_inverse(std::vector<Cplx> h, const LogGrid& g) {
    if (static_cast<int>(h.size()) != g.n)
        throw Error("mellin_inverse: length mismatch");
    for (int j = 0; j < g.n; ++j) {
        const double phase = g.xfreq(j) * g.u_min;
        h[static_cast<size_t>(j)] *= Cplx(std::cos(phase), std::sin(phase));
    }
    fft_pow2(h, true);
    const double du = g.du();
    for (int k = 0; k < g.n; ++k) {
        h[static_cast<size_t>(k)] /= du;
        if (k & 1) h[static_cast<size_t>(k)] = -h[static_cast<size_t>(k)];
    }
    return h;
}

// M^{-1} diag(a(x_j)) M f: diagonal in frequency.
inline std::vector<Cplx> apply_multiplier(const std::function<Cplx(double)>& a,
                                          std::vector<Cplx> f, const LogGrid& g) {
    std::vector<Cplx> h = mellin_forward(std::move(f), g);
    for (int j = 0; j < g.n; ++j) h[static_cast<size_t>(j)] *= a(g.xfreq(j));
    return mellin_inverse(std::move(h), g);
}

// Discrete Plancherel: |f|_2 in L^2(R+, dmu) corresponds to
// sqrt(du) |fvec|_2 and to sqrt(dx/2pi) |M f|_2.
inline double grid_l2_norm(const std::vector<Cplx>& f, const LogGrid& g) {
    double s = 0.0;
    for (const Cplx& z : f) s += std::norm(z);
    return std::sqrt(s * g.du());
}

inline double freq_l2_norm(const std::vector<Cplx>& h, const LogGrid& g) {
    double s = 0.0;
    for (const Cplx& z : h) s += std::norm(z);
    return std::sqrt(s * g.dx() / (2.0 * M_PI));
}

}  // namespace mellin
