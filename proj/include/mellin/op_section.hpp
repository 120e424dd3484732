// Finite sections of Mellin PDOs. Row k of the section is row k of
// the frequency-multiplier matrix with the x-section a(t_k, .): left
// (Kohn-Nirenberg) quantization in log coordinates, one inverse FFT
// per output row. Singular-value probes serve as the compactness
// proxy; the proxy threshold lives with the Fredholm pipeline.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mellin/log_grid.hpp"
#include "mellin/mellin_transform.hpp"
#include "mellin/symbol.hpp"

namespace mellin {

struct OperatorSection {
    LogGrid grid;
    Eigen::MatrixXcd entries;
    std::string symbol_label;
};

// M[k][l] = (-1)^{k-l} z^{(k)}_{(k-l) mod n} where z^{(k)} is the
// inverse DFT of the row symbol (a(t_k, x_j))_j. Equivalent to
// invF diag(a(t_k, .)) F row by row; the u_min phases cancel.
inline OperatorSection assemble_op_section(const Symbol& a, const LogGrid& g) {
    OperatorSection sec;
    sec.grid = g;
    sec.symbol_label = a.label;
    const int n = g.n;
    sec.entries.resize(n, n);
    std::vector<Cplx> row(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = g.t(k);
        for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] = a.eval(t, g.xfreq(j));
        fft_pow2(row, true);  // z_m = (1/n) sum_j w_j e^{2 pi i jm/n}
        for (int l = 0; l < n; ++l) {
            const int m = ((k - l) % n + n) % n;
            const Cplx z = row[static_cast<size_t>(m)];
            sec.entries(k, l) = ((k - l) & 1) ? -z : z;
        }
    }
    return sec;
}

inline OperatorSection multiplier_section(const std::function<Cplx(double)>& a,
                                          const LogGrid& g,
                                          std::string label = "multiplier") {
    Symbol s;
    s.eval = [a](double, double x) { return a(x); };
    s.label = std::move(label);
    return assemble_op_section(s, g);
}

inline OperatorSection identity_section(const LogGrid& g) {
    OperatorSection sec;
    sec.grid = g;
    sec.symbol_label = "identity";
    sec.entries = Eigen::MatrixXcd::Identity(g.n, g.n);
    return sec;
}

// Largest singular value by power iteration on M M^H, deterministic
// start, tolerance on successive sigma estimates.
inline double op_norm_estimate(const OperatorSection& sec, double tol = 1e-8,
                               int max_iter = 20000) {
    const Eigen::MatrixXcd& M = sec.entries;
    const int n = static_cast<int>(M.rows());
    std::mt19937 rng(0x5eed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = Cplx(gauss(rng), gauss(rng));
    v.normalize();
    double sigma = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXcd y = M * v;
        const double s = y.norm();
        if (s == 0.0) return 0.0;
        Eigen::VectorXcd z = M.adjoint() * y;
        const double zn = z.norm();
        if (zn == 0.0) return s;
        v = z / zn;
        if (std::abs(s - sigma) <= tol * std::max(1.0, s)) return s;
        sigma = s;
    }
    throw NonConvergence("op_norm_estimate: power iteration did not settle; last gap " +
                         std::to_string(sigma));
}

// Leading k_max singular values, descending. Full dense SVD: desk
// sizes only.
inline std::vector<double> singular_decay(const OperatorSection& sec, int k_max) {
    if (k_max < 1 || k_max > sec.grid.n)
        throw Error("singular_decay: k_max out of range");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(sec.entries);
    const auto& s = svd.singularValues();
    std::vector<double> out(static_cast<size_t>(k_max));
    for (int i = 0; i < k_max; ++i) out[static_cast<size_t>(i)] = s(i);
    return out;
}

inline std::vector<double> all_singular_values(const OperatorSection& sec) {
    return singular_decay(sec, sec.grid.n);
}

// Op(a) Op(b) - Op(ab) as a section.
inline OperatorSection semi_commutator_residual(const Symbol& a, const Symbol& b,
                                                const LogGrid& g) {
    OperatorSection A = assemble_op_section(a, g);
    OperatorSection B = assemble_op_section(b, g);
    OperatorSection P = assemble_op_section(algebra_mul(a, b), g);
    OperatorSection R;
    R.grid = g;
    R.symbol_label = "semi-commutator(" + a.label + ", " + b.label + ")";
    R.entries = A.entries * B.entries - P.entries;
    return R;
}

}  // namespace mellin
