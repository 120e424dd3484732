// Iterative radix-2 FFT. Grid sizes in this project are powers of two
// by construction (n <= 4096 at desk scale), so no other radices are
// needed. Forward uses the e^{-2 pi i jk/n} kernel; inverse divides
// by n.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mellin/symbol.hpp"

namespace mellin {

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline void fft_pow2(std::vector<Cplx>& v, bool inverse) {
    const size_t n = v.size();
    if (!is_pow2(static_cast<int>(n)))
        throw Error("fft_pow2: length must be a power of two");
    // bit-reversal permutation
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const Cplx wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            Cplx w(1.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const Cplx u = v[i + k];
                const Cplx t = v[i + k + len / 2] * w;
                v[i + k] = u + t;
                v[i + k + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
    if (inverse)
        for (Cplx& z : v) z /= static_cast<double>(n);
}

}  // namespace mellin
