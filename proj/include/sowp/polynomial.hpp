#pragma once

// Complex polynomial roots by Laguerre's method with deflation, followed by
// Newton polishing against the undeflated polynomial. Coefficients are stored
// in ascending order: p(x) = c[0] + c[1] x + ... + c[n] x^n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "error.hpp"

namespace sowp::poly {

using cplx = std::complex<double>;

struct HornerResult {
    cplx value;
    cplx first;
    cplx second;
    double error_bound;  // rounding-error estimate of `value`
};

inline HornerResult horner(std::span<const cplx> c, cplx x) {
    const int n = static_cast<int>(c.size()) - 1;
    cplx b = c[n], d{0.0, 0.0}, f{0.0, 0.0};
    double err = std::abs(b);
    const double ax = std::abs(x);
    for (int j = n - 1; j >= 0; --j) {
        f = f * x + d;
        d = d * x + b;
        b = b * x + c[j];
        err = err * ax + std::abs(b);
    }
    return {b, d, 2.0 * f, err * 1e-15};
}

inline cplx evaluate(std::span<const cplx> c, cplx x) { return horner(c, x).value; }

/// Single root from the starting point x. Returns the converged root.
inline cplx laguerre(std::span<const cplx> c, cplx x, int max_iter = 200) {
    static constexpr double frac[] = {0.0, 0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0};
    const double m = static_cast<double>(c.size() - 1);
    for (int iter = 1; iter <= max_iter; ++iter) {
        const auto h = horner(c, x);
        if (std::abs(h.value) <= h.error_bound) return x;
        const cplx g = h.first / h.value;
        const cplx g2 = g * g;
        const cplx hh = g2 - h.second / h.value;
        const cplx sq = std::sqrt((m - 1.0) * (m * hh - g2));
        cplx gp = g + sq;
        const cplx gm = g - sq;
        if (std::abs(gp) < std::abs(gm)) gp = gm;
        const cplx dx = std::abs(gp) > 0.0 ? m / gp
                                           : std::polar(1.0 + std::abs(x), static_cast<double>(iter));
        const cplx x1 = x - dx;
        if (x1 == x) return x;
        // Break limit cycles with an occasional fractional step.
        if (iter % 10 != 0) x = x1;
        else x -= frac[(iter / 10) % 9] * dx;
    }
    return x;
}

inline cplx newton_polish(std::span<const cplx> c, cplx x, int max_iter = 20) {
    for (int i = 0; i < max_iter; ++i) {
        const auto h = horner(c, x);
        if (h.first == cplx{0.0, 0.0}) break;
        const cplx dx = h.value / h.first;
        x -= dx;
        if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

/// All roots of the polynomial. The leading coefficient must be non-zero.
inline std::vector<cplx> roots(std::span<const cplx> coeffs) {
    if (coeffs.size() < 2) throw DomainError("roots: polynomial of degree < 1");
    if (coeffs.back() == cplx{0.0, 0.0}) throw DomainError("roots: zero leading coefficient");
    const std::size_t n = coeffs.size() - 1;
    std::vector<cplx> work(coeffs.begin(), coeffs.end());
    std::vector<cplx> out;
    out.reserve(n);
    for (std::size_t deg = n; deg >= 1; --deg) {
        std::span<const cplx> cur(work.data(), deg + 1);
        cplx x = laguerre(cur, cplx{0.0, 0.0});
        x = newton_polish(coeffs, x);
        out.push_back(x);
        // Synthetic division by (z - x).
        std::vector<cplx> q(deg);
        q[deg - 1] = work[deg];
        for (std::size_t j = deg - 1; j >= 1; --j) q[j - 1] = work[j] + x * q[j];
        work = std::move(q);
    }
    return out;
}

}  // namespace sowp::poly
