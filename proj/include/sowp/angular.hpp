#pragma once

// Angular-momentum algebra for the np valence electron: Clebsch-Gordan
// coefficients (Condon-Shortley phases) and l = 1 spherical harmonics continued
// to complex direction vectors. Half-integer quantum numbers are passed doubled.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>

#include "error.hpp"
#include "units.hpp"

namespace sowp::angular {

using cplx = std::complex<double>;

namespace detail {
inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
}  // namespace detail

/// <j1 m1; j2 m2 | J M>, all arguments doubled (2j, 2m). Zero outside the
/// selection rules, including M != m1 + m2.
inline double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
    if (tM != tm1 + tm2) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
    if ((tj1 + tm1) % 2 || (tj2 + tm2) % 2 || (tJ + tM) % 2) return 0.0;
    if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || (tj1 + tj2 + tJ) % 2) return 0.0;

    using detail::factorial;
    const int a = (tj1 + tj2 - tJ) / 2;
    const int b = (tj1 - tm1) / 2;
    const int c = (tj2 + tm2) / 2;
    const int d = (tJ - tj2 + tm1) / 2;
    const int e = (tJ - tj1 - tm2) / 2;

    const double pre =
        std::sqrt((tJ + 1) * factorial((tJ + tj1 - tj2) / 2) * factorial((tJ - tj1 + tj2) / 2) *
                  factorial(a) / factorial((tj1 + tj2 + tJ) / 2 + 1)) *
        std::sqrt(factorial((tJ + tM) / 2) * factorial((tJ - tM) / 2) * factorial(b) *
                  factorial((tj1 + tm1) / 2) * factorial((tj2 - tm2) / 2) * factorial(c));

    double sum = 0.0;
    for (int k = 0; k <= a; ++k) {
        if (b - k < 0 || c - k < 0 || d + k < 0 || e + k < 0) continue;
        const double den = factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k) *
                           factorial(d + k) * factorial(e + k);
        sum += ((k % 2) ? -1.0 : 1.0) / den;
    }
    return pre * sum;
}

/// C^{j m}_{l m_l, 1/2 m_s} for the p shell (l = 1); j, m, m_s doubled.
inline double cg_p_shell(int two_j, int two_m, int m_l, int two_ms) {
    return clebsch_gordan(2, 2 * m_l, 1, two_ms, two_j, two_m);
}

/// Complex 3-vector, e.g. the velocity p + A(t) at a complex saddle time.
using CVec3 = std::array<cplx, 3>;

/// Y_{1 m_l}(v / norm): the solid harmonic r Y_{1 m_l}(r^) evaluated at v and
/// divided by `norm`, the chosen continuation of |v|. For real unit v and
/// norm = 1 this is the ordinary spherical harmonic.
inline cplx sph_harmonic_l1(int m_l, const CVec3& v, cplx norm) {
    if (norm == cplx{0.0, 0.0}) throw DomainError("sph_harmonic_l1: zero norm");
    static const double c0 = std::sqrt(3.0 / (4.0 * units::pi));
    static const double c1 = std::sqrt(3.0 / (8.0 * units::pi));
    const cplx i{0.0, 1.0};
    switch (m_l) {
        case 0: return c0 * v[2] / norm;
        case 1: return -c1 * (v[0] + i * v[1]) / norm;
        case -1: return c1 * (v[0] - i * v[1]) / norm;
        default: throw DomainError("sph_harmonic_l1: |m_l| > 1");
    }
}

}  // namespace sowp::angular
