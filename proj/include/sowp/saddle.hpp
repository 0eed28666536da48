#pragma once

// Complex saddle points of the action
//   S(t) = 1/2 \int_0^t [p + A(t')]^2 dt' - E t,
// i.e. roots of S'(t) = 1/2 (p + A(t))^2 - E with Im t > 0.
//
// Writing u = exp(i omega t / N), A(t) = A0 (u-1)^2 (1-u^{2N}) / (8 i u^{N+1}),
// so the condition p_z + A(t) = c with c = -p_z +- i sqrt(kappa^2 + p_perp^2)
// becomes a polynomial of degree 2N+2 in u. A(t) is tau_p-periodic, and roots of
// the '-' branch are the images u -> 1/conj(u) of the '+' branch roots, so the
// roots of one polynomial give all 2N+2 saddles in the strip 0 <= Re t < tau_p:
// those with |u| < 1 directly, the others after reflection.

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "polynomial.hpp"
#include "pulse.hpp"
#include "vec3.hpp"

namespace sowp {

struct SaddlePoint {
    int mu = 0;                // 1-based, ordered by Re t
    cplx t;                    // complex time, Im t > 0
    cplx action;               // S(t)
    cplx s2;                   // S''(t)
    cplx prefactor;            // 1 / sqrt(-i S''(t))
    cplx velocity_z;           // p_z + A(t); equals +-i sqrt(kappa^2 + p_perp^2)
};

/// Thrown when the search does not produce 2N+2 distinct admissible roots.
class SaddleSearchError : public NumericalError {
public:
    SaddleSearchError(const std::string& what, std::vector<cplx> found)
        : NumericalError(what), roots(std::move(found)) {}
    std::vector<cplx> roots;
};

class DegenerateSaddleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

namespace saddle {

inline constexpr double newton_step_tol = 1e-12;
inline constexpr double residual_tol = 1e-10;
inline constexpr int max_newton_iter = 100;
inline constexpr double min_separation = 1e-6;
inline constexpr double degenerate_s2 = 1e-6;

/// \int_0^t sin(nu t') dt'
inline cplx integral_sin(double nu, cplx t) {
    if (nu == 0.0) return {0.0, 0.0};
    return (1.0 - std::cos(nu * t)) / nu;
}

/// \int_0^t cos(nu t') dt'
inline cplx integral_cos(double nu, cplx t) {
    if (nu == 0.0) return t;
    return std::sin(nu * t) / nu;
}

/// Closed-form S(t) with S(0) = 0. A and A^2 are finite sums of sinusoids.
inline cplx action(const Pulse& pulse, double energy, const Vec3& p, cplx t) {
    const auto h = pulse.harmonics();
    cplx int_a{0.0, 0.0};
    cplx int_a2{0.0, 0.0};
    for (std::size_t k = 0; k < h.size(); ++k) {
        int_a += h[k].amplitude * integral_sin(h[k].frequency, t);
        for (std::size_t l = 0; l < h.size(); ++l) {
            // sin a sin b = [cos(a-b) - cos(a+b)] / 2
            const double amp = 0.5 * h[k].amplitude * h[l].amplitude;
            int_a2 += amp * (integral_cos(h[k].frequency - h[l].frequency, t) -
                             integral_cos(h[k].frequency + h[l].frequency, t));
        }
    }
    return (0.5 * p.norm2() - energy) * t + p.z * int_a + 0.5 * int_a2;
}

/// S'(t) = 1/2 (p + A(t))^2 - E
inline cplx action_derivative(const Pulse& pulse, double energy, const Vec3& p, cplx t) {
    const cplx vz = p.z + pulse.vector_potential(t);
    return 0.5 * (vz * vz + p.perp2()) - energy;
}

/// S''(t) = (p_z + A(t)) dA/dt
inline cplx action_second_derivative(const Pulse& pulse, const Vec3& p, cplx t) {
    return -(p.z + pulse.vector_potential(t)) * pulse.electric_field(t);
}

/// 1 / sqrt(-i s2) on the principal branch (Re sqrt >= 0, Re = 0 resolved to Im > 0).
inline cplx prefactor_branch(cplx s2) {
    if (std::abs(s2) < degenerate_s2) {
        std::ostringstream msg;
        msg << "degenerate saddle: |S''| = " << std::abs(s2) << " below " << degenerate_s2;
        throw DegenerateSaddleError(msg.str());
    }
    cplx root = std::sqrt(cplx{0.0, -1.0} * s2);
    if (root.real() == 0.0 && root.imag() < 0.0) root = -root;
    return 1.0 / root;
}

/// Coefficients (ascending) of A0 (u-1)^2 (1-u^{2N}) - 8 i c u^{N+1}.
inline std::vector<cplx> saddle_polynomial(const Pulse& pulse, cplx c) {
    const int n = pulse.cycles();
    std::vector<cplx> coef(2 * n + 3, cplx{0.0, 0.0});
    const double a0 = pulse.a0();
    coef[0] += a0;
    coef[1] += -2.0 * a0;
    coef[2] += a0;
    coef[2 * n] += -a0;
    coef[2 * n + 1] += 2.0 * a0;
    coef[2 * n + 2] += -a0;
    coef[n + 1] += cplx{0.0, -8.0} * c;
    return coef;
}

namespace detail {

inline cplx time_from_u(cplx u, double omega, int n) {
    double arg = std::arg(u);
    if (arg < 0.0) arg += 2.0 * units::pi;
    return {n / omega * arg, -n / omega * std::log(std::abs(u))};
}

inline cplx wrap(cplx t, double period) {
    double re = std::fmod(t.real(), period);
    if (re < 0.0) re += period;
    if (re >= period) re = 0.0;  // -0 wrapped up by rounding
    return {re, t.imag()};
}

/// Newton on A(t) - target.
inline cplx polish(const Pulse& pulse, cplx target, cplx t) {
    for (int i = 0; i < max_newton_iter; ++i) {
        const cplx f = pulse.vector_potential(t) - target;
        const cplx df = -pulse.electric_field(t);
        if (df == cplx{0.0, 0.0}) break;
        const cplx step = f / df;
        t -= step;
        if (std::abs(step) < newton_step_tol) break;
    }
    return t;
}

}  // namespace detail

/// All 2N+2 saddles for channel energy E (< 0) and momentum p, sorted by Re t.
/// A field-free pulse (A0 = 0) has no saddle points and yields an empty list.
inline std::vector<SaddlePoint> find_saddles(const Pulse& pulse, double energy, const Vec3& p) {
    if (!(energy < 0.0)) throw DomainError("find_saddles: bound-state energy must be negative");
    if (pulse.a0() == 0.0) return {};

    const int n = pulse.cycles();
    const double omega = pulse.omega();
    const double period = pulse.duration();
    const double big_k = std::sqrt(-2.0 * energy + p.perp2());
    const cplx c_plus{-p.z, big_k};

    const auto coef = saddle_polynomial(pulse, c_plus);
    const auto u_roots = poly::roots(coef);

    std::vector<cplx> times;
    times.reserve(u_roots.size());
    for (const cplx u : u_roots) {
        const bool inside = std::abs(u) < 1.0;
        const cplx target = inside ? c_plus : std::conj(c_plus);
        const cplx u_in = inside ? u : 1.0 / std::conj(u);
        cplx t = detail::time_from_u(u_in, omega, n);
        t = detail::wrap(detail::polish(pulse, target, t), period);
        times.push_back(t);
    }
    std::sort(times.begin(), times.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });

    auto fail = [&](const std::string& why) {
        std::ostringstream msg;
        msg << "saddle search failed (" << why << ") for E=" << energy << " p=(" << p.x << ","
            << p.y << "," << p.z << ") N=" << n << "; roots found:";
        for (const auto& t : times) msg << " " << t;
        throw SaddleSearchError(msg.str(), times);
    };

    const std::size_t expected = static_cast<std::size_t>(2 * n + 2);
    if (times.size() != expected) fail("wrong root count");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i].imag() > 0.0)) fail("root with Im t <= 0");
        for (std::size_t j = 0; j < i; ++j) {
            // distance modulo the period
            cplx d = times[i] - times[j];
            const double dre = std::min(std::abs(d.real()), period - std::abs(d.real()));
            if (std::hypot(dre, d.imag()) <= min_separation) fail("coincident roots");
        }
        if (std::abs(action_derivative(pulse, energy, p, times[i])) >= residual_tol) {
            fail("residual above tolerance");
        }
    }

    std::vector<SaddlePoint> out;
    out.reserve(times.size());
    int mu = 0;
    for (const cplx t : times) {
        SaddlePoint sp;
        sp.mu = ++mu;
        sp.t = t;
        sp.velocity_z = p.z + pulse.vector_potential(t);
        sp.action = action(pulse, energy, p, t);
        sp.s2 = action_second_derivative(pulse, p, t);
        sp.prefactor = prefactor_branch(sp.s2);
        out.push_back(sp);
    }
    return out;
}

}  // namespace saddle
}  // namespace sowp
