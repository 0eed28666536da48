#pragma once

// Linearly polarized (along z) sin^2-envelope pulse
//   A(t) = A0 sin^2(omega t / 2N) sin(omega t),  0 <= t <= tau_p = 2 pi N / omega.
// For complex t the equivalent three-sinusoid form
//   A(t) = A0/2 [sin(w t) - 1/2 sin((1+1/N) w t) - 1/2 sin((1-1/N) w t)]
// is used; it is an entire function, so the saddle-point search can work with it
// anywhere in the complex plane.

#include <array>
#include <complex>

#include "error.hpp"
#include "units.hpp"

namespace sowp {

using cplx = std::complex<double>;

/// One term a sin(nu t) of the vector potential.
struct Sinusoid {
    double amplitude;
    double frequency;
};

class Pulse {
public:
    /// FWHM of the intensity of a sin^2 pulse, as a fraction of its total length.
    static constexpr double fwhm_fraction = 0.364;

    Pulse(double omega, int n_cycles, double a0) : omega_(omega), n_cycles_(n_cycles), a0_(a0) {
        if (!(omega > 0.0)) throw DomainError("pulse: carrier frequency must be positive");
        if (n_cycles < 1) throw DomainError("pulse: number of cycles must be >= 1");
        if (!(a0 >= 0.0)) throw DomainError("pulse: A0 must be non-negative");
    }

    /// Builds the pulse from laboratory parameters; A0 follows from F0 = A0 omega.
    static Pulse from_lab(double wavelength_nm, int n_cycles, double intensity_w_cm2) {
        const double omega = units::wavelength_to_omega(wavelength_nm);
        const double f0 = units::intensity_to_field(intensity_w_cm2);
        return Pulse(omega, n_cycles, f0 / omega);
    }

    double omega() const { return omega_; }
    int cycles() const { return n_cycles_; }
    double a0() const { return a0_; }
    double peak_field() const { return a0_ * omega_; }

    /// tau_p in atomic units.
    double duration() const { return 2.0 * units::pi * n_cycles_ / omega_; }
    double duration_fs() const { return units::au_to_fs(duration()); }

    /// FWHM of the intensity, tau~_p, in fs.
    double fwhm_fs() const { return fwhm_fraction * duration_fs(); }

    /// gamma = omega kappa / F0.
    double keldysh_gamma(double kappa) const {
        if (!(kappa > 0.0)) throw DomainError("keldysh_gamma: kappa must be positive");
        if (!(peak_field() > 0.0)) throw DomainError("keldysh_gamma: zero field");
        return omega_ * kappa / peak_field();
    }

    std::array<Sinusoid, 3> harmonics() const {
        const double inv_n = 1.0 / n_cycles_;
        return {{{0.5 * a0_, omega_},
                 {-0.25 * a0_, omega_ * (1.0 + inv_n)},
                 {-0.25 * a0_, omega_ * (1.0 - inv_n)}}};
    }

    /// Physical vector potential on the real axis; zero outside [0, tau_p].
    double vector_potential(double t) const {
        if (t <= 0.0 || t >= duration()) return 0.0;
        const double env = std::sin(omega_ * t / (2.0 * n_cycles_));
        return a0_ * env * env * std::sin(omega_ * t);
    }

    /// Analytic continuation of A(t).
    cplx vector_potential(cplx t) const {
        cplx a{0.0, 0.0};
        for (const auto& h : harmonics()) a += h.amplitude * std::sin(h.frequency * t);
        return a;
    }

    /// F(t) = -dA/dt on the real axis; zero outside [0, tau_p].
    double electric_field(double t) const {
        if (t <= 0.0 || t >= duration()) return 0.0;
        return electric_field(cplx{t, 0.0}).real();
    }

    cplx electric_field(cplx t) const {
        cplx f{0.0, 0.0};
        for (const auto& h : harmonics()) f -= h.amplitude * h.frequency * std::cos(h.frequency * t);
        return f;
    }

private:
    double omega_;
    int n_cycles_;
    double a0_;
};

}  // namespace sowp
