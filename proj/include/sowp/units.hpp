#pragma once

// Atomic units <-> laboratory units. Everything inside the library is in
// atomic units; these conversions are only used at the I/O boundary.

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace sowp::units {

inline constexpr double pi = std::numbers::pi;

inline constexpr double fs_per_au_time = 2.418884e-2;
inline constexpr double speed_of_light_cm_s = 2.99792458e10;
inline constexpr double au_intensity_w_cm2 = 3.50945e16;
inline constexpr double hartree_ev = 27.211386;
inline constexpr double hartree_cm1 = 219474.63;

inline constexpr double fs_to_au(double t_fs) { return t_fs / fs_per_au_time; }
inline constexpr double au_to_fs(double t_au) { return t_au * fs_per_au_time; }

inline constexpr double ev_to_au(double e_ev) { return e_ev / hartree_ev; }
inline constexpr double au_to_ev(double e_au) { return e_au * hartree_ev; }

inline constexpr double cm1_to_au(double e_cm1) { return e_cm1 / hartree_cm1; }
inline constexpr double au_to_cm1(double e_au) { return e_au * hartree_cm1; }

/// omega = 2 pi c / lambda, in atomic units of angular frequency.
inline double wavelength_to_omega(double wavelength_nm) {
    if (!(wavelength_nm > 0.0)) throw DomainError("wavelength must be positive");
    const double lambda_cm = wavelength_nm * 1e-7;
    const double omega_per_s = 2.0 * pi * speed_of_light_cm_s / lambda_cm;
    return omega_per_s * fs_per_au_time * 1e-15;
}

inline double omega_to_wavelength(double omega_au) {
    if (!(omega_au > 0.0)) throw DomainError("angular frequency must be positive");
    const double omega_per_s = omega_au / (fs_per_au_time * 1e-15);
    return 2.0 * pi * speed_of_light_cm_s / omega_per_s * 1e7;
}

/// Peak field amplitude F0 = sqrt(I / I_au).
inline double intensity_to_field(double intensity_w_cm2) {
    if (!(intensity_w_cm2 >= 0.0)) throw DomainError("intensity must be non-negative");
    return std::sqrt(intensity_w_cm2 / au_intensity_w_cm2);
}

inline double field_to_intensity(double field_au) {
    if (!(field_au >= 0.0)) throw DomainError("field amplitude must be non-negative");
    return field_au * field_au * au_intensity_w_cm2;
}

/// tau_b = 1 / (c * splitting), returned in fs.
inline double splitting_to_beat_period(double splitting_cm1) {
    if (!(splitting_cm1 > 0.0)) throw DomainError("fine-structure splitting must be positive");
    return 1e15 / (speed_of_light_cm_s * splitting_cm1);
}

inline double beat_period_to_splitting(double period_fs) {
    if (!(period_fs > 0.0)) throw DomainError("beat period must be positive");
    return 1e15 / (speed_of_light_cm_s * period_fs);
}

}  // namespace sowp::units
