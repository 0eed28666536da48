#pragma once

// Field-free evolution of the residual atom and the pump-probe alignment signal
//   S(t) = S_mean + dS cos(omega_b t + beta),
//   S_mean = (3 r(3/2,3/2) + 5 r(1/2,1/2) + 7 r(3/2,1/2)) / 15,
//   dS = sqrt(32)/15 |r_{3/2 1/2, 1/2 1/2}|,
// with r the density matrix normalized by the total detachment probability.

#include <cmath>
#include <complex>
#include <vector>

#include "angular.hpp"
#include "densmat.hpp"
#include "species.hpp"
#include "units.hpp"

namespace sowp {

/// Atomic level energy relative to 2P_{3/2}, a.u.
inline double atomic_level_energy(const Species& species, Level level) {
    return level == Level::j3_2 ? 0.0 : species.beat_frequency();
}

/// rho(t)_{ab} = rho_{ab} exp(i (E_b - E_a) t), t in fs.
inline DensityMatrix evolve_density(const DensityMatrix& rho, const Species& species, double t_fs) {
    const double t = units::fs_to_au(t_fs);
    Matrix6 m = rho.matrix();
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            const double de = atomic_level_energy(species, atomic_states[b].level) -
                              atomic_level_energy(species, atomic_states[a].level);
            if (de != 0.0) m[a][b] *= std::polar(1.0, de * t);
        }
    }
    return DensityMatrix(m);
}

struct SignalParameters {
    double mean = 0.0;       // S_mean
    double amplitude = 0.0;  // dS
    double contrast() const { return amplitude / mean; }
};

/// Offset and beat amplitude from a normalized density matrix.
inline SignalParameters signal_parameters(const DensityMatrix& normalized) {
    SignalParameters s;
    s.mean = (3.0 * normalized.population(Level::j3_2, 3) + 5.0 * normalized.population(Level::j1_2, 1) +
              7.0 * normalized.population(Level::j3_2, 1)) /
             15.0;
    s.amplitude = std::sqrt(32.0) / 15.0 * std::abs(normalized.coherence_element());
    return s;
}

/// Pure state left by detaching only m_l = 0 (m_s = +1/2) electrons: the m = 1/2
/// block is the outer product of the LS-coupling coefficients, populations
/// (0, 2/3, 1/3) and g = 1.
inline DensityMatrix pure_state_limit() {
    Matrix6 m{};
    const int a = state_index(Level::j3_2, 1);
    const int b = state_index(Level::j1_2, 1);
    const double ca = angular::cg_p_shell(3, 1, 0, 1);
    const double cb = angular::cg_p_shell(1, 1, 0, 1);
    m[a][a] = ca * ca;
    m[b][b] = cb * cb;
    m[a][b] = ca * cb;
    m[b][a] = ca * cb;
    return DensityMatrix(m);
}

struct SignalTrace {
    std::vector<double> t_fs;
    std::vector<double> signal;
    double mean = 0.0;
    double amplitude = 0.0;
    double beta = 0.0;
    double omega_b = 0.0;  // rad / fs
};

inline SignalTrace signal_trace(const DensityMatrix& normalized, const Species& species,
                                const std::vector<double>& t_fs, double beta = 0.0) {
    const auto par = signal_parameters(normalized);
    SignalTrace tr;
    tr.t_fs = t_fs;
    tr.mean = par.mean;
    tr.amplitude = par.amplitude;
    tr.beta = beta;
    tr.omega_b = species.beat_frequency() / units::fs_per_au_time;
    tr.signal.reserve(t_fs.size());
    for (double t : t_fs) tr.signal.push_back(tr.mean + tr.amplitude * std::cos(tr.omega_b * t + beta));
    return tr;
}

/// n evenly spaced samples on [t0, t1].
inline std::vector<double> linspace(double t0, double t1, int n) {
    std::vector<double> v;
    if (n <= 0) return v;
    if (n == 1) return {t0};
    v.reserve(n);
    for (int i = 0; i < n; ++i) v.push_back(t0 + (t1 - t0) * i / (n - 1));
    return v;
}

}  // namespace sowp
