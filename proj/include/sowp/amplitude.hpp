#pragma once

// Saddle-point detachment amplitude
//   A_p^{jm} = -(2 pi)^{3/2} B sum_mu sum_{m_l m_s} (+-)^l C^{jm}_{l m_l s m_s}
//              Y_{l m_l}(p^_mu) chi_{s m_s} exp[i S(t_mu)] / sqrt(-i S''(t_mu)),
// kept resolved in the final electron spin projection m_s.
//
// The direction p^_mu is the complex velocity v_mu = p + A(t_mu) divided by a
// continuation of |v_mu|; at a saddle v_mu . v_mu = 2 E_j = -kappa_j^2. Two
// equivalent conventions are supported:
//   continued:   |v| -> +i kappa for every saddle and (+-) = +1. The alternation
//                of successive contributions is carried by v_z itself.
//   alternating: |v| -> +i kappa sign(Im v_z), so that p^_z is real and positive,
//                with the explicit factor (+-) = (-1)^(mu-1).
// Both reproduce the solid-harmonic form r Y_lm(v)/kappa of the bound-state
// momentum wave function near its pole, up to a p-dependent sign common to all
// channels at that momentum.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "angular.hpp"
#include "pulse.hpp"
#include "saddle.hpp"
#include "species.hpp"
#include "vec3.hpp"

namespace sowp {

enum class BranchConvention { continued, alternating };

/// One of the six 2P_j, m states of the residual atom.
struct AtomicState {
    Level level;
    int two_m;
};

inline constexpr std::array<AtomicState, 6> atomic_states{{{Level::j3_2, 3},
                                                           {Level::j3_2, 1},
                                                           {Level::j3_2, -1},
                                                           {Level::j3_2, -3},
                                                           {Level::j1_2, 1},
                                                           {Level::j1_2, -1}}};

inline constexpr int state_index(Level level, int two_m) {
    if (level == Level::j3_2) return (3 - two_m) / 2;
    return two_m > 0 ? 4 : 5;
}

/// Final electron spin projections, doubled: index 0 -> -1/2, 1 -> +1/2.
inline constexpr std::array<int, 2> spin_projections{-1, 1};

/// (+-)^l for the mu-th saddle (1-based).
inline int alternating_sign(int mu, int l) {
    if (mu < 1) throw DomainError("alternating_sign: mu must be >= 1");
    if (l % 2 == 0) return 1;
    return (mu - 1) % 2 == 0 ? 1 : -1;
}

/// Saddle sums sum_mu (+-) Y_{1 m_l}(p^_mu) exp(iS) / sqrt(-iS''), indexed m_l + 1.
using SaddleSums = std::array<cplx, 3>;

/// Sums over the saddles with Re t <= re_t_cut.
inline SaddleSums saddle_sums(const std::vector<SaddlePoint>& saddles, const Vec3& p, double kappa,
                              BranchConvention convention,
                              double re_t_cut = std::numeric_limits<double>::infinity()) {
    SaddleSums out{};
    const cplx i_kappa{0.0, kappa};
    for (const auto& s : saddles) {
        if (s.t.real() > re_t_cut) continue;
        cplx norm = i_kappa;
        double sign = 1.0;
        if (convention == BranchConvention::alternating) {
            norm = s.velocity_z.imag() < 0.0 ? -i_kappa : i_kappa;
            sign = alternating_sign(s.mu, 1);
        }
        const angular::CVec3 v{cplx{p.x}, cplx{p.y}, s.velocity_z};
        const cplx weight = sign * std::exp(cplx{0.0, 1.0} * s.action) * s.prefactor;
        for (int m_l = -1; m_l <= 1; ++m_l) {
            out[m_l + 1] += weight * angular::sph_harmonic_l1(m_l, v, norm);
        }
    }
    return out;
}

/// Amplitudes for one photoelectron momentum: value[state][spin index].
struct AmplitudeSet {
    Vec3 p;
    std::array<std::array<cplx, 2>, 6> value{};

    cplx operator()(Level level, int two_m, int two_ms) const {
        return value[state_index(level, two_m)][two_ms > 0 ? 1 : 0];
    }
};

/// -(2 pi)^{3/2} B C^{jm}_{1 m_l 1/2 m_s} times the m_l saddle sum.
inline cplx channel_amplitude(const Species& species, Level level, int two_m, int two_ms,
                              const SaddleSums& sums) {
    if (species.l != 1) throw DomainError("only l = 1 (np shell) is implemented");
    if (two_ms != 1 && two_ms != -1) throw DomainError("m_s must be +-1/2");
    const int two_ml = two_m - two_ms;
    if (two_ml % 2 != 0 || std::abs(two_ml) > 2) return {0.0, 0.0};
    const int m_l = two_ml / 2;
    const double cg = angular::cg_p_shell(two_j(level), two_m, m_l, two_ms);
    if (cg == 0.0) return {0.0, 0.0};
    static const double norm = -std::pow(2.0 * units::pi, 1.5);
    return norm * species.asymptotic_constant(level) * cg * sums[m_l + 1];
}

/// A_p^{jm} for one (j, m, m_s) from precomputed saddles of channel j.
inline cplx detachment_amplitude(const Species& species, Level level, int two_m, int two_ms,
                                 const Vec3& p, const std::vector<SaddlePoint>& saddles,
                                 BranchConvention convention = BranchConvention::continued) {
    return channel_amplitude(species, level, two_m, two_ms,
                             saddle_sums(saddles, p, species.kappa(level), convention));
}

/// All channel amplitudes at momentum p.
inline AmplitudeSet amplitudes(const Pulse& pulse, const Species& species, const Vec3& p,
                               BranchConvention convention = BranchConvention::continued,
                               double re_t_cut = std::numeric_limits<double>::infinity()) {
    AmplitudeSet out;
    out.p = p;
    for (const Level level : {Level::j3_2, Level::j1_2}) {
        const auto saddles = saddle::find_saddles(pulse, species.energy(level), p);
        const auto sums = saddle_sums(saddles, p, species.kappa(level), convention, re_t_cut);
        for (const auto& st : atomic_states) {
            if (st.level != level) continue;
            for (int s = 0; s < 2; ++s) {
                out.value[state_index(level, st.two_m)][s] =
                    channel_amplitude(species, level, st.two_m, spin_projections[s], sums);
            }
        }
    }
    return out;
}

}  // namespace sowp
