#pragma once

// Residual-atom density matrix
//   rho_{j'm' jm} = sum_{m_s} \int conj(A^{j'm'}_{p m_s}) A^{jm}_{p m_s} d^3p / (2 pi)^3
// and the degree of spin-orbit coherence
//   g = |rho_{3/2 1/2, 1/2 1/2}| / sqrt(rho^{(3/2,1/2)} rho^{(1/2,1/2)}).
// The photoelectron spin is traced out incoherently.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "amplitude.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace sowp {

using Matrix6 = std::array<std::array<cplx, 6>, 6>;

class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(const Matrix6& m) : m_(m) {}

    /// rho_{j'm' jm}
    cplx operator()(Level lp, int two_mp, Level l, int two_m) const {
        return m_[state_index(lp, two_mp)][state_index(l, two_m)];
    }
    cplx element(int a, int b) const { return m_[a][b]; }
    const Matrix6& matrix() const { return m_; }

    /// rho^{(j,m)}
    double population(Level level, int two_m) const {
        return m_[state_index(level, two_m)][state_index(level, two_m)].real();
    }

    /// rho_{3/2 1/2, 1/2 1/2}
    cplx coherence_element() const { return (*this)(Level::j3_2, 1, Level::j1_2, 1); }

    /// w = sum_{jm} rho^{(j,m)}
    double total_probability() const {
        double w = 0.0;
        for (int a = 0; a < 6; ++a) w += m_[a][a].real();
        return w;
    }

    /// rho / w. Throws NumericalError if w <= 0.
    DensityMatrix normalized() const {
        const double w = total_probability();
        if (!(w > 0.0)) throw NumericalError("density matrix: total probability w <= 0");
        Matrix6 n = m_;
        for (auto& row : n)
            for (auto& x : row) x /= w;
        return DensityMatrix(n);
    }

    double max_hermiticity_error() const {
        double e = 0.0;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) e = std::max(e, std::abs(m_[a][b] - std::conj(m_[b][a])));
        return e;
    }

    /// max |rho_{j'm' jm}| over m' != m, relative to the largest diagonal element.
    double max_relative_m_offdiagonal() const {
        double diag = 0.0, off = 0.0;
        for (int a = 0; a < 6; ++a) diag = std::max(diag, std::abs(m_[a][a]));
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b)
                if (atomic_states[a].two_m != atomic_states[b].two_m) off = std::max(off, std::abs(m_[a][b]));
        return diag > 0.0 ? off / diag : off;
    }

    Matrix6& raw() { return m_; }

private:
    Matrix6 m_{};
};

/// Degree of coherence g in [0, 1]. Throws if either diagonal factor vanishes.
inline double coherence_degree(const DensityMatrix& rho) {
    const double a = rho.population(Level::j3_2, 1);
    const double b = rho.population(Level::j1_2, 1);
    if (!(a > 0.0) || !(b > 0.0)) throw NumericalError("coherence undefined: zero population");
    const double g = std::abs(rho.coherence_element()) / std::sqrt(a * b);
    if (g > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "coherence degree " << g << " exceeds 1: density matrix not positive";
        throw NumericalError(msg.str());
    }
    return std::min(g, 1.0);
}

inline double total_probability(const DensityMatrix& rho) { return rho.total_probability(); }

struct DensityOptions {
    BranchConvention convention = BranchConvention::continued;
    unsigned threads = default_threads();
    /// Only saddles with Re t <= re_t_cut contribute (cumulative build-up).
    double re_t_cut = std::numeric_limits<double>::infinity();
    /// Repeat on the doubled grid and warn when g or w move by more than tolerance.
    bool convergence_check = false;
    double convergence_tolerance = 1e-3;
};

struct DensityResult {
    DensityMatrix rho;
    std::vector<std::string> warnings;
};

namespace detail {

/// Adds W sum_s conj(a_s) b_s over state pairs allowed by the phi integration.
inline void accumulate(Matrix6& acc, const AmplitudeSet& amp, double weight, bool same_m_only) {
    for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
            if (same_m_only && atomic_states[a].two_m != atomic_states[b].two_m) continue;
            cplx s{0.0, 0.0};
            for (int k = 0; k < 2; ++k) s += std::conj(amp.value[a][k]) * amp.value[b][k];
            acc[a][b] += weight * s;
        }
    }
}

/// Amplitudes at p from saddles already found for both channels.
inline AmplitudeSet assemble(const Species& species, const Vec3& p,
                             const std::array<std::vector<SaddlePoint>, 2>& saddles,
                             BranchConvention convention, double re_t_cut) {
    AmplitudeSet out;
    out.p = p;
    for (int c = 0; c < 2; ++c) {
        const Level level = c == 0 ? Level::j3_2 : Level::j1_2;
        const auto sums = saddle_sums(saddles[c], p, species.kappa(level), convention, re_t_cut);
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

/// One pass over the grid, accumulating a density matrix for every saddle
/// cut-off in `cuts` (Re t <= cut). Saddles are found once per grid point.
inline std::vector<Matrix6> integrate_cuts(const Pulse& pulse, const Species& species,
                                           const MomentumGrid& grid, BranchConvention convention,
                                           const std::vector<double>& cuts, unsigned threads) {
    const std::size_t n_p = grid.p.size();
    const std::size_t n_c = cuts.size();
    std::vector<std::vector<Matrix6>> partial(n_p, std::vector<Matrix6>(n_c));
    const double norm = 1.0 / std::pow(2.0 * units::pi, 3);

    parallel_for(n_p, threads, [&](std::size_t i) {
        auto& acc = partial[i];
        const double p = grid.p[i];
        for (std::size_t k = 0; k < grid.cos_theta.size(); ++k) {
            const double w_pt = grid.p_weight[i] * grid.cos_theta_weight[k] * norm;
            // Saddles depend on p only through p_z and |p_perp|.
            const Vec3 p0 = Vec3::spherical(p, grid.cos_theta[k], 0.0);
            const std::array<std::vector<SaddlePoint>, 2> saddles{
                saddle::find_saddles(pulse, species.energy(Level::j3_2), p0),
                saddle::find_saddles(pulse, species.energy(Level::j1_2), p0)};
            for (std::size_t c = 0; c < n_c; ++c) {
                if (grid.phi_mode == PhiMode::analytic) {
                    // Each m_l term carries exp(i m_l phi): the phi integral is 2 pi delta_{m_l' m_l}.
                    const auto amp = assemble(species, p0, saddles, convention, cuts[c]);
                    accumulate(acc[c], amp, w_pt * 2.0 * units::pi, true);
                } else {
                    for (int j = 0; j < grid.n_phi; ++j) {
                        const Vec3 pv = Vec3::spherical(p, grid.cos_theta[k], grid.phi_node(j));
                        const auto amp = assemble(species, pv, saddles, convention, cuts[c]);
                        accumulate(acc[c], amp, w_pt * grid.phi_weight(), false);
                    }
                }
            }
        }
    });

    // Fixed summation order over radial nodes: independent of the worker count.
    std::vector<Matrix6> total(n_c);
    for (std::size_t c = 0; c < n_c; ++c) {
        auto& m = total[c];
        for (std::size_t i = 0; i < n_p; ++i)
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b) m[a][b] += partial[i][c][a][b];
    }
    return total;
}

inline Matrix6 integrate(const Pulse& pulse, const Species& species, const MomentumGrid& grid,
                         const DensityOptions& opt) {
    return integrate_cuts(pulse, species, grid, opt.convention, {opt.re_t_cut}, opt.threads).front();
}

}  // namespace detail

/// Momentum-space quadrature of amplitude products over the grid.
inline DensityResult build_density_matrix(const Pulse& pulse, const Species& species,
                                          const MomentumGrid& grid, const DensityOptions& opt = {}) {
    DensityResult out{DensityMatrix(detail::integrate(pulse, species, grid, opt)), {}};
    const double w = out.rho.total_probability();
    if (w > 0.5) {
        std::ostringstream msg;
        msg << "total detachment probability w = " << w << " > 0.5: saturation regime";
        out.warnings.push_back(msg.str());
    }
    if (opt.convergence_check && w > 0.0) {
        DensityOptions fine = opt;
        fine.convergence_check = false;
        const DensityMatrix rho2(detail::integrate(pulse, species, grid.doubled(), fine));
        const double w2 = rho2.total_probability();
        const double g1 = coherence_degree(out.rho);
        const double g2 = coherence_degree(rho2);
        const double dw = std::abs(w2 - w) / w;
        const double dg = std::abs(g2 - g1) / std::max(g1, 1e-300);
        if (dw > opt.convergence_tolerance || dg > opt.convergence_tolerance) {
            std::ostringstream msg;
            msg.precision(10);
            msg << "grid not converged: w = " << w << " vs " << w2 << " (doubled), g = " << g1
                << " vs " << g2;
            out.warnings.push_back(msg.str());
        }
    }
    return out;
}

}  // namespace sowp
