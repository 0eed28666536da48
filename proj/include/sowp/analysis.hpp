#pragma once

// Experiments built on the density matrix: cumulative saddle-point build-up,
// coherence sweeps over the number of cycles and the Gaussian coherence law.

#include <limits>
#include <string>
#include <vector>

#include "densmat.hpp"
#include "fit.hpp"

namespace sowp {

/// Momentum used to pick the build-up thresholds: emission along the
/// polarization axis with |p| = 0.05 a.u.
inline constexpr double buildup_momentum = 0.05;

struct BuildupStep {
    double t_fs = 0.0;     // Re t'_mu
    double field = 0.0;    // F(Re t'_mu), a.u.
    DensityMatrix rho;     // saddles with Re t <= Re t'_mu, integrated over the grid
};

struct BuildupTrace {
    std::vector<BuildupStep> steps;
    std::vector<double> field_t_fs;  // dense field samples for overlays
    std::vector<double> field;
};

/// Cumulative partial sums over saddle points. The thresholds are the 2N+2
/// saddle times Re t'_mu of the j = 3/2 channel at theta = 0, p = 0.05 a.u.;
/// the same cut-off is applied to every momentum of the grid. The last step
/// keeps every saddle and reproduces the full density matrix.
inline BuildupTrace buildup(const Pulse& pulse, const Species& species, const MomentumGrid& grid,
                            const DensityOptions& opt = {}, int field_samples = 400) {
    const auto ref = saddle::find_saddles(pulse, species.energy(Level::j3_2),
                                          Vec3{0.0, 0.0, buildup_momentum});
    std::vector<double> cuts;
    cuts.reserve(ref.size());
    for (const auto& s : ref) cuts.push_back(s.t.real());
    if (!cuts.empty()) cuts.back() = std::numeric_limits<double>::infinity();

    const auto mats = detail::integrate_cuts(pulse, species, grid, opt.convention, cuts, opt.threads);

    BuildupTrace tr;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        const double t = ref[k].t.real();
        tr.steps.push_back({units::au_to_fs(t), pulse.electric_field(t), DensityMatrix(mats[k])});
    }
    for (int i = 0; i < field_samples; ++i) {
        const double t = pulse.duration() * i / std::max(1, field_samples - 1);
        tr.field_t_fs.push_back(units::au_to_fs(t));
        tr.field.push_back(pulse.electric_field(t));
    }
    return tr;
}

struct SweepPoint {
    std::string species;
    int cycles = 0;
    double tau_fwhm_fs = 0.0;
    double ratio = 0.0;  // tau~_p / tau_b
    double g = 0.0;
    double w = 0.0;
};

struct SweepFailure {
    std::string species;
    int cycles = 0;
    std::string message;
};

struct SweepJob {
    Species species;
    int cycles_min = 2;
    int cycles_max = 18;
};

struct SweepSettings {
    double wavelength_nm = 1800.0;
    double intensity_w_cm2 = 1.3e13;
    int n_energy = MomentumGrid::default_energy_nodes;
    int n_theta = MomentumGrid::default_theta_nodes;
    PhiMode phi_mode = PhiMode::analytic;
    int n_phi = MomentumGrid::default_phi_nodes;
    DensityOptions density;
};

struct SweepResult {
    std::vector<SweepPoint> points;  // ordered by job, then cycles
    std::vector<SweepFailure> failures;
};

/// g and w for every (species, N). A failing point is recorded and skipped.
inline SweepResult coherence_sweep(const std::vector<SweepJob>& jobs, const SweepSettings& set) {
    SweepResult out;
    for (const auto& job : jobs) {
        for (int n = job.cycles_min; n <= job.cycles_max; ++n) {
            try {
                const Pulse pulse = Pulse::from_lab(set.wavelength_nm, n, set.intensity_w_cm2);
                const auto grid = MomentumGrid::for_carrier(pulse.omega(), set.n_energy, set.n_theta,
                                                            set.phi_mode, set.n_phi);
                const auto res = build_density_matrix(pulse, job.species, grid, set.density);
                SweepPoint pt;
                pt.species = job.species.name;
                pt.cycles = n;
                pt.tau_fwhm_fs = pulse.fwhm_fs();
                pt.ratio = pt.tau_fwhm_fs / job.species.beat_period_fs();
                pt.g = coherence_degree(res.rho);
                pt.w = res.rho.total_probability();
                out.points.push_back(pt);
            } catch (const Error& e) {
                out.failures.push_back({job.species.name, n, e.what()});
            }
        }
    }
    return out;
}

inline std::vector<FitPoint> fit_points(const std::vector<SweepPoint>& pts) {
    std::vector<FitPoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({p.ratio, p.g});
    return out;
}

}  // namespace sowp
