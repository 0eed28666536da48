// Coherence of the spin-orbit wave packet left in each halogen atom by an
// 8-cycle, 1800 nm, 1.3e13 W/cm^2 pulse, plus the corresponding beat signal.
#include <cstdio>

#include "sowp/sowp.hpp"

int main() {
    using namespace sowp;
    const Pulse pulse = Pulse::from_lab(1800.0, 8, 1.3e13);
    const MomentumGrid grid = MomentumGrid::for_carrier(pulse.omega());
    std::printf("tau_fwhm = %.2f fs\n", pulse.fwhm_fs());
    for (const Species& s : default_species()) {
        const DensityResult res = build_density_matrix(pulse, s, grid);
        const SignalParameters sig = signal_parameters(res.rho.normalized());
        std::printf("%-3s tau_b = %6.2f fs  w = %.3e  g = %.3f  S = %.4f  dS = %.4f\n", s.name.c_str(),
                    s.beat_period_fs(), res.rho.total_probability(), coherence_degree(res.rho), sig.mean,
                    sig.amplitude);
    }
}
