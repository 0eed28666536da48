#pragma once

#include <cmath>
#include <vector>

#include "error.hpp"
#include "units.hpp"

namespace sowp {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
inline QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 1; i <= m; ++i) {
        double z = std::cos(units::pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        r.nodes[i - 1] = mid - half * z;
        r.nodes[n - i] = mid + half * z;
        r.weights[i - 1] = 2.0 * half / ((1.0 - z * z) * pp * pp);
        r.weights[n - i] = r.weights[i - 1];
    }
    return r;
}

enum class PhiMode { analytic, numeric };

/// Spherical momentum grid for d^3p = p^2 dp dcos(theta) dphi up to the
/// photoelectron energy cutoff E_max (p_max = sqrt(2 E_max)).
///
/// The radial Gauss-Legendre nodes are placed in p, so radial weights carry the
/// p^2 Jacobian and the grid volume is exact.
struct MomentumGrid {
    double energy_max = 0.0;
    std::vector<double> p;         // radial nodes
    std::vector<double> p_weight;  // includes p^2
    std::vector<double> cos_theta;
    std::vector<double> cos_theta_weight;
    PhiMode phi_mode = PhiMode::analytic;
    int n_phi = 1;

    static constexpr int default_energy_nodes = 200;
    static constexpr int default_theta_nodes = 64;
    static constexpr int default_phi_nodes = 32;
    static constexpr double default_cutoff_photons = 15.0;

    static MomentumGrid make(double energy_max, int n_energy = default_energy_nodes,
                             int n_theta = default_theta_nodes, PhiMode mode = PhiMode::analytic,
                             int n_phi = default_phi_nodes) {
        if (!(energy_max > 0.0)) throw DomainError("momentum grid: energy cutoff must be positive");
        if (n_energy < 1 || n_theta < 1) throw DomainError("momentum grid: need at least one node");
        if (mode == PhiMode::numeric && n_phi < 1) throw DomainError("momentum grid: n_phi < 1");
        MomentumGrid g;
        g.energy_max = energy_max;
        const auto radial = gauss_legendre(n_energy, 0.0, std::sqrt(2.0 * energy_max));
        g.p = radial.nodes;
        g.p_weight = radial.weights;
        for (std::size_t i = 0; i < g.p.size(); ++i) g.p_weight[i] *= g.p[i] * g.p[i];
        const auto ang = gauss_legendre(n_theta, -1.0, 1.0);
        g.cos_theta = ang.nodes;
        g.cos_theta_weight = ang.weights;
        g.phi_mode = mode;
        g.n_phi = mode == PhiMode::numeric ? n_phi : 1;
        return g;
    }

    /// Default grid for carrier frequency omega: cutoff 15 omega.
    static MomentumGrid for_carrier(double omega, int n_energy = default_energy_nodes,
                                    int n_theta = default_theta_nodes,
                                    PhiMode mode = PhiMode::analytic,
                                    int n_phi = default_phi_nodes) {
        return make(default_cutoff_photons * omega, n_energy, n_theta, mode, n_phi);
    }

    MomentumGrid doubled() const {
        return make(energy_max, 2 * static_cast<int>(p.size()), 2 * static_cast<int>(cos_theta.size()),
                    phi_mode, 2 * n_phi);
    }

    std::vector<double> energies() const {
        std::vector<double> e(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) e[i] = 0.5 * p[i] * p[i];
        return e;
    }

    double phi_node(int k) const { return 2.0 * units::pi * k / n_phi; }
    double phi_weight() const { return 2.0 * units::pi / n_phi; }

    /// Quadrature of the unit function over the grid.
    double volume() const {
        double s = 0.0;
        for (double wp : p_weight)
            for (double wt : cos_theta_weight) s += wp * wt;
        return s * 2.0 * units::pi;
    }
};

}  // namespace sowp
