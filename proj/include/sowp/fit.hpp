#pragma once

// Unweighted least-squares fit of g = g0 exp(-zeta r^2).
// Seeded by linear regression of ln g on r^2, refined by Gauss-Newton on the
// nonlinear residuals (with step halving when a full step increases the cost).

#include <cmath>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace sowp {

struct FitPoint {
    double ratio;
    double g;
};

struct FitResult {
    double g0 = 0.0;
    double zeta = 0.0;
    double rms = 0.0;
    std::vector<double> residuals;  // g_i - model(r_i)
    int iterations = 0;
};

class FitError : public NumericalError {
public:
    FitError(const std::string& what, std::vector<std::pair<double, double>> trace)
        : NumericalError(what), trace(std::move(trace)) {}
    std::vector<std::pair<double, double>> trace;  // (g0, zeta) per iteration
};

inline double gaussian_law(double ratio, double g0, double zeta) {
    return g0 * std::exp(-zeta * ratio * ratio);
}

namespace detail {

inline double fit_cost(const std::vector<FitPoint>& pts, double g0, double zeta) {
    double c = 0.0;
    for (const auto& p : pts) {
        const double r = p.g - gaussian_law(p.ratio, g0, zeta);
        c += r * r;
    }
    return c;
}

}  // namespace detail

inline FitResult gaussian_fit(const std::vector<FitPoint>& pts, double step_tol = 1e-10,
                              int max_iter = 200) {
    if (pts.size() < 3) throw DomainError("gaussian_fit: need at least 3 points");
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (pts[i].ratio == pts[j].ratio) throw DomainError("gaussian_fit: ratios must be distinct");

    // Seed: ln g = ln g0 - zeta x, x = r^2, over points with g > 0.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& p : pts) {
        if (!(p.g > 0.0)) continue;
        const double x = p.ratio * p.ratio;
        const double y = std::log(p.g);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    double g0 = 1.0, zeta = 1.0;
    if (n >= 2 && n * sxx - sx * sx > 0.0) {
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        g0 = std::exp((sy - slope * sx) / n);
        zeta = -slope;
    }

    std::vector<std::pair<double, double>> trace{{g0, zeta}};
    double cost = detail::fit_cost(pts, g0, zeta);
    FitResult out;
    bool converged = false;
    for (int it = 1; it <= max_iter; ++it) {
        // Normal equations J^T J d = -J^T r, r_i = g_i - g0 e_i.
        double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
        for (const auto& p : pts) {
            const double x = p.ratio * p.ratio;
            const double e = std::exp(-zeta * x);
            const double r = p.g - g0 * e;
            const double j1 = -e;
            const double j2 = g0 * x * e;
            a11 += j1 * j1;
            a12 += j1 * j2;
            a22 += j2 * j2;
            b1 -= j1 * r;
            b2 -= j2 * r;
        }
        const double det = a11 * a22 - a12 * a12;
        if (!(std::abs(det) > 0.0)) break;
        double d1 = (a22 * b1 - a12 * b2) / det;
        double d2 = (a11 * b2 - a12 * b1) / det;

        double lambda = 1.0;
        double trial = detail::fit_cost(pts, g0 + d1, zeta + d2);
        while (trial > cost && lambda > 1e-12) {
            lambda *= 0.5;
            trial = detail::fit_cost(pts, g0 + lambda * d1, zeta + lambda * d2);
        }
        g0 += lambda * d1;
        zeta += lambda * d2;
        cost = trial;
        trace.emplace_back(g0, zeta);
        out.iterations = it;
        if (std::hypot(lambda * d1, lambda * d2) < step_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "gaussian_fit did not converge after " << max_iter << " iterations (g0=" << g0
            << ", zeta=" << zeta << ")";
        throw FitError(msg.str(), trace);
    }
    if (!(g0 > 0.0 && g0 <= 1.0 + 1e-12) || !(zeta > 0.0)) {
        std::ostringstream msg;
        msg << "gaussian_fit: parameters outside g0 in (0,1], zeta > 0 (g0=" << g0 << ", zeta=" << zeta << ")";
        throw FitError(msg.str(), trace);
    }

    out.g0 = g0;
    out.zeta = zeta;
    double ss = 0.0;
    for (const auto& p : pts) {
        const double r = p.g - gaussian_law(p.ratio, g0, zeta);
        out.residuals.push_back(r);
        ss += r * r;
    }
    out.rms = std::sqrt(ss / pts.size());
    return out;
}

/// g0 exp(-zeta ratio^2)
inline double predict_g(double ratio, const FitResult& fit) {
    if (!(ratio >= 0.0)) throw DomainError("predict_g: ratio must be non-negative");
    return gaussian_law(ratio, fit.g0, fit.zeta);
}

/// sqrt(ln(g0/g) / zeta), the ratio tau~_p / tau_b that produces coherence g.
inline double invert_g(double g, const FitResult& fit) {
    if (!(g > 0.0) || !(g < fit.g0)) throw DomainError("invert_g: need 0 < g < g0");
    return std::sqrt(std::log(fit.g0 / g) / fit.zeta);
}

}  // namespace sowp
