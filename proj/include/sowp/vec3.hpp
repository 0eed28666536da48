#pragma once

#include <algorithm>
#include <cmath>

namespace sowp {

/// Real Cartesian 3-vector (photoelectron momentum, a.u.); z is the polarization axis.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    double perp2() const { return x * x + y * y; }

    static Vec3 spherical(double p, double cos_theta, double phi) {
        const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
        return {p * sin_theta * std::cos(phi), p * sin_theta * std::sin(phi), p * cos_theta};
    }
};

}  // namespace sowp
