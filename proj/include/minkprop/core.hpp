// Minkowski kinematics: 4-vectors, the (+,-,-,-) metric, on-shell energy.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace mkp {

using cplx = std::complex<double>;
using FourVector = std::array<double, 4>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

struct Metric {
    static constexpr std::array<double, 4> diag{1.0, -1.0, -1.0, -1.0};
    static double g(const FourVector& p, const FourVector& q) {
        return p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3];
    }
};

struct Mass {
    double m = 0.0;
    Mass() = default;
    Mass(double v) : m(v) {
        if (!(v >= 0.0)) throw std::invalid_argument("mass must be nonnegative");
    }
    operator double() const { return m; }
};

inline double minkowski_square(const FourVector& p) { return Metric::g(p, p); }

inline double energy_on_shell(double m, const Vec3& p) {
    return std::sqrt(m * m + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

}  // namespace mkp
