// Adaptive Gauss-Kronrod integration, principal values and ladder extrapolation.
#pragma once

#include <functional>
#include <vector>

#include "minkprop/core.hpp"

namespace mkp {

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    double ladder_start = 0.1;
    double ladder_ratio = 0.5;
    int ladder_count = 12;
};

struct PairingResult {
    cplx value{0.0, 0.0};
    double abs_err = 0.0;
    long evaluations = 0;
    bool converged = true;
};

struct VecResult {
    std::vector<cplx> value;
    double abs_err = 0.0;
    long evaluations = 0;
    bool converged = true;
};

using ScalarFn = std::function<cplx(double)>;
// Evaluates n components at each of nx abscissae: out[k * n + i].
using BatchFn = std::function<void(const double* x, int nx, cplx* out)>;

// Vector-valued adaptive GK7/15 over consecutive break points. The error
// criterion is max_i err_i <= max(abs_tol, rel_tol * max_i |I_i|).
VecResult integrate_vec(const BatchFn& f, int n, const std::vector<double>& breaks, double abs_tol,
                        double rel_tol, int max_subdivisions);

PairingResult integrate_1d(const ScalarFn& f, double a, double b, const QuadConfig& cfg = {});
// Integral over [a, inf) for integrands damped on scale sigma; truncated at a + 40 sigma.
PairingResult integrate_semi_infinite(const ScalarFn& f, double a, double sigma, const QuadConfig& cfg = {});

// Integral over R^3 in spherical coordinates of g(rho, z = cos theta, phi) on rho in [0, rho_max].
PairingResult integrate_radial3(const std::function<cplx(double, double, double)>& g, double rho_max,
                                const QuadConfig& cfg = {});

// Integral over the unit sphere of a vector integrand: adaptive in z, periodic trapezoid in phi
// with nested-grid doubling. g(npts, z, phi, out) fills out[k * n + i].
struct SphereStats {
    double err = 0.0;
    long evaluations = 0;
    bool converged = true;
};
using SphereFn = std::function<void(int npts, const double* z, const double* phi, cplx* out)>;
SphereStats integrate_sphere(const SphereFn& g, int n, double abs_tol, cplx* out);

// Richardson extrapolation of a ladder F(h_k), h_k = h0 r^k, assuming an error
// expansion in h^{p0}, h^{p0+dp}, ... Returns the estimate with the smallest
// successive-difference spread; spread is that difference.
struct Extrapolated {
    cplx value;
    double spread;
};
Extrapolated richardson(const std::vector<cplx>& ladder, double ratio, int p0, int dp, int max_cols = 5);

// Symmetric-excision principal value of pv int_a^b n(x)/(x - pole) dx for a vector numerator.
// The excision ladder eps_k = ladder_start * ladder_ratio^k is extrapolated in odd powers.
struct PvResult {
    std::vector<cplx> value;
    double abs_err = 0.0;
    double spread = 0.0;
    long evaluations = 0;
    bool converged = true;
};
PvResult integrate_pv_vec(const BatchFn& num, int n, double pole, double a, double b, const QuadConfig& cfg,
                          double abs_tol);
PairingResult integrate_pv(const ScalarFn& num, double pole, double a, double b, const QuadConfig& cfg = {});

// Damped-pole integrals int_a^b n(x)/(x - pole + i eta) dx for every eta = +-eps_k on the ladder.
// out_plus[k] holds eta = +eps_k, out_minus[k] holds eta = -eps_k (each n components).
struct DampedLadder {
    std::vector<std::vector<cplx>> plus, minus;
    double abs_err = 0.0;
    long evaluations = 0;
    bool converged = true;
};
DampedLadder integrate_damped_ladder(const BatchFn& num, int n, double pole, double a, double b,
                                     const QuadConfig& cfg, double abs_tol);

// Composite Gauss-Legendre nodes on [a, b] with panels of at most width h.
void gauss_legendre_composite(double a, double b, double h, int order, std::vector<double>& x,
                              std::vector<double>& w);

}  // namespace mkp
