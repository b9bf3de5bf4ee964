// One-dimensional special densities (delta, Heaviside, sign, shifted principal value,
// characteristic function, damped pole) as pairing functionals, and the Fourier table check.
#pragma once

#include <string>
#include <vector>

#include "minkprop/mass_shell.hpp"
#include "minkprop/quadrature.hpp"
#include "minkprop/testfn.hpp"

namespace mkp {

struct Dist1d {
    enum class Kind { delta, heaviside, sign, pv_shift, char_interval, damped_pole };
    Kind kind = Kind::delta;
    double a = 0.0, b = 0.0;  // delta(b) uses b; pv_shift/damped_pole use a; char_interval uses [a,b]
    int side = 1;             // heaviside orientation; damped_pole: 1/(x - a - side*i*eps)
    double eps = 0.0;

    static Dist1d delta(double b);
    static Dist1d heaviside(int orientation);
    static Dist1d sign();
    static Dist1d pv_shift(double a);
    static Dist1d char_interval(double a, double b);
    static Dist1d damped_pole(double a, int side, double eps);
};

PairingResult pair_1d(const Dist1d& d, const TestFn& u, const QuadConfig& cfg = {});

// Integral over R of g(x) u(x), with the integrand support taken from u's Gaussian.
PairingResult integrate_against(const TestFn& u, const ScalarFn& g, double lo_cut, double hi_cut,
                                const QuadConfig& cfg = {});
// pv int g(x) u(x) / (x - pole) dx over R.
PairingResult pv_against(const TestFn& u, const ScalarFn& g, double pole, const QuadConfig& cfg = {});
// eps -> 0+ limit of int u(x) / (x - a - side*i*eps) dx by ladder extrapolation.
struct DampedLimit {
    cplx value;
    double spread;
    double abs_err;
};
DampedLimit damped_pole_limit(const TestFn& u, double a, int side, const QuadConfig& cfg = {});

std::vector<CheckRow> verify_ft_table(const QuadConfig& cfg = {}, std::uint64_t seed = 1, int count = 10);

}  // namespace mkp
