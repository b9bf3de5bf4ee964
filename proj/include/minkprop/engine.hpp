// Integration engines shared by the pairing modules.
//
// Shell engine: int_0^rho_max rho^2 d rho sum_j c_j T_{a0_j}(rho) S_{b_j}(rho), where S is the
// angular integral of the spatial factor on the sphere of radius rho and T a time kernel.
//
// Sine-radial engine: int_0^kmax d kappa (kappa / tau) sum_j c_j Theta_{a0_j}(tau) R_{b_j}(kappa),
// tau = sqrt(kappa^2 + m^2), R_b(kappa) = int r dr sin(kappa r) A_b(r), A_b the angular integral.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "minkprop/quadrature.hpp"
#include "minkprop/testfn.hpp"

namespace mkp {

void set_threads(int n);
int get_threads();

struct TimeAxis {
    double c = 0.0, sigma = 1.0, k = 0.0;
    int amax = 0;
    void eval(double x, cplx* h) const;
    void eval_batch(const double* x, int nx, cplx* h) const;
    double lo() const { return c - 40.0 * sigma; }
    double hi() const { return c + 40.0 * sigma; }
};

struct SpatialSet {
    std::vector<std::array<int, 3>> betas;
    double c[3] = {0, 0, 0}, s[3] = {1, 1, 1}, k[3] = {0, 0, 0};
    int maxdeg[3] = {0, 0, 0};
    double coeff_sum = 0.0;
    double center_norm() const;
    double phase_norm() const;
    double sigma_max() const;
    double sigma_min() const;
    // Upper bound of 4 pi sup_{|x| = rho} sum_b |x - c|^b G(x) weighted by coeff_sum.
    double bound(double rho) const;
    SphereStats sphere(double rho, double abs_tol, cplx* out) const;
};

struct TermRef {
    int fn;
    cplx coeff;
    int a0;
    int beta;
};

struct Decomposed {
    TimeAxis time;
    SpatialSet space;
    std::vector<TermRef> terms;
    int nfn = 0;
    double norm = 0.0;
};

// All functions must be dim 4 with identical Gaussian parameters.
Decomposed decompose(const std::vector<TestFn>& fns);

struct EngineOutput {
    std::vector<cplx> value;  // [o * nfn + f]
    double abs_err = 0.0;
    long evaluations = 0;
    bool converged = true;
    int nfn = 0;
    cplx at(int o, int f) const { return value[std::size_t(o) * nfn + f]; }
};

struct ShellKernel {
    int n_out = 1;
    // T[o * (amax + 1) + a] at radius rho and energy E; err receives an absolute error bound.
    std::function<void(double rho, double E, const TimeAxis&, cplx* T, double* err, long* evals)> eval;
};

struct EngineOptions {
    bool parallel = true;
};

EngineOutput shell_integrate(const std::vector<TestFn>& fns, double m, const ShellKernel& kernel,
                             const QuadConfig& cfg, const EngineOptions& opt = {});

// Half-line time sums Theta over a fixed grid: pos = int_{t>0}, neg = int_{t<0} of exp(-i s tau t) h_a(t).
class TimeGrid {
public:
    TimeGrid(const TimeAxis& ax, double omega_max);
    void half_sums(double tau, int sign, cplx* pos, cplx* neg) const;

private:
    int na_;
    std::vector<double> t_, w_;
    std::vector<char> positive_;
    std::vector<cplx> h_;
};

struct SineKernel {
    int n_out = 1;
    // Theta[o * (amax + 1) + a] at (kappa, tau).
    std::function<void(double kappa, double tau, cplx* Theta)> eval;
};

// Radial angular table A_b(r_n) on the fixed grid; exposed for the serial/parallel benchmark.
struct RadialTable {
    std::vector<double> r, w;
    std::vector<cplx> A;  // [n * nb + b]
    int nb = 0;
    double err = 0.0;
    long evaluations = 0;
    bool converged = true;
};
RadialTable tabulate_radial(const SpatialSet& sp, double panel, double abs_tol, bool parallel);

struct SineSetup {
    double kappa_max = 0.0;
    double panel = 0.5;
};
SineSetup sine_setup(const Decomposed& d, double m);

EngineOutput sine_integrate(const std::vector<TestFn>& fns, double m, const std::function<SineKernel(const Decomposed&, const SineSetup&)>& make_kernel,
                            const QuadConfig& cfg, const EngineOptions& opt = {});

}  // namespace mkp
