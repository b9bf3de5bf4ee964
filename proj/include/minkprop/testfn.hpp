// Gaussian-Hermite test functions: polynomial x anisotropic Gaussian x plane wave.
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minkprop/core.hpp"

namespace mkp {

using MultiIndex = std::array<int, 4>;

struct Term {
    cplx coeff;
    MultiIndex alpha{0, 0, 0, 0};
};

// f(x) = sum_j c_j prod_i (x_i - c_i)^{alpha_ji} * exp(-sum_i (x_i-c_i)^2 / (2 sigma_i^2)) * exp(i k.x)
struct TestFn {
    int dim = 1;
    std::vector<Term> terms;
    std::vector<double> center;
    std::vector<double> widths;
    std::vector<double> phase;

    int degree() const;
    int degree(int axis) const;
};

constexpr int kMaxDegree = 6;

TestFn gaussian(int dim, double sigma = 1.0);
TestFn make_testfn(std::vector<Term> terms, std::vector<double> center, std::vector<double> widths,
                   std::vector<double> phase);

void validate(const TestFn& f);
bool same_params(const TestFn& a, const TestFn& b);
TestFn canonicalize(TestFn f);

cplx eval(const TestFn& f, const double* x);
cplx eval(const TestFn& f, const std::vector<double>& x);

TestFn derivative(const TestFn& f, int axis);
TestFn dalembertian_plus_m2(const TestFn& f, double m);
TestFn translate(const TestFn& f, const std::vector<double>& b);
TestFn reflect(const TestFn& f);
TestFn conjugate(const TestFn& f);
TestFn scale(const TestFn& f, cplx s);
// Sum of functions sharing center, widths and phase.
TestFn add(const TestFn& a, const TestFn& b);
TestFn multiply_coordinate(const TestFn& f, int axis);

// Full transform F^sign with kernel (2pi)^{-d/2} exp(-sign i <y,x>).
TestFn fourier_analytic(const TestFn& f, int sign);
// Transform over the axes with mask bit set, identity on the others.
TestFn fourier_partial(const TestFn& f, int sign, unsigned axis_mask);
inline TestFn fourier_temporal(const TestFn& f, int sign) { return fourier_partial(f, sign, 0x1u); }
inline TestFn fourier_spatial(const TestFn& f, int sign) { return fourier_partial(f, sign, 0xEu); }

// Triangle-inequality L1 bound; exact for one positive Gaussian term.
double l1_norm(const TestFn& f);
// Integral of f over R^d (closed form).
cplx integral(const TestFn& f);

struct RandomOptions {
    double sigma_min = 0.5, sigma_max = 2.0;
    double center_radius = 2.0;
    double phase_radius = 2.0;
    int max_terms = 3;
    int max_degree = 2;
};
TestFn random_testfn(std::mt19937_64& rng, int dim, const RandomOptions& opt = {});

std::string to_json(const TestFn& f);
TestFn from_json(const std::string& text);

}  // namespace mkp
