// Distributional Fourier transforms by adjointness, the sine-radial (digamma) route for
// transformed mass-shell densities, and the associated identity reports.
#pragma once

#include <vector>

#include "minkprop/densities_1d.hpp"
#include "minkprop/mass_shell.hpp"

namespace mkp {

enum class Partial { full, temporal, spatial };

struct TransformedDist {
    MomShellDist base;
    int sign = 1;
    Partial partial = Partial::full;
};

PairingResult pair_transformed(const TransformedDist& T, const TestFn& u, const QuadConfig& cfg = {});
PairingResult pair_transformed_1d(const Dist1d& base, int sign, const TestFn& u, const QuadConfig& cfg = {});

// Coefficients of (2pi)^{-2} [F+ or F-] dt ^ Sigma restricted to t > 0 or t < 0.
struct DigammaCombo {
    cplx plus_pos{0.0}, plus_neg{0.0}, minus_pos{0.0}, minus_neg{0.0};
};
enum class Window { full, future, past, sign };
// Combination a F+ + b F- with the given time window.
DigammaCombo digamma_combo(cplx a, cplx b, Window w);

// Pairings of several combinations against a batch of test functions sharing Gaussian parameters.
// Result index [c * nfn + f].
std::vector<PairingResult> pair_digamma(const std::vector<DigammaCombo>& combos, double m,
                                        const std::vector<TestFn>& fns, const QuadConfig& cfg = {},
                                        const EngineOptions& opt = {});

// The stated F_perp density: +-(2pi)^{-3/2} H(+-tau - m) sin(r sqrt(tau^2 - m^2)) / r dtau d^3x.
PairingResult pair_fperp_density(int s, double m, const TestFn& v, const QuadConfig& cfg = {});

std::vector<CheckRow> verify_corollary(double m, const QuadConfig& cfg = {}, std::uint64_t seed = 1, int count = 20);
std::vector<CheckRow> verify_prop_digamma(double m, const QuadConfig& cfg = {}, std::uint64_t seed = 1, int count = 5);
std::vector<CheckRow> verify_F_perp_lemma(double m, const QuadConfig& cfg = {}, std::uint64_t seed = 1, int count = 10);
std::vector<CheckRow> verify_ehat_identities(double m, const QuadConfig& cfg = {}, std::uint64_t seed = 1,
                                             int count = 10);
std::vector<CheckRow> verify_massless_table(const QuadConfig& cfg = {}, std::uint64_t seed = 1, int count = 10);

}  // namespace mkp
