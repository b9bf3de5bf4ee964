// Scalar propagator family as pairing functionals against test functions (densities paired with functions
// over the fixed volume form d^4x).
#pragma once

#include <array>
#include <string>
#include <vector>

#include "minkprop/fourier.hpp"

namespace mkp {

enum class PropTag { Dplus, Dminus, D, Dcirc, Dbullet, Dret, Dadv, DF };
constexpr int kNumPropTags = 8;

struct PropKind {
    PropTag tag = PropTag::D;
    double mass = 0.0;
};

PropTag parse_prop_tag(const std::string& name);
std::string prop_name(PropTag tag);
bool is_elementary(PropTag tag);

using PropValues = std::array<PairingResult, kNumPropTags>;

// Momentum-shell adjoint route.
PairingResult pair_propagator(const PropKind& k, const TestFn& u, const QuadConfig& cfg = {},
                              const EngineOptions& opt = {});
PropValues pair_all_kinds(double m, const TestFn& u, const QuadConfig& cfg = {}, const EngineOptions& opt = {});
// Batch members must share Gaussian parameters (e.g. a function and its derivatives).
std::vector<PropValues> pair_all_kinds_batch(double m, const std::vector<TestFn>& us, const QuadConfig& cfg = {},
                                             const EngineOptions& opt = {});

// Sine-radial route with the Heaviside window applied inside the time integral.
enum class TimeWindow { future, past, sign };
PairingResult pair_windowed(PropTag base, TimeWindow w, double m, const TestFn& u, const QuadConfig& cfg = {});
PropValues pair_all_kinds_windowed(double m, const TestFn& u, const QuadConfig& cfg = {});
std::vector<PropValues> pair_all_kinds_windowed_batch(double m, const std::vector<TestFn>& us,
                                                      const QuadConfig& cfg = {});

// Light-cone closed forms, m = 0 only.
PairingResult pair_massless_closed(PropTag tag, const TestFn& u, const QuadConfig& cfg = {});
PropValues pair_all_kinds_massless(const TestFn& u, const QuadConfig& cfg = {});

// Elementary kinds: <i D, (box + m^2) u> - u(0). Other kinds: <D, (box + m^2) u>.
PairingResult kg_residual(const PropKind& k, const TestFn& u, const QuadConfig& cfg = {});

// <d_0 D, u> = -<D, d_0 u>.
PairingResult time_derivative_pair(const PropKind& k, const TestFn& u, const QuadConfig& cfg = {});

// Ladder sigma_t in {0.5, 0.25, 0.125, 0.0625} of t-normalized Gaussians times a spatial profile, extrapolated in sigma^2.
struct LadderResult {
    std::vector<cplx> ladder;
    cplx extrapolated{0.0};
    cplx target{0.0};
    double residual = 0.0;
};
LadderResult time_derivative_limit(PropTag tag, double m, const QuadConfig& cfg = {});

std::vector<CheckRow> verify_propagator_identities(double m, const QuadConfig& cfg = {}, std::uint64_t seed = 1,
                                                   int count = 4);
std::vector<CheckRow> verify_kg_residuals(double m, const QuadConfig& cfg = {}, std::uint64_t seed = 1,
                                          int count = 10);
std::vector<CheckRow> verify_massless_cross(const QuadConfig& cfg = {}, std::uint64_t seed = 1, int count = 10);
std::vector<CheckRow> verify_microcausality(double m, const QuadConfig& cfg = {});

struct TableRow {
    double t = 0.0, r = 0.0;
    PairingResult value;
};
// Pairings against unit-mass Gaussians of width sigma centered at (t, r, 0, 0).
std::vector<TableRow> propagator_table(PropTag tag, double m, const std::vector<double>& ts,
                                       const std::vector<double>& rs, double sigma, const QuadConfig& cfg = {});

}  // namespace mkp
