// Mass-shell Leray densities, principal-value densities and damped-pole densities,
// in momentum space for any mass and in position space for m = 0.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "minkprop/engine.hpp"

namespace mkp {

enum class Family { omega_leray, omega, eps, e_pv, e_full, opp };

struct MomShellDist {
    Family family = Family::eps;
    int s1 = 1;  // sign label (the only label for single-sign families)
    int s2 = 1;
    double mass = 0.0;
    bool position = false;
};

// Name grammar: omega+, omega-, omegaL+, omegaL-, eps+, eps-, epv+, epv-, e, opp--, opp-+, opp+-, opp++,
// each with an optional @pos suffix (m = 0 position-space twin).
MomShellDist parse_dist(const std::string& name, double mass);
std::string dist_name(const MomShellDist& d);

enum class ShellItem { omega_leray_p, omega_leray_m, omega_p, omega_m, eps_p, eps_m, epv_p, epv_m, opp };

struct ShellBatch {
    int nfn = 0;
    std::map<ShellItem, std::vector<PairingResult>> single;
    // opp[i] for (s1,s2) in order (-,-), (-,+), (+,-), (+,+)
    std::array<std::vector<PairingResult>, 4> opp;
    // per function, per family, the raw ladder values (for diagnostics)
    std::array<std::vector<std::vector<cplx>>, 4> opp_ladder;
    double opp_spread = 0.0;
    long evaluations = 0;
    bool converged = true;
};

int opp_index(int s1, int s2);

ShellBatch shell_pairings(const std::vector<TestFn>& fns, double m, const std::vector<ShellItem>& items,
                          const QuadConfig& cfg = {}, const EngineOptions& opt = {});

PairingResult pair_momentum(const MomShellDist& d, const TestFn& u, const QuadConfig& cfg = {});
PairingResult pair_position_m0(const MomShellDist& d, const TestFn& u, const QuadConfig& cfg = {});
// Dispatches on d.position.
PairingResult pair_shell(const MomShellDist& d, const TestFn& u, const QuadConfig& cfg = {});

struct CheckRow {
    std::string identity;
    double mass = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double extra = 0.0;  // e.g. ladder spread
};

std::vector<CheckRow> check_opp_decomposition(double m, const QuadConfig& cfg = {}, std::uint64_t seed = 1,
                                              int count = 10);

}  // namespace mkp
