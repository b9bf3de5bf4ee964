// Graded emission/absorption algebra on a finite momentum lattice: symbolic normal ordering,
// a dense truncated-Fock oracle, free fields and the commutator/propagator bridge.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "minkprop/mass_shell.hpp"

namespace mkp {

enum class Statistics { boson, fermion };

// A normal-ordered monomial: emissions (em) to the left of absorptions (ab), each list sorted ascending.
struct OpTerm {
    cplx coeff{0.0};
    std::vector<int> em, ab;
    int size() const { return int(em.size() + ab.size()); }
};

struct OpExpr {
    Statistics stats = Statistics::boson;
    double contraction = 1.0;  // [[a_i, a+_j]] = delta_ij * contraction
    std::vector<OpTerm> terms;  // canonical: sorted by (em, ab), merged, no zero coefficients
};

OpExpr op_zero(Statistics s, double contraction = 1.0);
OpExpr op_identity(Statistics s, double contraction = 1.0, cplx c = 1.0);
OpExpr op_emit(Statistics s, int mode, double contraction = 1.0);
OpExpr op_absorb(Statistics s, int mode, double contraction = 1.0);
// Builds a canonical expression from arbitrary (possibly unsorted) normal-ordered terms.
OpExpr op_canonical(Statistics s, double contraction, std::vector<OpTerm> terms);

OpExpr operator+(const OpExpr& a, const OpExpr& b);
OpExpr operator-(const OpExpr& a, const OpExpr& b);
OpExpr operator*(cplx c, const OpExpr& a);
bool operator==(const OpExpr& a, const OpExpr& b);
bool is_zero(const OpExpr& a);
// True if a is a multiple of the identity; the coefficient is written to c.
bool is_central(const OpExpr& a, cplx* c = nullptr);
// Z2 grade (generator-count parity); bosonic expressions are even. Throws on mixed fermionic parity.
int grade(const OpExpr& a);

// Composition with full Wick reordering, including contraction terms.
OpExpr multiply(const OpExpr& a, const OpExpr& b);
// Composition with reordering only (contractions dropped).
OpExpr normal_order_free(const OpExpr& a, const OpExpr& b);
// [[a, b]] = ab - (-1)^{|a||b|} ba; linear expressions take a direct pairing path.
OpExpr graded_commutator(const OpExpr& a, const OpExpr& b);
OpExpr graded_commutator_general(const OpExpr& a, const OpExpr& b);

// Dense realization on occupation vectors over `modes` modes with total number <= nmax.
struct FockBasis {
    Statistics stats = Statistics::boson;
    int modes = 0, nmax = 0;
    std::vector<std::vector<int>> states;
    std::map<std::vector<int>, int> index;
    int total(int i) const;
};
FockBasis make_basis(Statistics s, int modes, int nmax);

struct FockMatrix {
    int dim = 0;
    std::vector<cplx> data;  // row-major
    cplx& at(int i, int j) { return data[std::size_t(i) * dim + j]; }
    cplx at(int i, int j) const { return data[std::size_t(i) * dim + j]; }
};
// Emission out of the truncation maps to zero; exact on states with enough headroom.
FockMatrix matrix_realize(const OpExpr& a, const FockBasis& basis);
FockMatrix matmul(const FockMatrix& a, const FockMatrix& b);

// Momentum lattice {-n_half..n_half}^3 * dp with particle and antiparticle registers.
struct LatticeSpec {
    double dp = 0.5;
    int n_half = 2;
    double mass = 1.0;
    Statistics stats = Statistics::boson;
    int internal_dim = 1;
    int side() const { return 2 * n_half + 1; }
    int modes() const { return side() * side() * side(); }
    Vec3 momentum(int k) const;
    double energy(int k) const;
    double contraction() const { return 1.0 / (dp * dp * dp); }
    void validate() const;
};

enum class GenKind { absorb_particle, emit_particle, absorb_anti, emit_anti };
OpExpr generator(GenKind kind, int k, const LatticeSpec& spec);

// Fields at a point; time_derivative selects d/dx^0.
OpExpr field_expr(const FourVector& x, const LatticeSpec& spec, bool time_derivative = false);
OpExpr antifield_expr(const FourVector& x, const LatticeSpec& spec, bool time_derivative = false);
OpExpr field_dagger_expr(const FourVector& x, const LatticeSpec& spec);
// Fields smeared with test functions: int f(x) phi(x) d^4x.
OpExpr smeared_field_expr(const TestFn& f, const LatticeSpec& spec);
OpExpr smeared_antifield_expr(const TestFn& g, const LatticeSpec& spec);

enum class CommKind { field_antifield, field_antifield_d0, d0field_antifield, field_field, field_fielddag, pi_pi };
CommKind parse_comm_kind(const std::string& name);
std::string comm_name(CommKind k);
// Coefficient of the (central) graded commutator; throws if the result is not central.
cplx commutator_value(const FourVector& x, const FourVector& y, CommKind which, const LatticeSpec& spec);

// (2 pi)^{-3} sum dp^3 exp(i p.d) and the lattice D_m(d) sum.
cplx lattice_delta(const Vec3& d, const LatticeSpec& spec);
cplx lattice_D(const FourVector& d, const LatticeSpec& spec);

std::vector<CheckRow> verify_fock_algebra(std::uint64_t seed = 1);
std::vector<CheckRow> verify_ccr(const LatticeSpec& spec);

struct BridgeRung {
    double dp = 0.0;
    int n_half = 0;
    int modes = 0;
    cplx smeared{0.0};
    double deviation = 0.0;
    cplx pointwise{0.0};
};
struct BridgeReport {
    FourVector separation{};
    double mass = 1.0;
    double sigma_f = 1.25;
    PairingResult oracle;
    std::vector<BridgeRung> rungs;
    bool monotone = false;
    double floor = 0.0;
    double final_deviation = 0.0;
    bool pass = false;
};
// Smeared lattice commutator [[phi(f), phi~(g)]] against <D_m, u>, u the cross-correlation of f and g.
BridgeReport commutator_vs_propagator(const FourVector& separation, double m, const std::vector<double>& ladder,
                                      double sigma_f = 1.25, double tolerance = 0.05, const QuadConfig& cfg = {});

// Bridge rows at (1,0,0,0) plus the spacelike trend at (1,12,0,0): smeared commutator strictly decreasing.
std::vector<CheckRow> verify_bridge(double m, const std::vector<double>& ladder, const QuadConfig& cfg = {});

}  // namespace mkp
