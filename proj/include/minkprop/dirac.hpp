// Clifford algebra in the Dirac representation and the slashed propagator family.
#pragma once

#include <array>
#include <vector>

#include "minkprop/propagators.hpp"

namespace mkp {

using Mat4 = std::array<std::array<cplx, 4>, 4>;

Mat4 identity4();
Mat4 zero4();
Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator*(cplx s, const Mat4& a);
Mat4 adjoint(const Mat4& a);
double max_abs(const Mat4& a);

// gamma^lambda, lambda = 0..3.
const Mat4& gamma(int lambda);
// p_lambda gamma^lambda for a covector p.
Mat4 gamma_sharp(const FourVector& p);

struct MatPairing {
    Mat4 value{};
    double abs_err = 0.0;
};

// <Dslash^k, u> = i gamma^l <D^k, d_l u> - m <D^k, u> Id.
MatPairing pair_dirac_propagator(const PropKind& k, const TestFn& u, const QuadConfig& cfg = {});
std::array<MatPairing, kNumPropTags> pair_dirac_all(double m, const TestFn& u, const QuadConfig& cfg = {});

// Elementary kinds: R(u) = -i gamma^l <Psi, d_l u> - m <Psi, u> - u(0) Id with Psi = i Dslash^k.
// Other kinds: the same expression with Psi = Dslash^k and no u(0) term.
MatPairing dirac_residual(const PropKind& k, const TestFn& u, const QuadConfig& cfg = {});

std::vector<CheckRow> verify_clifford(std::uint64_t seed = 1, int count = 50);
std::vector<CheckRow> verify_dirac(double m, const QuadConfig& cfg = {}, std::uint64_t seed = 1, int count = 2);

}  // namespace mkp
