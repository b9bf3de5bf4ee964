#include <doctest.h>

#include <random>

#include "minkprop/dirac.hpp"

using namespace mkp;

TEST_CASE("gamma matrices: hermiticity pattern and anticommutators") {
    CHECK(max_abs(adjoint(gamma(0)) - gamma(0)) == 0.0);
    for (int i = 1; i < 4; ++i) CHECK(max_abs(adjoint(gamma(i)) + gamma(i)) == 0.0);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Mat4 ac = gamma(a) * gamma(b) + gamma(b) * gamma(a);
            const double g = a == b ? 2.0 * Metric::diag[a] : 0.0;
            CHECK(max_abs(ac - cplx(g) * identity4()) == 0.0);
        }
}

TEST_CASE("gamma sharp squares to the Minkowski norm") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int n = 0; n < 20; ++n) {
        const FourVector p{U(rng), U(rng), U(rng), U(rng)};
        const Mat4 s = gamma_sharp(p);
        CHECK(max_abs(s * s - cplx(minkowski_square(p)) * identity4()) < 1e-13);
    }
}

TEST_CASE("Clifford suite") {
    for (const auto& r : verify_clifford(3, 20)) {
        INFO(r.identity);
        CHECK(r.pass);
    }
}

TEST_CASE("Dirac residuals at m = 1") {
    for (const auto& r : verify_dirac(1.0, {}, 3, 1)) {
        INFO(r.identity << " residual=" << r.residual);
        CHECK(r.pass);
    }
}
