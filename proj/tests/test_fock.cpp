#include <doctest.h>

#include "minkprop/fock.hpp"

using namespace mkp;

namespace {

LatticeSpec small_spec(Statistics s) {
    LatticeSpec spec;
    spec.dp = 0.5;
    spec.n_half = 1;
    spec.mass = 1.0;
    spec.stats = s;
    return spec;
}

void all_pass(const std::vector<CheckRow>& rows) {
    for (const auto& r : rows) {
        INFO(r.identity << " residual=" << r.residual);
        CHECK(r.pass);
    }
}

}  // namespace

TEST_CASE("canonical reordering and contraction") {
    const auto B = Statistics::boson, F = Statistics::fermion;
    // a_0 a+_0 = a+_0 a_0 + C
    const OpExpr p = multiply(op_absorb(B, 0, 2.0), op_emit(B, 0, 2.0));
    CHECK(p.terms.size() == 2);
    CHECK(p.terms[0].size() == 0);
    CHECK(p.terms[0].coeff == cplx(2.0));
    // fermion: a_0 a+_0 = -a+_0 a_0 + C
    const OpExpr q = multiply(op_absorb(F, 0, 2.0), op_emit(F, 0, 2.0));
    CHECK(q.terms.size() == 2);
    CHECK(q.terms[1].coeff == cplx(-1.0));
    CHECK(is_zero(multiply(op_emit(F, 3), op_emit(F, 3))));
}

TEST_CASE("fermion sign discipline: swapping two generators flips the sign") {
    const auto F = Statistics::fermion;
    const OpExpr a = op_canonical(F, 1.0, {OpTerm{1.0, {2, 0}, {1}}});
    const OpExpr b = op_canonical(F, 1.0, {OpTerm{1.0, {0, 2}, {1}}});
    CHECK(a == -1.0 * b);
    const OpExpr c = op_canonical(Statistics::boson, 1.0, {OpTerm{1.0, {2, 0}, {1}}});
    const OpExpr d = op_canonical(Statistics::boson, 1.0, {OpTerm{1.0, {0, 2}, {1}}});
    CHECK(c == d);
}

TEST_CASE("graded commutator is an anticommutator for odd fermion operators") {
    const auto F = Statistics::fermion;
    cplx c;
    REQUIRE(is_central(graded_commutator(op_absorb(F, 1), op_emit(F, 1)), &c));
    CHECK(c == cplx(1.0));
    CHECK(is_zero(graded_commutator(op_emit(F, 1), op_emit(F, 2))));
    CHECK(grade(multiply(op_emit(F, 1), op_absorb(F, 2))) == 0);
}

TEST_CASE("truncated basis dimensions") {
    CHECK(make_basis(Statistics::boson, 2, 3).states.size() == 10);
    CHECK(make_basis(Statistics::fermion, 2, 3).states.size() == 4);
}

TEST_CASE("field expressions: term count, conjugate pairing, real at the origin") {
    const LatticeSpec spec = small_spec(Statistics::boson);
    const int N = spec.modes();
    const OpExpr phi = field_expr({0.3, 0.2, -0.1, 0.4}, spec);
    CHECK(int(phi.terms.size()) == 2 * N);
    // absorptions come first (mode order), then emissions on the antiparticle register
    for (int k = 0; k < N; ++k) {
        const auto& ab = phi.terms[k];
        const auto& em = phi.terms[N + k];
        CHECK(ab.ab[0] == k);
        CHECK(em.em[0] == N + k);
        CHECK(std::abs(em.coeff - std::conj(ab.coeff)) < 1e-15);
    }
    for (const auto& t : field_expr({0, 0, 0, 0}, spec).terms) {
        CHECK(t.coeff.imag() == 0.0);
        CHECK(t.coeff.real() > 0.0);
    }
    const OpExpr anti = antifield_expr({0, 0, 0, 0}, small_spec(Statistics::fermion));
    CHECK(int(anti.terms.size()) == 2 * N);
    for (int k = 0; k < N; ++k) CHECK(anti.terms[k].coeff.real() < 0.0);
}

TEST_CASE("coincident points give a vanishing field-antifield commutator") {
    for (auto s : {Statistics::boson, Statistics::fermion}) {
        const FourVector x{0.7, -0.2, 0.1, 0.5};
        CHECK(commutator_value(x, x, CommKind::field_antifield, small_spec(s)) == cplx(0.0));
    }
}

TEST_CASE("lattice fields need a positive mass") {
    LatticeSpec spec = small_spec(Statistics::boson);
    spec.mass = 0.0;
    CHECK_THROWS(field_expr({0, 0, 0, 0}, spec));
}

TEST_CASE("algebra and CCR suites") {
    all_pass(verify_fock_algebra(5));
    for (auto s : {Statistics::boson, Statistics::fermion}) {
        LatticeSpec spec = small_spec(s);
        spec.n_half = 2;
        all_pass(verify_ccr(spec));
    }
}

TEST_CASE("bridge deviation drops under refinement") {
    const BridgeReport b = commutator_vs_propagator({1.0, 0.0, 0.0, 0.0}, 1.0, {0.8, 0.4});
    CHECK(b.monotone);
    CHECK(b.rungs[1].deviation < b.rungs[0].deviation);
    CHECK(b.rungs[0].n_half * 0.8 >= 6.0);
}
