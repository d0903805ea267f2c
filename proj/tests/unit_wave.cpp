#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcurve/oracles.hpp"
#include "qcurve/parser.hpp"
#include "qcurve/wave.hpp"

using namespace qcurve;

namespace {
FieldElement fe(long n, long d = 1) { return FieldElement(n, d); }
SpectralCurve catalan_curve() {
    return SpectralCurve::from_text("param = z\nx = z + 1/z\ny = 1/z\n");
}
// pole multiplicity of the rational part at a point
int pole_order_at(const LogAugmented& f, const FieldElement& a) {
    PolyQ lin = PolyQ::variable() - PolyQ(a);
    PolyQ d = f.rational_part().den();
    int m = 0;
    while (d.degree() >= 1 && (d % lin).is_zero()) {
        d = d / lin;
        ++m;
    }
    return m;
}
} // namespace

TEST_CASE("primitive of a basis differential") {
    SpectralCurve c = catalan_curve();
    Engine eng(c);
    WaveAssembler wa(eng);
    // (alpha = 1, k = 2), i.e. (z-1)^{-3} dz -> -(1/2)(z-1)^{-2}
    BasisIndex b{1, 2}; // branch index 1 is alpha = +1
    RatQ prim = wa.primitive_slot(b);
    PolyQ z = PolyQ::variable();
    PolyQ lin = z - PolyQ(1);
    CHECK(prim == RatQ(PolyQ(fe(-1, 2)), lin * lin));
    // derivative recovers the basis differential
    CHECK(prim.derivative() == RatQ(PolyQ(1), lin * lin * lin));
    // the basepoint variant differs by a constant only
    WaveAssembler wb(eng, PrimitiveChoice::Basepoint, fe(3));
    RatQ primb = wb.primitive_slot(b);
    CHECK(primb.derivative() == prim.derivative());
    CHECK(primb.eval(fe(3)).is_zero());
    CHECK_THROWS_AS(wa.primitive_slot(BasisIndex{1, 0}), MathError);
    CHECK_THROWS_AS(wa.primitive_diagonal(0, 2), MathError);
}

TEST_CASE("wave coefficients on the catalan curve") {
    SpectralCurve c = catalan_curve();
    Engine eng(c);
    WaveAssembler wa(eng);

    LogAugmented S0 = wa.s_coefficient(0);
    // dS0/dx = y
    CHECK(c.d_dx(S0) == c.y());
    CHECK(S0 == parse_expr("log(z) + 1/(2*z^2)", "z"));

    LogAugmented S1 = wa.s_coefficient(1);
    CHECK(S1 == parse_expr("(0-1/2)*log((z^2-1)/z^2)", "z"));
    // the closed form equals the regularised double-integral route
    CHECK(wa.s1_regularised() == S1);
    // dS1/dx = -z/(z^2-1)^2
    PolyQ z = PolyQ::variable();
    PolyQ d = (z * z - PolyQ(1));
    CHECK(c.d_dx(S1).rational() == RatQ(-z, d * d));

    // S_k has poles of order exactly 3k-3 at the branch points
    for (int k = 2; k <= 3; ++k) {
        LogAugmented Sk = wa.s_coefficient(k);
        CHECK(pole_order_at(Sk, fe(1)) == 3 * k - 3);
        CHECK(pole_order_at(Sk, fe(-1)) == 3 * k - 3);
    }
    CHECK_THROWS_AS(wa.s_coefficient(-1), GuardError);
}

TEST_CASE("diagonal primitive of omega11 has pole order 3") {
    SpectralCurve c = catalan_curve();
    Engine eng(c);
    WaveAssembler wa(eng);
    RatQ diag = wa.primitive_diagonal(1, 1);
    LogAugmented la(diag);
    CHECK(pole_order_at(la, fe(1)) == 3);
    CHECK(pole_order_at(la, fe(-1)) == 3);
}

TEST_CASE("primitive invariant: slotwise derivatives recover the invariant") {
    SpectralCurve c = catalan_curve();
    Engine eng(c);
    WaveAssembler wa(eng);
    // spot check: for every basis index used by omega^1_1, d/dz primitive = basis
    const SymTensor& T = eng.omega(1, 1).tensor;
    for (const auto& [K, cv] : T.terms())
        for (const auto& b : K) {
            RatQ prim = wa.primitive_slot(b);
            FieldElement alpha = eng.branch().points[b.alpha].alpha;
            PolyQ lin = PolyQ::variable() - PolyQ(alpha);
            CHECK(prim.derivative() == RatQ(PolyQ(1), lin.pow(b.k + 1)));
        }
}

TEST_CASE("loop functional") {
    SpectralCurve c = catalan_curve();
    Engine eng(c);
    PolyQ z = PolyQ::variable();
    CHECK(loop_functional(eng, LogAugmented(RatQ(PolyQ(1), z - PolyQ(1)))) == fe(-1));
    CHECK(loop_functional(eng, LogAugmented(fe(9))) == fe(0));
    CHECK(loop_functional(eng, LogAugmented(RatQ(PolyQ(1), z - PolyQ(1)) +
                                            RatQ(PolyQ(1), z + PolyQ(1)))) == fe(-2));
}

TEST_CASE("t-shift basics and group action") {
    SpectralCurve c = catalan_curve();
    Engine eng(c);
    WaveAssembler wa(eng);
    WaveExpansion w = wa.wave(4);

    // t = 0 is the identity
    WaveExpansion w0 = t_shift(w, fe(0));
    for (size_t k = 0; k < w.S.size(); ++k) CHECK(w0.S[k] == w.S[k]);

    // S_1(t) = S_1 + t y
    WaveExpansion w1 = t_shift(w, fe(5));
    CHECK(w1.S[1] == w.S[1] + c.y() * RatQ(fe(5)));

    // coefficient of t^1 in S_2(t) is (d/dx) S_1 = -z/(z^2-1)^2
    auto poly = t_shift_poly(w);
    PolyQ z = PolyQ::variable();
    PolyQ d = z * z - PolyQ(1);
    CHECK(poly[2][1].rational() == RatQ(-z, d * d));

    // group action: shifting by t1 then t2 equals shifting by t1 + t2
    WaveExpansion a = t_shift(t_shift(w, fe(1, 3)), fe(1, 2));
    WaveExpansion b = t_shift(w, fe(5, 6));
    for (size_t k = 0; k < w.S.size(); ++k) CHECK(a.S[k] == b.S[k]);
}

TEST_CASE("isomorphism invariance of S_k for k > 0") {
    // y -> y + g'(x) with g = x^2/2 changes only S_0 (by g(x))
    SpectralCurve c1 = catalan_curve();
    SpectralCurve c2 = SpectralCurve::from_text("param = z\nx = z + 1/z\ny = z + 2/z\n");
    Engine e1(c1), e2(c2);
    WaveAssembler w1(e1), w2(e2);
    for (int k = 1; k <= 3; ++k) CHECK(w1.s_coefficient(k) == w2.s_coefficient(k));
    // and dS0/dx changes by exactly g'(x) = x
    LogAugmented d0 = c2.d_dx(w2.s_coefficient(0)) - c1.d_dx(w1.s_coefficient(0));
    CHECK(d0.rational() == c1.x());
}

TEST_CASE("psi-bar series equals the closed form (engine side of the xexpansion identity)") {
    SpectralCurve c = catalan_curve();
    Engine eng(c);
    WaveAssembler wa(eng);
    WaveExpansion w = wa.wave(4);
    auto psibar = wave_x_series(eng, w, 8);
    auto closed = wave_x_expansion_closed(4);
    CHECK(psibar.coefficient(0) == HbarPoly(1));
    for (int e = 1; e <= 4; ++e) CHECK(psibar.coefficient(2 * e) == closed[e - 1]);
    for (int o = 1; o <= 7; o += 2) CHECK(psibar.coefficient(o) == HbarPoly());
}

TEST_CASE("gw curve wave: S0 integration with a log y") {
    SpectralCurve c = SpectralCurve::from_text("param = z\nconst q = 1\nx = z + q/z\ny = log(z)\n");
    Engine eng(c);
    WaveAssembler wa(eng);
    LogAugmented S0 = wa.s_coefficient(0);
    CHECK(c.d_dx(S0) == c.y());
    // S1 = -(1/2) log(1 - 1/z^2)
    LogAugmented S1 = wa.s_coefficient(1);
    CHECK(c.d_dx(S1).rational() ==
          RatQ(-PolyQ::variable(), (PolyQ::variable() * PolyQ::variable() - PolyQ(1)).pow(2)));
}
