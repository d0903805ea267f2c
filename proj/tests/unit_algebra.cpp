#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcurve/laurent.hpp"
#include "qcurve/logaug.hpp"
#include "qcurve/parser.hpp"

#include <random>

using namespace qcurve;

namespace {

FieldElement fe(long n, long d = 1) { return FieldElement(n, d); }

std::mt19937 rng(20240811);

FieldElement random_scalar() {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    return FieldElement(num(rng), den(rng));
}

PolyQ random_poly(int maxdeg) {
    std::uniform_int_distribution<int> dd(0, maxdeg);
    int d = dd(rng);
    std::vector<FieldElement> c;
    for (int i = 0; i <= d; ++i) c.push_back(random_scalar());
    return PolyQ(std::move(c));
}

RatQ random_ratfunc() {
    PolyQ den;
    do {
        den = random_poly(2);
    } while (den.is_zero());
    return RatQ(random_poly(3), den);
}

SeriesQ random_series() {
    std::uniform_int_distribution<int> lo(-3, 2);
    int l = lo(rng);
    std::vector<FieldElement> c;
    for (int i = 0; i < 6; ++i) c.push_back(random_scalar());
    return SeriesQ(l, std::move(c), l + 8);
}

} // namespace

TEST_CASE("field element basics") {
    FieldElement a(3, 4), b(-1, 2);
    CHECK(a + b == fe(1, 4));
    CHECK(a * b == fe(-3, 8));
    CHECK((a / b) == fe(-3, 2));
    CHECK(a.pow(3) == fe(27, 64));
    CHECK(fe(0).is_zero());

    FieldElement r2 = FieldElement::sqrt_of(2);
    CHECK(r2 * r2 == fe(2));
    FieldElement x = fe(1) + r2; // 1 + sqrt 2
    CHECK(x * (fe(1) - r2) == fe(-1));
    CHECK(x.inverse() * x == fe(1));
    CHECK_THROWS_AS(FieldElement::sqrt_of(2) + FieldElement::sqrt_of(3), MathError);
    CHECK_THROWS_AS(fe(0).inverse(), MathError);
}

TEST_CASE("field element ring axioms on random values") {
    for (int i = 0; i < 200; ++i) {
        FieldElement a = random_scalar(), b = random_scalar(), c = random_scalar();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("polynomial arithmetic and ring axioms") {
    PolyQ z = PolyQ::variable();
    PolyQ p = z * z - PolyQ(1); // z^2 - 1
    CHECK(p.degree() == 2);
    CHECK(p.eval(fe(3)) == fe(8));
    CHECK(p.derivative() == z * fe(2));

    auto [q, r] = PolyQ::divrem(p, z - PolyQ(1));
    CHECK(r.is_zero());
    CHECK(q == z + PolyQ(1));

    for (int i = 0; i < 50; ++i) {
        PolyQ a = random_poly(3), b = random_poly(3), c = random_poly(3);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
    }

    // gcd((z-1)^2(z+1)^2, (z-1)^2(z+1)) = (z-1)^2(z+1)
    PolyQ g = PolyQ::gcd(p * p, p * (z - PolyQ(1)));
    CHECK(g == (p * (z - PolyQ(1))).monic());
}

TEST_CASE("taylor shift") {
    PolyQ z = PolyQ::variable();
    PolyQ p = z * z;
    PolyQ shifted = p.shifted(fe(1)); // (z+1)^2
    CHECK(shifted == z * z + z * fe(2) + PolyQ(1));
}

TEST_CASE("rational function canonical form") {
    PolyQ z = PolyQ::variable();
    RatQ f(z * z - PolyQ(1), (z - PolyQ(1)) * fe(2));
    // reduces to (z+1)/2
    CHECK(f.is_polynomial());
    CHECK(f.num() == (z + PolyQ(1)) * fe(1, 2));
    CHECK(f.eval(fe(1)) == fe(1));

    for (int i = 0; i < 50; ++i) {
        RatQ a = random_ratfunc(), b = random_ratfunc(), c = random_ratfunc();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("root finding") {
    PolyQ z = PolyQ::variable();
    long d = 0;
    // (z-1)(z+1)^2 z
    PolyQ p = (z - PolyQ(1)) * (z + PolyQ(1)) * (z + PolyQ(1)) * z;
    auto roots = linear_roots(p, d, false);
    REQUIRE(roots.size() == 3);
    bool seen1 = false, seenm1 = false, seen0 = false;
    for (auto& [r, m] : roots) {
        if (r == fe(1)) { seen1 = true; CHECK(m == 1); }
        if (r == fe(-1)) { seenm1 = true; CHECK(m == 2); }
        if (r == fe(0)) { seen0 = true; CHECK(m == 1); }
    }
    CHECK((seen1 && seenm1 && seen0));

    // z^2 - 2 requires the extension
    PolyQ q = z * z - PolyQ(2);
    long d2 = 0;
    auto roots2 = linear_roots(q, d2, true);
    CHECK(d2 == 2);
    REQUIRE(roots2.size() == 2);
    CHECK(roots2[0].first == FieldElement::sqrt_of(2));

    long d3 = 0;
    CHECK_THROWS_AS(linear_roots(z * z * z - PolyQ(2), d3, true), MathError);
}

TEST_CASE("series expansion examples") {
    PolyQ z = PolyQ::variable();

    // 1/(1-z) at 0, order 3 -> 1 + z + z^2 + z^3
    SeriesQ s = series_expand(RatQ(PolyQ(1), PolyQ(1) - z), ExpansionPoint::at(fe(0)), 3);
    CHECK(s.coefficient(0) == fe(1));
    CHECK(s.coefficient(1) == fe(1));
    CHECK(s.coefficient(2) == fe(1));
    CHECK(s.coefficient(3) == fe(1));
    CHECK_THROWS_AS(s.coefficient(4), MathError);

    // 1/z at 0: lowest order -1
    SeriesQ s2 = series_expand(RatQ(PolyQ(1), z), ExpansionPoint::at(fe(0)), 2);
    CHECK(s2.lowest() == -1);
    CHECK(s2.coefficient(-1) == fe(1));
    CHECK(s2.coefficient(0) == fe(0));

    // (z^2+1)/z at infinity in w = 1/z: w^-1 + w
    SeriesQ s3 = series_expand(RatQ(z * z + PolyQ(1), z), ExpansionPoint::infinity(), 3);
    CHECK(s3.lowest() == -1);
    CHECK(s3.coefficient(-1) == fe(1));
    CHECK(s3.coefficient(0) == fe(0));
    CHECK(s3.coefficient(1) == fe(1));
    CHECK(s3.coefficient(2) == fe(0));
}

TEST_CASE("series multiplicativity on random rational functions") {
    for (int i = 0; i < 30; ++i) {
        RatQ f = random_ratfunc(), g = random_ratfunc();
        if (f.is_zero() || g.is_zero()) continue;
        ExpansionPoint pt = ExpansionPoint::at(fe(0));
        if (f.den().eval(fe(0)).is_zero() || g.den().eval(fe(0)).is_zero()) pt = ExpansionPoint::at(fe(3));
        if (f.den().eval(fe(3)).is_zero() || g.den().eval(fe(3)).is_zero()) continue;
        SeriesQ sf = expand_rational(f, pt, 6), sg = expand_rational(g, pt, 6);
        SeriesQ sfg = expand_rational(f * g, pt, 6);
        SeriesQ prod = sf * sg;
        for (int o = std::max(sfg.val(), prod.val()) - 2; o <= prod.trunc() && o <= 6; ++o)
            CHECK(sfg.coefficient(o) == prod.coefficient(o));
    }
}

TEST_CASE("series log examples") {
    // log(1+s) = s - s^2/2 + s^3/3
    SeriesQ u(0, {fe(1), fe(1)}, 3);
    SeriesQ l = series_log(u);
    CHECK(l.coefficient(1) == fe(1));
    CHECK(l.coefficient(2) == fe(-1, 2));
    CHECK(l.coefficient(3) == fe(1, 3));

    SeriesQ one(fe(1), 5);
    CHECK(series_log(one).is_zero());

    SeriesQ bad(0, {fe(2), fe(1)}, 3);
    CHECK_THROWS_AS(series_log(bad), MathError);
}

TEST_CASE("series exp/log consistency") {
    for (int i = 0; i < 30; ++i) {
        std::vector<FieldElement> c;
        for (int j = 0; j < 5; ++j) c.push_back(random_scalar());
        SeriesQ v(1, std::move(c), 6); // valuation >= 1
        SeriesQ e = v.exp();
        SeriesQ back = series_log(e);
        for (int o = 1; o <= 6; ++o) CHECK(back.coefficient(o) == v.coefficient(o));
    }
}

TEST_CASE("series ring axioms") {
    for (int i = 0; i < 40; ++i) {
        SeriesQ a = random_series(), b = random_series(), c = random_series();
        SeriesQ lhs = (a + b) + c, rhs = a + (b + c);
        for (int o = -4; o <= std::min(lhs.trunc(), rhs.trunc()); ++o)
            CHECK(lhs.coefficient(o) == rhs.coefficient(o));
        SeriesQ l2 = a * (b + c), r2 = a * b + a * c;
        for (int o = -8; o <= std::min(l2.trunc(), r2.trunc()); ++o)
            CHECK(l2.coefficient(o) == r2.coefficient(o));
    }
}

TEST_CASE("series inverse and composition") {
    PolyQ z = PolyQ::variable();
    SeriesQ s = series_expand(RatQ(PolyQ(1) + z), ExpansionPoint::at(fe(0)), 8);
    SeriesQ inv = s.truncated(8).inverse();
    SeriesQ prod = s * inv;
    CHECK(prod.coefficient(0) == fe(1));
    for (int o = 1; o <= 6; ++o) CHECK(prod.coefficient(o) == fe(0));

    // reversion: w = u/(1+u^2) gives u = w + w^3 + 2w^5 + 5w^7 (Catalan)
    SeriesQ g = series_expand(RatQ(z, PolyQ(1) + z * z), ExpansionPoint::at(fe(0)), 9);
    SeriesQ u = series_reversion(g, 9);
    CHECK(u.coefficient(1) == fe(1));
    CHECK(u.coefficient(3) == fe(1));
    CHECK(u.coefficient(5) == fe(2));
    CHECK(u.coefficient(7) == fe(5));
    CHECK(u.coefficient(9) == fe(14));
    // g(u(w)) = w
    SeriesQ check = g.compose(u);
    CHECK(check.coefficient(1) == fe(1));
    for (int o = 2; o <= 8; ++o) CHECK(check.coefficient(o) == fe(0));
}

TEST_CASE("parser examples") {
    // "z + 1/z" -> (z^2+1)/z
    LogAugmented f = parse_expr("z + 1/z", "z");
    CHECK(!f.has_logs());
    PolyQ z = PolyQ::variable();
    CHECK(f.rational() == RatQ(z * z + PolyQ(1), z));

    LogAugmented g = parse_expr("log(z)", "z");
    CHECK(g.rational_part().is_zero());
    REQUIRE(g.log_terms().size() == 1);
    CHECK(g.log_terms()[0].coeff == RatQ(1));
    CHECK(g.log_terms()[0].arg == RatQ(z));

    try {
        parse_expr("z + + 1", "z");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }

    CHECK_THROWS_AS(parse_expr("log(2)", "z"), ParseError);
    CHECK_THROWS_AS(parse_expr("1/(z - z)", "z"), ParseError);

    // constants
    LogAugmented h = parse_expr("z + q/z", "z", {{"q", fe(1)}});
    CHECK(h.rational() == f.rational());
}

TEST_CASE("printer round trip") {
    std::vector<std::string> samples = {
        "z + 1/z", "1 - z^2", "(3*z^2 - 1/2*z + 4)/(z^3 - 1)", "log(z) + z", "-z + 2",
        "(1/2)*log(1 - z^-2 + z^2)"};
    for (const auto& s : samples) {
        LogAugmented v = parse_expr(s, "z");
        std::string printed = print_logaug(v, "z");
        LogAugmented again = parse_expr(printed, "z");
        CHECK(v == again);
    }
}

TEST_CASE("logaug derivative") {
    // d/dz [z*log(z)] = log(z) + 1
    LogAugmented f = parse_expr("z*log(z)", "z");
    LogAugmented d = f.derivative();
    CHECK(d == parse_expr("log(z) + 1", "z"));

    // derivative of a pure rational matches rational differentiation
    for (int i = 0; i < 20; ++i) {
        RatQ r = random_ratfunc();
        CHECK(LogAugmented(r).derivative().rational() == r.derivative());
    }
}

TEST_CASE("local expansion with log terms") {
    // log(z) at z=1: log(1+s) series, no kappa
    LogAugmented f = parse_expr("log(z)", "z");
    LocalExpansion e = expand_local(f, fe(1), 4);
    CHECK(!e.has_kappas());
    CHECK(e.main.coefficient(1) == fe(1));
    CHECK(e.main.coefficient(2) == fe(-1, 2));

    // log(z) at z=-1: kappa tagged -1, series log(1-s)... argument ratio (z)/(-1)
    LocalExpansion e2 = expand_local(f, fe(-1), 4);
    REQUIRE(e2.kappas.size() == 1);
    CHECK(e2.kappas.count(fe(-1)) == 1);
    CHECK(e2.kappas.at(fe(-1)).coefficient(0) == fe(1));
    // main: log((-1+s)/(-1)) = log(1-s) = -s - s^2/2 - ...
    CHECK(e2.main.coefficient(1) == fe(-1));
    CHECK(e2.main.coefficient(2) == fe(-1, 2));
    CHECK_THROWS_AS(e2.coefficient_strict(0), MathError);
    CHECK(e2.coefficient_strict(1) == fe(-1));
}

TEST_CASE("rational integration") {
    long d = 0;
    PolyQ z = PolyQ::variable();
    // integral of (1/z)(1 - 1/z^2) dz = log z + 1/(2 z^2)
    RatQ integrand = RatQ(PolyQ(1), z) * (RatQ(1) - RatQ(PolyQ(1), z * z));
    LogAugmented F = integrate_rational(integrand, d);
    LogAugmented expect = parse_expr("log(z) + 1/(2*z^2)", "z");
    CHECK(F == expect);
    // d/dz recovers the integrand
    CHECK(F.derivative().rational() == integrand);

    // integrate log-augmented: (log z) * (1 - 1/z^2)
    LogAugmented y = parse_expr("log(z)", "z");
    LogAugmented ydx = y * (RatQ(1) - RatQ(PolyQ(1), z * z));
    LogAugmented S0 = integrate(ydx, d);
    CHECK(S0.derivative() == ydx);
}

TEST_CASE("infinity expansion of log-augmented") {
    // log(1 - z^-2) => main series, logz coefficient 0
    LogAugmented f = parse_expr("log((z^2-1)/z^2)", "z");
    InfinityExpansion e = expand_at_infinity(f, 6);
    CHECK(e.logz.is_zero());
    CHECK(e.kappas.empty());
    CHECK(e.main.coefficient(2) == fe(-1));
    CHECK(e.main.coefficient(4) == fe(-1, 2));

    // log(z): logz coefficient 1
    InfinityExpansion e2 = expand_at_infinity(parse_expr("log(z)", "z"), 6);
    CHECK(e2.main.is_zero());
    CHECK(e2.logz.coefficient(0) == fe(1));
}
