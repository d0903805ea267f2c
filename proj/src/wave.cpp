#include "qcurve/wave.hpp"

namespace qcurve {

WaveAssembler::WaveAssembler(Engine& eng, PrimitiveChoice choice, FieldElement basepoint)
    : eng_(eng), choice_(choice), basepoint_(std::move(basepoint)) {
    if (choice_ == PrimitiveChoice::Basepoint) {
        for (const auto& bp : eng_.branch().points)
            if (bp.alpha == basepoint_)
                throw MathError("basepoint primitive: basepoint must avoid the branch points");
    }
}

RatQ WaveAssembler::primitive_slot(const BasisIndex& b) const {
    if (b.k < 1)
        throw MathError("primitive_slot: residue term k = 0 cannot appear (corrupt input)");
    FieldElement alpha = eng_.branch().points[b.alpha].alpha;
    PolyQ z = PolyQ::variable();
    PolyQ lin = z - PolyQ(alpha);
    RatQ prim = RatQ(PolyQ(FieldElement(-1, b.k)), lin.pow(b.k));
    if (choice_ == PrimitiveChoice::Basepoint) {
        // subtract the value at the basepoint, i.e. integrate from z0
        FieldElement at0 = prim.eval(basepoint_);
        prim -= RatQ(at0);
    }
    return prim;
}

RatQ WaveAssembler::primitive_diagonal(int g, int n) {
    const Multidifferential& md = eng_.omega(g, n);
    if (!md.stable) throw MathError("primitive_diagonal: unstable (g, n); the two-point part is handled by the regularised S_1");
    RatQ out;
    for (const auto& [K, c] : md.tensor.terms()) {
        // ordered coefficient times the number of arrangements of the key
        std::map<BasisIndex, int> mult;
        for (const auto& b : K) ++mult[b];
        FieldElement weight = factorial(n);
        for (const auto& [b, m] : mult) weight /= factorial(m);
        RatQ prod(c * weight);
        for (const auto& b : K) prod *= primitive_slot(b);
        out += prod;
    }
    return out;
}

LogAugmented WaveAssembler::s_coefficient(int k) {
    if (k < 0) throw GuardError("s_coefficient: k >= 0");
    const SpectralCurve& c = eng_.curve();
    if (k == 0) {
        LogAugmented ydx = c.y() * c.xprime();
        return integrate(ydx, c.session_d());
    }
    if (k == 1) {
        if (c.xprime().is_constant()) return LogAugmented(); // constant, dropped
        return LogAugmented::log_of(c.xprime(), RatQ(FieldElement(-1, 2)));
    }
    LogAugmented out;
    for (int g = 0; 2 * g - 1 <= k; ++g) {
        int n = k + 1 - 2 * g;
        if (n < 1 || !is_stable(g, n)) continue;
        // the wave function is assembled in the generating-function
        // normalisation, which carries (-1)^n relative to the recursion's
        // invariants (the same identification as the x-expansion tables)
        RatQ contrib = primitive_diagonal(g, n) / RatQ(factorial(n));
        if (n % 2 == 1) contrib = -contrib;
        out += LogAugmented(contrib);
    }
    return out;
}

WaveExpansion WaveAssembler::wave(int K) {
    WaveExpansion w;
    w.curve = &eng_.curve();
    w.primitive = choice_;
    for (int k = 0; k <= K; ++k) w.S.push_back(s_coefficient(k));
    w.normalisation = "S_0 constant from partial-fraction integration; S_1 constant dropped";
    return w;
}

LogAugmented WaveAssembler::s1_regularised() const {
    /* Diagonal limit of F^0_2 = log((z1 - z2)/(x(z1) - x(z2))): cancel the
     * (z2 - z1) factor exactly and evaluate at z2 = z1.  The result must be
     * 1/x'(z1), giving S_1 = (1/2) log(1/x') = -(1/2) log(dx/dz).
     */
    using K1 = RatQ;
    using P1 = Polynomial<K1>;
    using R1 = RationalFunction<K1>;
    const RatQ& x = eng_.curve().x();
    auto lift_poly = [](const PolyQ& p) {
        std::vector<K1> cs;
        for (const auto& cc : p.coeffs()) cs.push_back(RatQ(cc));
        return P1(cs);
    };
    K1 z1 = RatQ::variable();
    R1 x2(lift_poly(x.num()), lift_poly(x.den()));
    R1 xdiff = R1(P1(K1(x))) - x2; // x(z1) - x(z2), rational in z2 over Q(z1)
    P1 lin = P1(std::vector<K1>{z1, K1(-1)}); // z1 - z2
    auto [q, r] = P1::divrem(xdiff.num(), lin);
    if (!r.is_zero())
        throw MathError("s1_regularised: x(z1) - x(z2) not divisible by (z1 - z2)");
    // (z1 - z2)/(x1 - x2) = den(xdiff)/q, evaluated at z2 = z1
    K1 ratio = xdiff.den().eval(z1) / q.eval(z1);
    // ratio must be 1/x'
    if (!(ratio * eng_.curve().xprime() == RatQ(1)))
        throw MathError("s1_regularised: diagonal limit disagrees with 1/x'");
    if (eng_.curve().xprime().is_constant()) return LogAugmented();
    return LogAugmented::log_of(eng_.curve().xprime(), RatQ(FieldElement(-1, 2)));
}

FieldElement loop_functional(Engine& eng, const LogAugmented& f) {
    const SpectralCurve& c = eng.curve();
    LogAugmented dy = c.yprime();
    if (dy.has_logs()) throw MathError("loop_functional: dy must be rational");
    FieldElement out(0);
    for (const auto& bp : eng.branch().points) {
        // order bound: pole multiplicity of f's denominators at alpha
        int mult = 0;
        PolyQ lin = PolyQ::variable() - PolyQ(bp.alpha);
        auto count_mult = [&](const RatQ& r) {
            PolyQ d = r.den();
            int m = 0;
            while (d.degree() >= 1 && (d % lin).is_zero()) {
                d = d / lin;
                ++m;
            }
            return m;
        };
        mult = count_mult(f.rational_part());
        for (const auto& t : f.log_terms()) mult = std::max(mult, count_mult(t.coeff));
        LocalExpansion fe = expand_local(f, bp.alpha, mult + 2);
        SeriesQ dys = series_expand(dy.rational(), ExpansionPoint::at(bp.alpha), mult + 2);
        out += (fe * dys).residue_strict();
    }
    return out;
}

WaveExpansion t_shift(const WaveExpansion& w, const FieldElement& t) {
    if (!w.curve) throw MathError("t_shift: empty wave");
    const SpectralCurve& c = *w.curve;
    int K = static_cast<int>(w.S.size()) - 1;
    // iterated d/dx of each S_j
    std::vector<std::vector<LogAugmented>> dxm(K + 1);
    for (int j = 0; j <= K; ++j) {
        dxm[j].push_back(w.S[j]);
        for (int m = 1; m + j <= K; ++m) dxm[j].push_back(c.d_dx(dxm[j].back()));
    }
    WaveExpansion out;
    out.curve = w.curve;
    out.primitive = w.primitive;
    out.normalisation = w.normalisation + "; t-shifted by " + t.str();
    std::vector<FieldElement> tpow{FieldElement(1)};
    for (int m = 1; m <= K; ++m) tpow.push_back(tpow.back() * t);
    for (int k = 0; k <= K; ++k) {
        LogAugmented Sk;
        for (int m = 0; m <= k; ++m)
            Sk += dxm[k - m][m] * RatQ(tpow[m] / factorial(m));
        out.S.push_back(Sk);
    }
    return out;
}

std::vector<std::vector<LogAugmented>> t_shift_poly(const WaveExpansion& w) {
    if (!w.curve) throw MathError("t_shift_poly: empty wave");
    const SpectralCurve& c = *w.curve;
    int K = static_cast<int>(w.S.size()) - 1;
    std::vector<std::vector<LogAugmented>> dxm(K + 1);
    for (int j = 0; j <= K; ++j) {
        dxm[j].push_back(w.S[j]);
        for (int m = 1; m + j <= K; ++m) dxm[j].push_back(c.d_dx(dxm[j].back()));
    }
    std::vector<std::vector<LogAugmented>> out(K + 1);
    for (int k = 0; k <= K; ++k)
        for (int m = 0; m <= k; ++m)
            out[k].push_back(dxm[k - m][m] * RatQ(FieldElement(1) / factorial(m)));
    return out;
}

LaurentSeries<HbarPoly> wave_x_series(Engine& eng, const WaveExpansion& w, int order) {
    int K = static_cast<int>(w.S.size()) - 1;
    SeriesQ uw = eng.u_of_w(order + 2);
    // z(w) * w: unit series needed for the log z - log x mismatch
    SeriesQ zw = uw.inverse(); // z as series in w, lowest order -1
    SeriesQ zw_unit = zw.shifted_by_power(1);
    if (!(zw_unit.coefficient(0) == FieldElement(1)))
        throw MathError("wave_x_series: expansion branch must have z/x -> 1");

    std::vector<HbarPoly> coeffs; // series in w over Laurent polynomials in hbar
    LaurentSeries<HbarPoly> total(0, {}, order);
    for (int k = 0; k <= K; ++k) {
        InfinityExpansion e = expand_at_infinity(w.S[k], order + 2);
        if (!e.kappas.empty())
            throw MathError("wave_x_series: transcendental log constant in S_" + std::to_string(k));
        // log z coefficient: hbar^{-1} from S_0 only (that part merges with
        // the x^{-1/hbar} normalisation), zero otherwise
        if (k == 0) {
            if (!(e.logz == SeriesQ(FieldElement(1), e.logz.trunc())))
                throw MathError("wave_x_series: S_0 must carry exactly log z at infinity");
        } else if (!e.logz.is_zero()) {
            throw MathError("wave_x_series: S_" + std::to_string(k) + " has a log z tail");
        }
        SeriesQ main_w = e.main.set_point(ExpansionPoint::formal()).compose(uw).truncated(order);
        if (k == 0) main_w += zw_unit.log().truncated(order); // log z - log x
        if (!main_w.is_zero() && main_w.lowest() < 1)
            throw MathError("wave_x_series: S_" + std::to_string(k) +
                            " has a nonzero constant at infinity (normalise first)");
        // accumulate hbar^{k-1} * main_w
        std::vector<HbarPoly> v;
        int lo = main_w.is_zero() ? 1 : main_w.lowest();
        for (int o = lo; o <= order; ++o)
            v.push_back(HbarPoly::monomial(main_w.is_zero() ? FieldElement(0) : main_w.coefficient(o), k - 1));
        total += LaurentSeries<HbarPoly>(lo, std::move(v), order);
    }
    return total.exp();
}

} // namespace qcurve
