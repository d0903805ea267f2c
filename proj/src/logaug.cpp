#include "qcurve/logaug.hpp"

namespace qcurve {

LocalExpansion expand_local(const LogAugmented& f, const FieldElement& a, int order) {
    LocalExpansion out;
    out.main = series_expand(f.rational_part(), ExpansionPoint::at(a), order);
    for (const auto& t : f.log_terms()) {
        if (t.arg.has_pole_at(a) || t.arg.num().eval(a).is_zero())
            throw MathError("log singularity at expansion point " + a.str());
        FieldElement r0 = t.arg.eval(a);
        SeriesQ cs = series_expand(t.coeff, ExpansionPoint::at(a), order);
        // log r = log(r0) + log(r/r0); the second factor has constant term 1
        SeriesQ unit = series_expand(t.arg * RatQ(r0.inverse()), ExpansionPoint::at(a), order);
        out.main += cs * unit.log();
        if (!r0.is_one()) out.add_kappa(r0, cs);
    }
    return out;
}

InfinityExpansion expand_at_infinity(const LogAugmented& f, int order) {
    InfinityExpansion out;
    out.main = series_expand(f.rational_part(), ExpansionPoint::infinity(), order);
    out.logz = SeriesQ::zero(order);
    for (const auto& t : f.log_terms()) {
        if (t.arg.is_zero()) throw MathError("log of zero");
        // r(1/u) = u^{-mu} * (unit series),  log r = mu*log z + log(L0) + log(unit/L0)
        int mu = t.arg.num().degree() - t.arg.den().degree();
        SeriesQ rs = series_expand(t.arg, ExpansionPoint::infinity(), order + std::abs(mu) + 1);
        if (rs.is_zero() || rs.lowest() != -mu)
            throw MathError("expand_at_infinity: unexpected leading behaviour of log argument");
        FieldElement L0 = rs.coefficient(-mu);
        SeriesQ unit = (rs.shifted_by_power(mu) * L0.inverse()).truncated(order);
        SeriesQ cs = series_expand(t.coeff, ExpansionPoint::infinity(), order);
        out.main += cs * unit.log();
        out.logz += cs * FieldElement(mu);
        if (!L0.is_one()) {
            auto it = out.kappas.find(L0);
            if (it == out.kappas.end())
                out.kappas.emplace(L0, cs);
            else
                it->second += cs;
        }
    }
    return out;
}

PartialFractions partial_fractions(const RatQ& f, long& session_d) {
    PartialFractions out;
    if (f.is_zero()) return out;
    auto [quot, rem] = PolyQ::divrem(f.num(), f.den());
    out.poly = quot;
    if (rem.is_zero()) return out;
    RatQ proper(rem, f.den());
    auto roots = linear_roots(proper.den(), session_d, true);
    for (const auto& [root, mult] : roots) {
        SeriesQ s = series_expand(proper, ExpansionPoint::at(root), -1);
        std::vector<FieldElement> coeffs(mult, FieldElement(0));
        for (int j = 1; j <= mult; ++j) {
            if (-j >= s.val() || (!s.is_zero() && -j >= s.lowest())) coeffs[j - 1] = s.coefficient(-j);
        }
        out.parts.emplace(root, std::move(coeffs));
    }
    return out;
}

LogAugmented integrate_rational(const RatQ& f, long& session_d) {
    PartialFractions pf = partial_fractions(f, session_d);
    LogAugmented out;
    // polynomial part
    if (!pf.poly.is_zero()) {
        std::vector<FieldElement> v(pf.poly.degree() + 2, FieldElement(0));
        for (int i = 0; i <= pf.poly.degree(); ++i) v[i + 1] = div_by_long(pf.poly[i], i + 1);
        out += LogAugmented(RatQ(PolyQ(std::move(v))));
    }
    for (const auto& [root, coeffs] : pf.parts) {
        PolyQ lin(std::vector<FieldElement>{-root, FieldElement(1)});
        for (size_t j = 1; j <= coeffs.size(); ++j) {
            const FieldElement& A = coeffs[j - 1];
            if (A.is_zero()) continue;
            if (j == 1) {
                out += LogAugmented::log_of(RatQ(lin), RatQ(A));
            } else {
                // integral of A (z-root)^{-j} = -A/(j-1) (z-root)^{-(j-1)}
                FieldElement c = div_by_long(-A, static_cast<long>(j) - 1);
                out += LogAugmented(RatQ(PolyQ(c), lin.pow(static_cast<long>(j) - 1)));
            }
        }
    }
    return out;
}

LogAugmented integrate(const LogAugmented& f, long& session_d) {
    LogAugmented out = integrate_rational(f.rational_part(), session_d);
    for (const auto& t : f.log_terms()) {
        LogAugmented C = integrate_rational(t.coeff, session_d);
        if (C.has_logs())
            throw MathError("integrate: coefficient of a log term does not integrate rationally");
        RatQ Cr = C.rational();
        // by parts: int c log r = C log r - int C r'/r
        out += LogAugmented::log_of(t.arg, Cr);
        LogAugmented rest = integrate_rational(Cr * t.arg.derivative() / t.arg, session_d);
        out -= rest;
    }
    return out;
}

} // namespace qcurve
