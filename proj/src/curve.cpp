#include "qcurve/curve.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qcurve {

SpectralCurve::SpectralCurve(std::string param, RatQ x, LogAugmented y,
                             std::map<std::string, FieldElement> constants)
    : param_(std::move(param)), x_(std::move(x)), y_(std::move(y)), consts_(std::move(constants)) {
    if (x_.is_constant()) throw MathError("spectral curve: x must be nonconstant");
    if (y_.is_zero()) throw MathError("spectral curve: y must not vanish identically");
    xprime_ = x_.derivative();
    yprime_ = y_.derivative();
}

SpectralCurve SpectralCurve::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line, param, xs, ys;
    std::map<std::string, FieldElement> consts;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw MathError("curve file: missing '=' on line " + std::to_string(lineno));
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string s) {
            size_t i = s.find_first_not_of(" \t");
            size_t j = s.find_last_not_of(" \t");
            return i == std::string::npos ? std::string() : s.substr(i, j - i + 1);
        };
        key = trim(key);
        val = trim(val);
        if (key == "param") param = val;
        else if (key == "x") xs = val;
        else if (key == "y") ys = val;
        else if (key.rfind("const ", 0) == 0) consts[trim(key.substr(6))] = FieldElement::from_string(val);
        else throw MathError("curve file: unknown key '" + key + "' on line " + std::to_string(lineno));
    }
    if (param.empty() || xs.empty() || ys.empty())
        throw MathError("curve file: param, x and y are all required");
    LogAugmented x = parse_expr(xs, param, consts);
    if (x.has_logs()) throw MathError("curve file: x must be rational");
    LogAugmented y = parse_expr(ys, param, consts);
    return SpectralCurve(param, x.rational(), y, consts);
}

SpectralCurve SpectralCurve::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MathError("cannot open curve file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

std::string SpectralCurve::to_text() const {
    std::ostringstream os;
    os << "param = " << param_ << "\n";
    os << "x = " << print_rational(x_, param_) << "\n";
    os << "y = " << print_logaug(y_, param_) << "\n";
    return os.str();
}

const BranchData& SpectralCurve::validate() const {
    if (validated_) return branch_;
    RootSplit split = find_roots(xprime_.num(), session_d_, true);
    if (split.leftover.degree() > 0)
        throw MathError("zero of dx outside the working field; irreducible factor: " +
                        print_polynomial(split.leftover, param_));
    std::vector<BranchPoint> pts;
    for (const auto& [alpha, mult] : split.roots) {
        if (mult > 1)
            throw MathError("zero of dx at " + alpha.str() + " has multiplicity " +
                            std::to_string(mult) + "; simple zeros required");
        // y must be analytic at alpha (this also rejects log singularities)
        LocalExpansion ye = expand_local(y_, alpha, 2);
        (void)ye;
        // dy nonzero at alpha; for y with constant log coefficients dy is rational
        LogAugmented dy = yprime_;
        if (dy.has_logs())
            throw MathError("dy has log terms; unsupported y for this curve");
        if (dy.rational().has_pole_at(alpha))
            throw MathError("dy has a pole at branch point " + alpha.str());
        if (dy.rational().eval(alpha).is_zero())
            throw MathError("dy vanishes at branch point " + alpha.str());
        pts.push_back(BranchPoint{alpha});
    }
    std::sort(pts.begin(), pts.end(),
              [](const BranchPoint& a, const BranchPoint& b) { return a.alpha < b.alpha; });
    branch_.points = std::move(pts);
    validated_ = true;
    return branch_;
}

SeriesQ SpectralCurve::x_series(const FieldElement& alpha, int order) const {
    return series_expand(x_, ExpansionPoint::at(alpha), order);
}

LocalExpansion SpectralCurve::y_expansion(const FieldElement& alpha, int order) const {
    return expand_local(y_, alpha, order);
}

SeriesQ SpectralCurve::deck_transform(const FieldElement& alpha, int order) const {
    if (order < 1) throw MathError("deck_transform: order must be >= 1");
    validate();
    branch_.index_of(alpha); // throws when alpha is not a validated branch point

    // X(s) = x(alpha+s) - x(alpha) = c2 s^2 + ..., c2 != 0
    SeriesQ X = x_series(alpha, order + 1);
    X -= SeriesQ(X.coefficient(0), order + 1);
    if (X.is_zero() || X.lowest() != 2)
        throw MathError("deck_transform: x does not have a simple critical point at " + alpha.str());
    FieldElement c2 = X.coefficient(2);

    // sigma = -s + sum_{j>=2} a_j s^j solved by matching X(sigma) = X(s)
    std::vector<FieldElement> a(order + 1, FieldElement(0));
    a[1] = FieldElement(-1);
    for (int m = 2; m <= order; ++m) {
        SeriesQ sigma(1, std::vector<FieldElement>(a.begin() + 1, a.begin() + m), m + 1);
        // X(sigma_partial) with a_m = 0; the mismatch at order m+1 is linear in a_m
        SeriesQ comp = X.truncated(m + 1).compose(sigma);
        FieldElement mismatch = comp.coefficient(m + 1) - X.coefficient(m + 1);
        // [s^{m+1}] X(sigma) picks up a_m through 2 c2 * (-s) * a_m s^m
        a[m] = mismatch / (FieldElement(2) * c2);
    }
    SeriesQ sigma(1, std::vector<FieldElement>(a.begin() + 1, a.end()), order);

    // internal guards: x-invariance and the involution property
    SeriesQ comp = X.truncated(order + 1).compose(sigma) - X.truncated(order + 1);
    if (!comp.truncated(order).is_zero())
        throw MathError("deck_transform: x(sigma(s)) != x(s) (internal error)");
    SeriesQ invol = sigma.compose(sigma) - SeriesQ::monomial(FieldElement(1), 1).truncated(order);
    if (!invol.is_zero())
        throw MathError("deck_transform: sigma is not an involution (internal error)");
    return sigma;
}

} // namespace qcurve
