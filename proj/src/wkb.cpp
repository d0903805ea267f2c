#include "qcurve/wkb.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qcurve {

namespace {

using HSeries = LaurentSeries<RatQ>; // formal series in hbar with rational-function coefficients

HSeries hseries_const(const RatQ& f, int K) { return HSeries(0, {f}, K); }

// apply hbar * d/dx coefficientwise and shift the hbar-power by one
HSeries hbar_dx(const HSeries& e, const SpectralCurve& c, int K) {
    if (e.is_zero()) return HSeries::zero(K);
    std::vector<RatQ> v;
    for (int o = e.lowest(); o <= std::min(e.trunc(), K); ++o) v.push_back(c.d_dx(e.coefficient(o)));
    return HSeries(e.lowest() + 1, std::move(v), std::min(e.trunc() + 1, K) + 0);
}

/* residuals of a differential operator acting on exp(sum hbar^{m-1} S_m),
 * written on the exponent: coefficients of hbar^0..hbar^K of
 * sum_{k',a,b} c hbar^{k'} x^a E_b, with E_0 = 1, E_{b+1} = u E_b + hbar dE_b/dx
 * and u = sum_m hbar^m dS_m/dx.
 */
std::vector<RatQ> residuals_differential(const OperatorPolynomial& op, const SpectralCurve& c,
                                         const std::vector<RatQ>& dSdx, int K) {
    std::vector<RatQ> uc(dSdx.begin(), dSdx.end());
    uc.resize(K + 1, RatQ(0));
    HSeries u(0, std::move(uc), K);
    int bmax = 0;
    for (const auto& Pk : op.P)
        for (const auto& [ab, cv] : Pk) bmax = std::max(bmax, ab.second);
    std::vector<HSeries> E{hseries_const(RatQ(1), K)};
    for (int b = 0; b < bmax; ++b) E.push_back(u * E[b] + hbar_dx(E[b], c, K));

    HSeries total = HSeries::zero(K);
    for (size_t kp = 0; kp < op.P.size(); ++kp) {
        for (const auto& [ab, cv] : op.P[kp]) {
            auto [a, b] = ab;
            if (b < 0) throw MathError("differential operator with negative y power");
            HSeries term = E[b] * RatQ(c.x().pow(a) * cv);
            total += term.shifted_by_power(static_cast<int>(kp)).truncated(K);
        }
    }
    std::vector<RatQ> out;
    for (int k = 0; k <= K; ++k) out.push_back(total.coefficient(k));
    return out;
}

struct LinearSolveResult {
    std::vector<FieldElement> solution; // minimal support: free variables zero
    int nullity = 0;
    bool consistent = true;
};

LinearSolveResult solve_linear(std::vector<std::vector<FieldElement>> M,
                               std::vector<FieldElement> rhs) {
    size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t sel = r;
        while (sel < rows && M[sel][col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(M[sel], M[r]);
        std::swap(rhs[sel], rhs[r]);
        FieldElement inv = M[r][col].inverse();
        for (size_t j = col; j < cols; ++j) M[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][col].is_zero()) continue;
            FieldElement f = M[i][col];
            for (size_t j = col; j < cols; ++j) M[i][j] -= f * M[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++r;
    }
    LinearSolveResult out;
    for (size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) {
            out.consistent = false;
            return out;
        }
    out.solution.assign(cols, FieldElement(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
        out.solution[pivot_col_of_row[i]] = rhs[i];
    out.nullity = static_cast<int>(cols - pivot_col_of_row.size());
    return out;
}

std::map<std::pair<int, int>, FieldElement> parse_poly_line(const std::string& text, bool& saw_shift);

} // namespace

BivariateSymbol semiclassical_limit(const OperatorPolynomial& op) {
    if (op.P.empty() || op.P[0].empty())
        throw MathError("semiclassical_limit: empty operator");
    return op.P[0];
}

RatQ symbol_on_curve(const BivariateSymbol& s, const SpectralCurve& c) {
    RatQ out;
    const LogAugmented& y = c.y();
    for (const auto& [ab, cv] : s) {
        auto [a, b] = ab;
        RatQ term = c.x().pow(a) * cv;
        if (b != 0) {
            if (y.has_logs())
                throw MathError("symbol_on_curve: rational y required for a y-power");
            term *= y.rational().pow(b);
        }
        out += term;
    }
    return out;
}

WKBSystem wkb_solve(const OperatorPolynomial& op, const SpectralCurve& curve, int K) {
    if (op.flavour != OperatorPolynomial::Flavour::Differential)
        throw MathError("wkb_solve: differential flavour required (use difference_wkb_check)");
    if (curve.y().has_logs()) throw MathError("wkb_solve: rational y required");
    RatQ y = curve.y().rational();

    // semiclassical limit must vanish on the curve
    BivariateSymbol P0 = semiclassical_limit(op);
    if (!symbol_on_curve(P0, curve).is_zero())
        throw MathError("wkb_solve: the semiclassical limit does not vanish on the curve");
    // coefficient of the new unknown: dP0/dy on the curve
    RatQ C;
    for (const auto& [ab, cv] : P0) {
        auto [a, b] = ab;
        if (b >= 1) C += curve.x().pow(a) * y.pow(b - 1) * (cv * FieldElement(b));
    }
    if (C.is_zero()) throw MathError("wkb_solve: dP/dy vanishes identically on the curve");

    WKBSystem sys;
    sys.dSdx.push_back(y);
    for (int k = 1; k <= K; ++k) {
        sys.dSdx.push_back(RatQ(0));
        std::vector<RatQ> res = residuals_differential(op, curve, sys.dSdx, k);
        sys.dSdx.back() = -(res[k] / C);
    }
    sys.residuals = residuals_differential(op, curve, sys.dSdx, K);
    for (const auto& rr : sys.residuals)
        if (!rr.is_zero()) throw MathError("wkb_solve: triangular solve left a residual (internal)");
    return sys;
}

std::vector<LogAugmented> verify_quantum_curve(const OperatorPolynomial& op,
                                               const WaveExpansion& wave, int K) {
    if (op.flavour != OperatorPolynomial::Flavour::Differential)
        throw MathError("verify_quantum_curve: flavour mismatch (difference operator)");
    if (!wave.curve) throw MathError("verify_quantum_curve: empty wave");
    const SpectralCurve& c = *wave.curve;
    if (static_cast<int>(wave.S.size()) <= K)
        throw MathError("verify_quantum_curve: wave has too few S_k");
    std::vector<RatQ> dSdx;
    for (int k = 0; k <= K; ++k) dSdx.push_back(c.d_dx(wave.S[k]).rational());
    std::vector<RatQ> res = residuals_differential(op, c, dSdx, K);
    std::vector<LogAugmented> out;
    for (const auto& rr : res) out.push_back(LogAugmented(rr));
    return out;
}

ReconstructionResult reconstruct_operator(const WaveExpansion& wave, const BivariateSymbol& P0,
                                          int dx_bound, int dy_bound, int K) {
    if (!wave.curve) throw MathError("reconstruct_operator: empty wave");
    const SpectralCurve& c = *wave.curve;
    if (c.y().has_logs()) throw MathError("reconstruct_operator: rational y required");
    RatQ y = c.y().rational();
    if (static_cast<int>(wave.S.size()) <= K)
        throw MathError("reconstruct_operator: wave has too few S_k");

    ReconstructionResult out;
    out.op.flavour = OperatorPolynomial::Flavour::Differential;
    out.op.P.push_back(P0);

    std::vector<RatQ> dSdx;
    for (int k = 0; k <= K; ++k) dSdx.push_back(c.d_dx(wave.S[k]).rational());

    // candidate monomials within bounds
    std::vector<std::pair<int, int>> monos;
    std::vector<RatQ> mono_fun;
    for (int a = 0; a <= dx_bound; ++a)
        for (int b = 0; b <= dy_bound; ++b) {
            monos.push_back({a, b});
            mono_fun.push_back(c.x().pow(a) * y.pow(b));
        }

    for (int k = 1; k <= K; ++k) {
        std::vector<RatQ> res = residuals_differential(out.op, c, dSdx, k);
        RatQ target = -res[k];
        // common denominator over the monomials and the target
        PolyQ den(1);
        auto lcm_in = [&den](const PolyQ& d) {
            PolyQ g = PolyQ::gcd(den, d);
            den = (den * d) / g;
        };
        for (const auto& f : mono_fun) lcm_in(f.den());
        lcm_in(target.den());
        std::vector<PolyQ> cols;
        int maxdeg = 0;
        for (const auto& f : mono_fun) {
            PolyQ p = f.num() * (den / f.den());
            maxdeg = std::max(maxdeg, p.degree());
            cols.push_back(std::move(p));
        }
        PolyQ rp = target.num() * (den / target.den());
        maxdeg = std::max(maxdeg, rp.degree());

        std::vector<std::vector<FieldElement>> M(maxdeg + 1,
                                                 std::vector<FieldElement>(cols.size(), FieldElement(0)));
        std::vector<FieldElement> rhs(maxdeg + 1, FieldElement(0));
        for (size_t j = 0; j < cols.size(); ++j)
            for (int i = 0; i <= cols[j].degree(); ++i) M[i][j] = cols[j][i];
        for (int i = 0; i <= rp.degree(); ++i) rhs[i] = rp[i];

        LinearSolveResult sol = solve_linear(std::move(M), std::move(rhs));
        if (!sol.consistent)
            throw MathError("reconstruct_operator: no polynomial correction within bounds at order " +
                            std::to_string(k));
        std::map<std::pair<int, int>, FieldElement> Pk;
        for (size_t j = 0; j < monos.size(); ++j)
            if (!sol.solution[j].is_zero()) Pk[monos[j]] = sol.solution[j];
        out.op.P.push_back(std::move(Pk));
        out.solution_space_dim.push_back(sol.nullity);
    }
    return out;
}

std::vector<RatQ> difference_wkb_check(const OperatorPolynomial& op, Engine& eng, int K,
                                       std::optional<FieldElement> t_param) {
    if (op.flavour != OperatorPolynomial::Flavour::Difference)
        throw MathError("difference_wkb_check: flavour mismatch (differential operator)");
    const SpectralCurve& c = eng.curve();
    // y = lambda log z with integer lambda
    const LogAugmented& y = c.y();
    if (!y.rational_part().is_zero() || y.log_terms().size() != 1 ||
        !(y.log_terms()[0].arg == RatQ::variable()) || !y.log_terms()[0].coeff.is_constant())
        throw MathError("difference_wkb_check: curve must have y = lambda log z");
    FieldElement lambda = y.log_terms()[0].coeff.num().constant_term();
    mpq_class lq = lambda.to_mpq();
    if (lq.get_den() != 1) throw MathError("difference_wkb_check: lambda must be an integer");
    long lam = lq.get_num().get_si();

    // operator parameter t from the constant hbar^1 part: (t - 1/2) hbar
    FieldElement t;
    if (t_param) t = *t_param;
    else {
        FieldElement c1(0);
        if (op.P.size() > 1) {
            for (const auto& [ab, cv] : op.P[1]) {
                if (ab != std::pair<int, int>{0, 0})
                    throw MathError("difference_wkb_check: cannot read t from a non-constant hbar^1 part");
                c1 = cv;
            }
        }
        t = c1 + FieldElement(1, 2);
    }

    // t-shifted wave out of the recursion
    WaveAssembler wa(eng);
    WaveExpansion base = wa.wave(K);
    WaveExpansion wv = t_shift(base, -t);

    // iterated d/dx; m >= 1 derivatives must all be rational
    int M = K + 1;
    std::vector<std::vector<RatQ>> dd(K + 1);
    for (int k = 0; k <= K; ++k) {
        LogAugmented cur = wv.S[k];
        for (int m = 1; m <= M - k; ++m) {
            cur = c.d_dx(cur);
            if (k == 0 && m == 1) {
                // dS_0/dx = y; enters only through z^{j lambda}
                LogAugmented diff = cur - y;
                if (!diff.is_zero() && diff.has_logs())
                    throw MathError("difference_wkb_check: dS_0/dx != y");
                if (!diff.is_zero() && !diff.rational().is_zero())
                    throw MathError("difference_wkb_check: dS_0/dx != y");
                dd[0].push_back(RatQ(0)); // placeholder, unused
                continue;
            }
            dd[k].push_back(cur.rational());
        }
    }
    auto dmx = [&](int k, int m) -> const RatQ& { // (d/dx)^m S_k, m >= 1
        return dd[k][m - 1];
    };

    int jmin = 0, jmax = 0;
    for (const auto& Pk : op.P)
        for (const auto& [ab, cv] : Pk) {
            jmin = std::min(jmin, ab.second);
            jmax = std::max(jmax, ab.second);
        }

    PolyQ zp = PolyQ::variable();
    HSeries total = HSeries::zero(K);
    std::map<int, HSeries> Ej;
    for (int j = jmin; j <= jmax; ++j) {
        if (j == 0) {
            Ej.emplace(0, hseries_const(RatQ(1), K));
            continue;
        }
        // T_{j,l} = sum_{m=1}^{l+1} j^m/m! (d/dx)^m S_{l+1-m}, l >= 1
        std::vector<RatQ> T(K + 1, RatQ(0));
        for (int l = 1; l <= K; ++l) {
            RatQ acc;
            for (int m = 1; m <= l + 1; ++m) {
                int k = l + 1 - m;
                if (k == 0 && m == 1) continue; // that is j*y, handled as z^{j lambda}
                FieldElement jm = FieldElement(j).pow(m) / factorial(m);
                acc += dmx(k, m) * jm;
            }
            T[l] = acc;
        }
        Ej.emplace(j, HSeries(0, std::move(T), K).exp());
    }

    for (size_t kp = 0; kp < op.P.size(); ++kp) {
        for (const auto& [ab, cv] : op.P[kp]) {
            auto [a, j] = ab;
            RatQ zshift = RatQ(zp).pow(j * lam);
            HSeries term = Ej.at(j) * (c.x().pow(a) * zshift * cv);
            total += term.shifted_by_power(static_cast<int>(kp)).truncated(K);
        }
    }
    std::vector<RatQ> out;
    for (int k = 0; k <= K; ++k) out.push_back(total.coefficient(k));
    return out;
}

namespace {

std::map<std::pair<int, int>, FieldElement> parse_poly_line(const std::string& text, bool& saw_shift) {
    // sum of monomials: [+|-] [coef] {* var[^[-]exp]}, vars x, y, Yp, Ym
    std::map<std::pair<int, int>, FieldElement> out;
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip();
    bool first = true;
    while (i < text.size()) {
        FieldElement sign(1);
        skip();
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = FieldElement(-1);
            ++i;
        } else if (!first) {
            throw MathError("operator parse: expected '+' or '-' at offset " + std::to_string(i));
        }
        first = false;
        skip();
        FieldElement coef = sign;
        int a = 0, b = 0;
        bool any = false;
        bool expect_factor = true;
        while (expect_factor && i < text.size()) {
            skip();
            if (std::isdigit(static_cast<unsigned char>(text[i]))) {
                size_t j = i;
                while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/'))
                    ++j;
                coef = coef * FieldElement::from_string(text.substr(i, j - i));
                i = j;
                any = true;
            } else if (std::isalpha(static_cast<unsigned char>(text[i]))) {
                size_t j = i;
                while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
                std::string var = text.substr(i, j - i);
                i = j;
                int e = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip();
                    bool neg = false;
                    if (i < text.size() && text[i] == '-') {
                        neg = true;
                        ++i;
                    }
                    size_t j2 = i;
                    while (j2 < text.size() && std::isdigit(static_cast<unsigned char>(text[j2]))) ++j2;
                    if (j2 == i) throw MathError("operator parse: bad exponent");
                    e = std::stoi(text.substr(i, j2 - i));
                    if (neg) e = -e;
                    i = j2;
                }
                if (var == "x") a += e;
                else if (var == "y") b += e;
                else if (var == "Yp") { b += e; saw_shift = true; }
                else if (var == "Ym") { b -= e; saw_shift = true; }
                else throw MathError("operator parse: unknown variable '" + var + "'");
                any = true;
            } else {
                throw MathError("operator parse: expected a factor at offset " + std::to_string(i));
            }
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            expect_factor = false;
        }
        if (!any) throw MathError("operator parse: empty term");
        if (!coef.is_zero()) {
            auto key = std::pair<int, int>{a, b};
            out[key] += coef;
            if (out[key].is_zero()) out.erase(key);
        }
        skip();
    }
    return out;
}

} // namespace

OperatorPolynomial OperatorPolynomial::parse(const std::string& text) {
    OperatorPolynomial op;
    std::istringstream in(text);
    std::string line;
    bool saw_shift = false;
    bool flavour_forced = false;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        line = line.substr(a);
        if (line.rfind("flavour", 0) == 0) {
            size_t eq = line.find('=');
            std::string v = eq == std::string::npos ? "" : line.substr(eq + 1);
            v.erase(0, v.find_first_not_of(" \t"));
            v.erase(v.find_last_not_of(" \t\r") + 1);
            if (v == "difference") op.flavour = Flavour::Difference;
            else if (v == "differential") op.flavour = Flavour::Differential;
            else throw MathError("operator parse: unknown flavour '" + v + "'");
            flavour_forced = true;
            continue;
        }
        if (line.rfind("hbar^", 0) != 0)
            throw MathError("operator parse: expected 'hbar^k : ...' line");
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw MathError("operator parse: missing ':'");
        int k = std::stoi(line.substr(5, colon - 5));
        std::string body = line.substr(colon + 1);
        size_t b0 = body.find_first_not_of(" \t");
        body = b0 == std::string::npos ? "0" : body.substr(b0);
        if (static_cast<int>(op.P.size()) <= k) op.P.resize(k + 1);
        if (body == "0") continue;
        auto terms = parse_poly_line(body, saw_shift);
        for (const auto& [ab, cv] : terms) {
            op.P[k][ab] += cv;
            if (op.P[k][ab].is_zero()) op.P[k].erase(ab);
        }
    }
    if (!flavour_forced && saw_shift) op.flavour = Flavour::Difference;
    if (op.P.empty() || op.P[0].empty()) throw MathError("operator parse: P_0 must be nonzero");
    return op;
}

OperatorPolynomial OperatorPolynomial::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MathError("cannot open operator file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string OperatorPolynomial::print() const {
    std::ostringstream os;
    if (flavour == Flavour::Difference) os << "flavour = difference\n";
    for (size_t k = 0; k < P.size(); ++k) {
        os << "hbar^" << k << " : ";
        if (P[k].empty()) {
            os << "0\n";
            continue;
        }
        bool first = true;
        for (const auto& [ab, cv] : P[k]) {
            auto [a, b] = ab;
            mpq_class q = cv.to_mpq();
            bool neg = q < 0;
            if (first) {
                if (neg) os << "-";
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            mpq_class aq = abs(q);
            bool unit = (aq == 1) && (a != 0 || b != 0);
            if (!unit) os << aq.get_str();
            bool star = !unit;
            if (a != 0) {
                if (star) os << "*";
                os << "x";
                if (a != 1) os << "^" << a;
                star = true;
            }
            if (b != 0) {
                if (star) os << "*";
                if (flavour == Flavour::Differential) {
                    os << "y";
                    if (b != 1) os << "^" << b;
                } else {
                    os << (b > 0 ? "Yp" : "Ym");
                    if (std::abs(b) != 1) os << "^" << std::abs(b);
                }
            }
            os << "";
        }
        os << "\n";
    }
    return os.str();
}

std::string print_symbol(const BivariateSymbol& s, OperatorPolynomial::Flavour flavour) {
    OperatorPolynomial tmp;
    tmp.flavour = flavour;
    tmp.P.push_back(s);
    std::string p = tmp.print();
    size_t colon = p.find(':');
    std::string body = p.substr(colon + 2);
    if (!body.empty() && body.back() == '\n') body.pop_back();
    return body;
}

} // namespace qcurve
