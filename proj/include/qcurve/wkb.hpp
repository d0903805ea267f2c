#ifndef QCURVE_WKB_HPP
#define QCURVE_WKB_HPP

/* Candidate operators and the WKB machinery: the triangular solve for
 * dS_k/dx, exact verification of a quantum curve against a wave expansion,
 * operator reconstruction from a wave, and the difference-operator variant
 * with shift operators acting on log-augmented exponents.
 */

#include "qcurve/wave.hpp"

#include <optional>

namespace qcurve {

/* Normal-ordered hbar-graded operator: P-hat = sum_k hbar^k P_k(x-hat, y-hat)
 * with x-hat powers to the left.  Differential flavour: y-hat = hbar d/dx,
 * monomial exponents (a, b) mean x^a y^b with b >= 0.  Difference flavour:
 * b is a signed shift exponent, x^a Y^b with Y^b = exp(b hbar d/dx).
 */
struct OperatorPolynomial {
    enum class Flavour { Differential, Difference };
    Flavour flavour = Flavour::Differential;
    std::vector<std::map<std::pair<int, int>, FieldElement>> P; // P[k][(a,b)]

    static OperatorPolynomial parse(const std::string& text);
    static OperatorPolynomial from_file(const std::string& path);
    std::string print() const;

    bool semiclassical_nonzero() const { return !P.empty() && !P[0].empty(); }
};

// bivariate symbol P_0(x, y); for difference flavour y-monomials are the
// formal exponentials e^{b y}
using BivariateSymbol = std::map<std::pair<int, int>, FieldElement>;
BivariateSymbol semiclassical_limit(const OperatorPolynomial& op);
std::string print_symbol(const BivariateSymbol& s, OperatorPolynomial::Flavour flavour);
// evaluate the symbol on the curve (differential flavour: y rational)
RatQ symbol_on_curve(const BivariateSymbol& s, const SpectralCurve& c);

struct WKBSystem {
    std::vector<RatQ> dSdx;      // dS_k/dx for k = 0..K
    std::vector<RatQ> residuals; // per hbar-order residual ledger (all zero)
};

WKBSystem wkb_solve(const OperatorPolynomial& op, const SpectralCurve& curve, int K);

// per-order residuals of op acting on the wave exponent; all zero through K
// certifies the quantum curve
std::vector<LogAugmented> verify_quantum_curve(const OperatorPolynomial& op,
                                               const WaveExpansion& wave, int K);

struct ReconstructionResult {
    OperatorPolynomial op;
    std::vector<int> solution_space_dim; // per hbar order
};

/* Solve for normal-ordered corrections P_k (k = 1..K) within the degree
 * bounds that cancel the residual of P_0 acting on the wave.  P_0 is the
 * supplied defining polynomial of the curve.  Underdetermined orders return
 * the minimal-support solution (free coefficients set to zero).
 */
ReconstructionResult reconstruct_operator(const WaveExpansion& wave, const BivariateSymbol& P0,
                                          int dx_bound, int dy_bound, int K);

/* Difference flavour: residuals of op acting on exp of the t-shifted wave
 * exponent.  The parameter t is read from the constant hbar^1 part of the
 * operator ((t - 1/2) hbar) unless supplied.  Shifts act exactly:
 * S(x + j hbar) - S(x) expands through the iterated d/dx, and the leading
 * e^{j dS_0/dx} = z^{j lambda} is taken in closed form for y = lambda log z.
 */
std::vector<RatQ> difference_wkb_check(const OperatorPolynomial& op, Engine& eng, int K,
                                       std::optional<FieldElement> t_param = std::nullopt);

} // namespace qcurve

#endif
