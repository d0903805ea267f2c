#ifndef QCURVE_WAVE_HPP
#define QCURVE_WAVE_HPP

/* Assembly of the wave-function coefficients S_0..S_K from the invariants:
 * S_0 as the antiderivative of y dx, S_1 in the closed rational-curve form
 * -(1/2) log(dx/dz), and S_k (k >= 2) as diagonal specialisations of
 * principal-part primitives.  Also the t-parametrised family (action of
 * exp(t hbar d/dx)), the loop functional, and the expansion of the modified
 * wave function at x = infinity.
 *
 * A note on F^g_n: the chain-rule identity relating d/dx F^g_n(p,...,p) to
 * the loop functional of F^g_{n+1} is left as a documented identity
 * candidate; the string equation is what the test suite asserts.
 */

#include "qcurve/hbar.hpp"
#include "qcurve/recursion.hpp"

namespace qcurve {

enum class PrimitiveChoice { PrincipalPart, Basepoint };

struct WaveExpansion {
    const SpectralCurve* curve = nullptr;
    std::vector<LogAugmented> S; // S_0 .. S_K
    PrimitiveChoice primitive = PrimitiveChoice::PrincipalPart;
    std::string normalisation;   // record of constants / basepoint
};

class WaveAssembler {
  public:
    explicit WaveAssembler(Engine& eng, PrimitiveChoice choice = PrimitiveChoice::PrincipalPart,
                           FieldElement basepoint = FieldElement(0));

    Engine& engine() { return eng_; }

    // the natural primitive of one basis differential
    RatQ primitive_slot(const BasisIndex& b) const;
    // diagonal specialisation F^g_n(z, ..., z) of the slotwise primitive
    RatQ primitive_diagonal(int g, int n);

    LogAugmented s_coefficient(int k);
    WaveExpansion wave(int K);

    // regularised S_1 from the subtracted two-point function: the diagonal
    // limit of log((z1 - z2)/(x1 - x2)); agrees with the closed form
    LogAugmented s1_regularised() const;

  private:
    Engine& eng_;
    PrimitiveChoice choice_;
    FieldElement basepoint_;
};

// sum over branch points of Res dy * f
FieldElement loop_functional(Engine& eng, const LogAugmented& f);

// S_k(p, t) = sum_m (t^m / m!) (d/dx)^m S_{k-m}(p), evaluated at rational t
WaveExpansion t_shift(const WaveExpansion& w, const FieldElement& t);
// polynomial-in-t lift: coefficient of t^m in S_k(p, t)
std::vector<std::vector<LogAugmented>> t_shift_poly(const WaveExpansion& w);

/* psi-bar = x^{-1/hbar} psi as a series in w = 1/x with Laurent-polynomial
 * coefficients in hbar; the engine-side object of the closed-form wave
 * expansion comparison.
 */
LaurentSeries<HbarPoly> wave_x_series(Engine& eng, const WaveExpansion& w, int order);

} // namespace qcurve

#endif
