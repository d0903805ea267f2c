#ifndef QCURVE_ORACLES_HPP
#define QCURVE_ORACLES_HPP

/* Independent ground truth: closed forms and combinatorial brute force that
 * the recursion engine is certified against.  Nothing here touches the
 * topological recursion code paths.
 */

#include "qcurve/hbar.hpp"
#include "qcurve/laurent.hpp"
#include "qcurve/logaug.hpp"

#include <vector>

namespace qcurve {

FieldElement catalan(long n);
FieldElement stirling_first(long n, long k); // unsigned, via the product expansion
FieldElement bernoulli(long m);
FieldElement zeta_negative(long g); // zeta(1-2g) = -B_{2g}/(2g)

struct DessinCount {
    long v = 0, e = 0;
    FieldElement disconnected; // brute-force f*(v,e)
    FieldElement connected;    // f(v,e) via graded exp/log
    FieldElement closed_form;  // Stirling(2e,v) / (2^e e!)
};
DessinCount dessin_count(long v, long e); // guard: e <= 5

/* Weighted count of connected genus-g Belyi covers with labelled points over
 * infinity of ramification profile mu; brute force over permutation triples.
 * Guard: sum(mu) <= 10.
 */
FieldElement belyi_count(long g, const std::vector<long>& mu);

PolyQ hermite(long N);       // classical H_N
PolyQ hermite_scaled(long N); // (2N)^{-N/2} H_N(x sqrt(N/2)), rational coefficients
// residual of the scaled Hermite equation plus the wave-truncation comparison
PolyQ hermite_wave_check(long N, int depth);

// closed-form coefficients of x^{-2e} in the modified wave function, e = 1..e_max
std::vector<HbarPoly> wave_x_expansion_closed(int e_max);

/* Degree-zero GW wave function psi_0 = exp F_0 as a series in eps = hbar/x
 * with polynomial-in-t coefficients, exact through the requested order.
 */
LaurentSeries<Polynomial<FieldElement>> gw_psi0(int order);
// residual series of psi0(t-1) - (1 - (t-1/2) eps) psi0(t); zero iff the
// degree-zero quantum curve recursion holds
LaurentSeries<Polynomial<FieldElement>> gw_psi0_recursion_residual(int order);

/* psi_d / psi_0 as a rational function of w = x/hbar - t, normalised by
 * rho_d(infinity) = 1/d!.  Solved from the difference equation
 * rho_d(w+1) - rho_d(w) = -rho_{d-1}(w-1)/(w^2 - 1/4).  Guard: d <= 6.
 */
RatQ gw_psi_ratio(long d);
// the same residues from the spec's triangular linear system, as an
// independent route
RatQ gw_psi_ratio_via_system(long d);

// Toda lattice consistency at q-order m (0, 1 or 2): returns the rational
// function that must vanish
RatQ toda_residual(int m);

} // namespace qcurve

#endif
