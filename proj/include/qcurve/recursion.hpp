#ifndef QCURVE_RECURSION_HPP
#define QCURVE_RECURSION_HPP

/* The Eynard-Orantin recursion on a validated rational spectral curve, with
 * memoisation, x-expansions of the invariants, and the string / dilaton /
 * free-energy checks.
 */

#include "qcurve/curve.hpp"
#include "qcurve/multidiff.hpp"

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace qcurve {

inline bool is_stable(int g, int n) { return 2 * g - 2 + n > 0; }

struct KernelSeries {
    FieldElement alpha;
    std::vector<SeriesQ> kappa; // kappa[m-1] = (sigma^m - s^m) / (2 (y - y o sigma) x'(alpha+s))
};

class Engine {
  public:
    explicit Engine(const SpectralCurve& curve);

    const SpectralCurve& curve() const { return curve_; }
    const BranchData& branch() const { return bd_; }

    const Multidifferential& omega(int g, int n);

    KernelSeries recursion_kernel(const FieldElement& alpha, int order, int m_max);

    /* Expansion of dF^0_1/dx = y(z(x)) at the x = infinity branch with
     * z = infinity, as a series in w = 1/x.  Requires rational y. */
    SeriesQ dF01_dx_series(int depth);

    /* Weighted-count table in the Belyi normalisation: mu -> M_{g,n}(mu),
     * for all profiles with sum(mu) <= mu_max (keys sorted descending).
     * Unstable adjustments: (0,1) drops the d log x term, (0,2) subtracts
     * the double pole in x. */
    std::map<std::vector<long>, FieldElement> x_expansion(int g, int n, long mu_max);

    // string equation residual, m in {0, 1}; zero iff the identity holds
    ExtTensor check_string(int g, int n, int m);
    // dilaton residual in the pole basis; zero iff the identity holds
    SymTensor check_dilaton(int g, int n);
    FieldElement free_energy(int g); // g = 1 exposed but non-normative

    // antiderivative of y dx used by dilaton / F_g (constant recorded, irrelevant)
    const LogAugmented& phi();
    void shift_phi(const FieldElement& c); // experiments: residues kill constants

    // log of warnings (pole-bound violations are recorded, not fatal)
    const std::vector<std::string>& warnings() const { return warnings_; }

    // inverse local coordinate u(w) with x(z(w)) = 1/w at the z = infinity branch
    SeriesQ u_of_w(int order);

  private:
    struct Local {
        int ai;
        FieldElement alpha;
        int N;
        SeriesQ sigma, sigma_prime;
        std::vector<SeriesQ> sigma_pow; // sigma^m, m >= 0
        SeriesQ Dinv;
        std::map<BasisIndex, SeriesQ> ser_z, ser_zh;
    };

    Local make_local(int ai, int N);
    const SeriesQ& slot_series(Local& L, const BasisIndex& b, bool hatted);
    SeriesQ kappa(Local& L, int m);
    void compute_stable(int g, int n, Multidifferential& out);

    SeriesQ slot_w_series(const BasisIndex& b, int order); // (z-a)^{-k-1}/x'(z) in w

    const SpectralCurve& curve_;
    BranchData bd_;
    std::map<std::pair<int, int>, Multidifferential> memo_;
    std::mutex memo_mutex_;
    LogAugmented phi_;
    bool phi_ready_ = false;
    std::vector<std::string> warnings_;
};

} // namespace qcurve

#endif
