#ifndef QCURVE_CURVE_HPP
#define QCURVE_CURVE_HPP

/* The input data (C, B, x, y) for a rational spectral curve: a global
 * rational coordinate z, a rational x(z), a y(z) that is rational plus an
 * optional log part, and the Cauchy kernel as bidifferential.  Validation
 * locates the zeros of dx exactly, checks they are simple and away from
 * zeros of dy, and computes the local deck transformations.
 */

#include "qcurve/logaug.hpp"
#include "qcurve/parser.hpp"

#include <map>
#include <string>
#include <vector>

namespace qcurve {

struct BranchPoint {
    FieldElement alpha;
};

struct BranchData {
    std::vector<BranchPoint> points; // sorted, deterministic order
    int index_of(const FieldElement& a) const {
        for (size_t i = 0; i < points.size(); ++i)
            if (points[i].alpha == a) return static_cast<int>(i);
        throw MathError("branch point " + a.str() + " not in branch data");
    }
};

class SpectralCurve {
  public:
    SpectralCurve(std::string param, RatQ x, LogAugmented y,
                  std::map<std::string, FieldElement> constants = {});

    static SpectralCurve from_file(const std::string& path);
    static SpectralCurve from_text(const std::string& text);
    std::string to_text() const; // bit-exact round trip through the printer

    const std::string& parameter() const { return param_; }
    const RatQ& x() const { return x_; }
    const LogAugmented& y() const { return y_; }
    const RatQ& xprime() const { return xprime_; }
    const LogAugmented& yprime() const { return yprime_; }
    const std::map<std::string, FieldElement>& constants() const { return consts_; }

    long& session_d() const { return session_d_; }

    // d/dx = exterior derivative followed by division by dx
    LogAugmented d_dx(const LogAugmented& f) const { return f.derivative() / xprime_; }
    RatQ d_dx(const RatQ& f) const { return f.derivative() / xprime_; }

    const BranchData& validate() const;
    bool validated() const { return validated_; }

    /* sigma(s) = -s + O(s^2) with x(alpha + sigma(s)) = x(alpha + s), exact
     * through the requested order; alpha must be a validated branch point. */
    SeriesQ deck_transform(const FieldElement& alpha, int order) const;

    // local series helpers at a branch point
    SeriesQ x_series(const FieldElement& alpha, int order) const;
    LocalExpansion y_expansion(const FieldElement& alpha, int order) const;

  private:
    std::string param_;
    RatQ x_;
    LogAugmented y_;
    RatQ xprime_;
    LogAugmented yprime_;
    std::map<std::string, FieldElement> consts_;
    mutable long session_d_ = 0;
    mutable bool validated_ = false;
    mutable BranchData branch_;
};

// spec-level wrappers
inline const BranchData& validate_curve(const SpectralCurve& c) { return c.validate(); }
inline SeriesQ deck_transform(const SpectralCurve& c, const FieldElement& alpha, int order) {
    return c.deck_transform(alpha, order);
}

} // namespace qcurve

#endif
