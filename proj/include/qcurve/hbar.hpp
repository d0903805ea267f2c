#ifndef QCURVE_HBAR_HPP
#define QCURVE_HBAR_HPP

/* Finite Laurent polynomials in the formal parameter hbar, used for wave
 * function coefficients that mix positive and negative hbar powers.
 */

#include "qcurve/rational.hpp"

#include <map>
#include <sstream>

namespace qcurve {

class HbarPoly {
  public:
    HbarPoly() = default;
    HbarPoly(long n) {
        if (n != 0) c_[0] = FieldElement(n);
    }
    HbarPoly(const FieldElement& x) {
        if (!x.is_zero()) c_[0] = x;
    }
    static HbarPoly monomial(const FieldElement& x, int k) {
        HbarPoly p;
        if (!x.is_zero()) p.c_[k] = x;
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    const std::map<int, FieldElement>& terms() const { return c_; }

    FieldElement coefficient(int k) const {
        auto it = c_.find(k);
        return it == c_.end() ? FieldElement(0) : it->second;
    }

    HbarPoly operator-() const {
        HbarPoly r = *this;
        for (auto& [k, v] : r.c_) v = -v;
        return r;
    }
    friend HbarPoly operator+(const HbarPoly& a, const HbarPoly& b) {
        HbarPoly r = a;
        for (const auto& [k, v] : b.c_) {
            auto it = r.c_.find(k);
            if (it == r.c_.end()) r.c_[k] = v;
            else {
                it->second += v;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
        return r;
    }
    friend HbarPoly operator-(const HbarPoly& a, const HbarPoly& b) { return a + (-b); }
    friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
        HbarPoly r;
        for (const auto& [k1, v1] : a.c_)
            for (const auto& [k2, v2] : b.c_) {
                FieldElement p = v1 * v2;
                if (p.is_zero()) continue;
                auto it = r.c_.find(k1 + k2);
                if (it == r.c_.end()) r.c_[k1 + k2] = p;
                else {
                    it->second += p;
                    if (it->second.is_zero()) r.c_.erase(it);
                }
            }
        return r;
    }
    HbarPoly& operator+=(const HbarPoly& b) { return *this = *this + b; }
    HbarPoly& operator-=(const HbarPoly& b) { return *this = *this - b; }
    HbarPoly& operator*=(const HbarPoly& b) { return *this = *this * b; }

    friend bool operator==(const HbarPoly& a, const HbarPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const HbarPoly& a, const HbarPoly& b) { return !(a == b); }

    FieldElement eval(const FieldElement& hbar) const {
        FieldElement r(0);
        for (const auto& [k, v] : c_) r += v * hbar.pow(k);
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : c_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << v.str() << ")";
            if (k != 0) os << "*h^" << k;
        }
        return os.str();
    }

  private:
    std::map<int, FieldElement> c_;
};

inline HbarPoly div_by_long(const HbarPoly& a, long n) {
    HbarPoly r;
    for (const auto& [k, v] : a.terms()) r += HbarPoly::monomial(div_by_long(v, n), k);
    return r;
}

} // namespace qcurve

#endif
