#ifndef QCURVE_POLYNOMIAL_HPP
#define QCURVE_POLYNOMIAL_HPP

/* Dense univariate polynomials and rational functions over a generic exact
 * coefficient field K.  The main instantiation is K = FieldElement; nesting
 * K = RationalFunction<FieldElement> gives bivariate rational arithmetic.
 *
 * Canonical forms are enforced on construction: no trailing zero
 * coefficients, rational functions reduced with monic denominator, so
 * structural equality is mathematical equality.
 */

#include "qcurve/rational.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace qcurve {

template <class K>
class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(const K& c) {
        if (!(c == K(0))) c_.push_back(c);
    }
    Polynomial(long n) : Polynomial(K(n)) {}
    explicit Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial variable() { return Polynomial(std::vector<K>{K(0), K(1)}); }
    static Polynomial monomial(const K& c, int deg) {
        std::vector<K> v(deg + 1, K(0));
        v[deg] = c;
        return Polynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const K& operator[](int i) const {
        static const K zero = K(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[i];
    }
    const std::vector<K>& coeffs() const { return c_; }

    K leading() const { return is_zero() ? K(0) : c_.back(); }
    K constant_term() const { return (*this)[0]; }

    Polynomial operator-() const {
        std::vector<K> v = c_;
        for (auto& x : v) x = -x;
        return Polynomial(std::move(v));
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        std::vector<K> v(std::max(p.c_.size(), q.c_.size()), K(0));
        for (size_t i = 0; i < v.size(); ++i) v[i] = p[static_cast<int>(i)] + q[static_cast<int>(i)];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        if (p.is_zero() || q.is_zero()) return Polynomial();
        std::vector<K> v(p.c_.size() + q.c_.size() - 1, K(0));
        for (size_t i = 0; i < p.c_.size(); ++i)
            for (size_t j = 0; j < q.c_.size(); ++j) v[i + j] += p.c_[i] * q.c_[j];
        return Polynomial(std::move(v));
    }
    Polynomial operator*(const K& s) const {
        std::vector<K> v = c_;
        for (auto& x : v) x = x * s;
        return Polynomial(std::move(v));
    }
    Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
    Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }
    Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

    friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.c_ == q.c_; }
    friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }
    friend bool operator<(const Polynomial& p, const Polynomial& q) {
        if (p.c_.size() != q.c_.size()) return p.c_.size() < q.c_.size();
        for (size_t i = 0; i < p.c_.size(); ++i) {
            if (p.c_[i] != q.c_[i]) return p.c_[i] < q.c_[i];
        }
        return false;
    }

    // division with remainder; requires K a field
    static std::pair<Polynomial, Polynomial> divrem(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw MathError("Polynomial: division by zero polynomial");
        Polynomial r = a;
        std::vector<K> q(std::max(0, a.degree() - b.degree() + 1), K(0));
        K lb_inv = K(1) / b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            K coef = r.leading() * lb_inv;
            q[shift] = coef;
            r -= Polynomial::monomial(coef, shift) * b;
        }
        return {Polynomial(std::move(q)), r};
    }
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divrem(a, b).first; }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divrem(a, b).second; }

    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * (K(1) / leading());
    }

    static Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<K> v(c_.size() - 1, K(0));
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * K(static_cast<long>(i));
        return Polynomial(std::move(v));
    }

    K eval(const K& x) const {
        K r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    // p(z + c), exact Taylor shift
    Polynomial shifted(const K& c) const {
        Polynomial r;
        Polynomial lin(std::vector<K>{c, K(1)});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Polynomial(*it);
        return r;
    }

    Polynomial pow(long e) const {
        Polynomial r(K(1)), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class K>
class RationalFunction {
  public:
    RationalFunction() : num_(), den_(K(1)) {}
    RationalFunction(const K& c) : num_(c), den_(K(1)) {}
    RationalFunction(long n) : num_(K(n)), den_(K(1)) {}
    RationalFunction(const Polynomial<K>& p) : num_(p), den_(K(1)) {}
    RationalFunction(Polynomial<K> num, Polynomial<K> den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }

    static RationalFunction variable() { return RationalFunction(Polynomial<K>::variable()); }

    const Polynomial<K>& num() const { return num_; }
    const Polynomial<K>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.is_constant() && den_.degree() == 0; }

    RationalFunction operator-() const { return RationalFunction(-num_, den_, no_reduce_tag{}); }

    friend RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) {
        return RationalFunction(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
    }
    friend RationalFunction operator-(const RationalFunction& f, const RationalFunction& g) {
        return f + (-g);
    }
    friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
        return RationalFunction(f.num_ * g.num_, f.den_ * g.den_);
    }
    friend RationalFunction operator/(const RationalFunction& f, const RationalFunction& g) {
        if (g.is_zero()) throw MathError("RationalFunction: division by zero");
        return RationalFunction(f.num_ * g.den_, f.den_ * g.num_);
    }
    RationalFunction& operator+=(const RationalFunction& g) { return *this = *this + g; }
    RationalFunction& operator-=(const RationalFunction& g) { return *this = *this - g; }
    RationalFunction& operator*=(const RationalFunction& g) { return *this = *this * g; }
    RationalFunction& operator/=(const RationalFunction& g) { return *this = *this / g; }

    friend bool operator==(const RationalFunction& f, const RationalFunction& g) {
        return f.num_ == g.num_ && f.den_ == g.den_;
    }
    friend bool operator!=(const RationalFunction& f, const RationalFunction& g) { return !(f == g); }
    friend bool operator<(const RationalFunction& f, const RationalFunction& g) {
        if (f.num_ != g.num_) return f.num_ < g.num_;
        return f.den_ < g.den_;
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    RationalFunction pow(long e) const {
        if (e < 0) {
            if (is_zero()) throw MathError("RationalFunction: inverse of zero");
            return RationalFunction(den_, num_).pow(-e);
        }
        RationalFunction r(K(1)), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    bool has_pole_at(const K& x) const { return den_.eval(x) == K(0); }

    K eval(const K& x) const {
        K d = den_.eval(x);
        if (d == K(0)) throw MathError("RationalFunction: evaluation at a pole");
        return num_.eval(x) / d;
    }

  private:
    struct no_reduce_tag {};
    RationalFunction(Polynomial<K> num, Polynomial<K> den, no_reduce_tag)
        : num_(std::move(num)), den_(std::move(den)) {}

    void reduce() {
        if (den_.is_zero()) throw MathError("RationalFunction: zero denominator");
        if (num_.is_zero()) {
            den_ = Polynomial<K>(K(1));
            return;
        }
        Polynomial<K> g = Polynomial<K>::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        K lead = den_.leading();
        if (!(lead == K(1))) {
            K inv = K(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Polynomial<K> num_, den_;
};

using PolyQ = Polynomial<FieldElement>;
using RatQ = RationalFunction<FieldElement>;

/* Root finding over Q, optionally extending to one Q(sqrt d).  Returns the
 * roots with multiplicities and the (constant, if fully split) leftover
 * factor.  `session_d` carries the extension adopted so far; a nonzero value
 * is reused, zero may be upgraded when a quadratic factor demands it and
 * `allow_extension` is set.
 */
struct RootSplit {
    std::vector<std::pair<FieldElement, int>> roots;
    PolyQ leftover; // constant iff the polynomial split completely
};

RootSplit find_roots(const PolyQ& p, long& session_d, bool allow_extension);

// convenience: require a complete split
std::vector<std::pair<FieldElement, int>> linear_roots(const PolyQ& p, long& session_d,
                                                       bool allow_extension);

} // namespace qcurve

#endif
