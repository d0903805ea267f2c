#ifndef QCURVE_LAURENT_HPP
#define QCURVE_LAURENT_HPP

/* Truncated Laurent series over a generic exact coefficient ring K.
 *
 * A series stores coefficients for s^lo .. s^(lo+len-1) together with a
 * truncation order: every order <= trunc() is represented exactly (orders
 * between the stored window and trunc are exactly zero).  Every operation
 * propagates the weaker truncation of its operands; reading a coefficient
 * beyond the truncation order throws.  Series arising from polynomials are
 * exact to all orders (sentinel truncation).
 */

#include "qcurve/polynomial.hpp"

#include <optional>
#include <vector>

namespace qcurve {

inline constexpr int kExactOrder = 1 << 28;

template <class K>
inline Polynomial<K> div_by_long(const Polynomial<K>& p, long n) {
    return p * (K(1) / K(n));
}
template <class K>
inline RationalFunction<K> div_by_long(const RationalFunction<K>& f, long n) {
    return f / RationalFunction<K>(n);
}

struct ExpansionPoint {
    enum Kind { Formal, Finite, Infinity };
    Kind kind = Formal;
    FieldElement c;

    static ExpansionPoint formal() { return {}; }
    static ExpansionPoint at(const FieldElement& x) { return {Finite, x}; }
    static ExpansionPoint infinity() { return {Infinity, FieldElement(0)}; }

    friend bool operator==(const ExpansionPoint& a, const ExpansionPoint& b) {
        return a.kind == b.kind && (a.kind != Finite || a.c == b.c);
    }
};

inline ExpansionPoint merge_points(const ExpansionPoint& a, const ExpansionPoint& b) {
    if (a.kind == ExpansionPoint::Formal) return b;
    if (b.kind == ExpansionPoint::Formal) return a;
    if (!(a == b)) throw MathError("LaurentSeries: mixing expansion points");
    return a;
}

template <class K>
K point_as_k(const ExpansionPoint& pt);

template <>
inline FieldElement point_as_k<FieldElement>(const ExpansionPoint& pt) {
    return pt.c;
}
template <>
inline RationalFunction<FieldElement> point_as_k<RationalFunction<FieldElement>>(
    const ExpansionPoint& pt) {
    return RationalFunction<FieldElement>(pt.c);
}

template <class K>
class LaurentSeries {
  public:
    LaurentSeries() : lo_(0), trunc_(kExactOrder) {}
    explicit LaurentSeries(const K& c, int trunc = kExactOrder) : lo_(0), trunc_(trunc) {
        if (!(c == K(0))) c_.push_back(c);
        normalize();
    }

    LaurentSeries(int lo, std::vector<K> coeffs, int trunc, ExpansionPoint pt = ExpansionPoint::formal())
        : lo_(lo), c_(std::move(coeffs)), trunc_(trunc), pt_(pt) {
        normalize();
    }

    static LaurentSeries zero(int trunc) { return LaurentSeries(0, {}, trunc); }
    static LaurentSeries monomial(const K& c, int order, int trunc = kExactOrder) {
        return LaurentSeries(order, {c}, trunc);
    }

    // series of a polynomial in s (exact)
    static LaurentSeries from_polynomial(const Polynomial<K>& p) {
        return LaurentSeries(0, p.coeffs(), kExactOrder);
    }
    // series of p(z) in u = 1/z at infinity (exact): sum p_j u^(-j)
    static LaurentSeries from_polynomial_at_infinity(const Polynomial<K>& p) {
        if (p.is_zero()) return LaurentSeries(0, {}, kExactOrder, ExpansionPoint::infinity());
        std::vector<K> rev(p.coeffs().rbegin(), p.coeffs().rend());
        return LaurentSeries(-p.degree(), std::move(rev), kExactOrder, ExpansionPoint::infinity());
    }

    const ExpansionPoint& point() const { return pt_; }
    LaurentSeries& set_point(const ExpansionPoint& pt) {
        pt_ = pt;
        return *this;
    }

    int trunc() const { return trunc_; }
    bool is_exact() const { return trunc_ >= kExactOrder; }
    bool is_zero() const { return c_.empty(); } // zero through trunc()
    // valuation: order of first nonzero coefficient; first unknown order for zero series
    int val() const { return c_.empty() ? (is_exact() ? kExactOrder : trunc_ + 1) : lo_; }
    int lowest() const {
        if (c_.empty()) throw MathError("LaurentSeries: lowest order of zero series");
        return lo_;
    }
    int highest_stored() const { return lo_ + static_cast<int>(c_.size()) - 1; }

    const K& coefficient(int order) const {
        static const K zero = K(0);
        if (order > trunc_) throw MathError("LaurentSeries: coefficient beyond truncation order");
        if (c_.empty() || order < lo_ || order > highest_stored()) return zero;
        return c_[order - lo_];
    }
    const K& residue() const { return coefficient(-1); }

    LaurentSeries truncated(int t) const {
        if (t >= trunc_) return *this;
        std::vector<K> v;
        if (!c_.empty())
            for (int o = lo_; o <= std::min(highest_stored(), t); ++o) v.push_back(c_[o - lo_]);
        int lo = v.empty() ? 0 : lo_;
        return LaurentSeries(lo, std::move(v), t, pt_);
    }

    LaurentSeries shifted_by_power(int j) const { // multiply by s^j
        LaurentSeries r = *this;
        if (!r.c_.empty()) r.lo_ += j;
        if (r.trunc_ < kExactOrder) r.trunc_ += j;
        return r;
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        ExpansionPoint pt = merge_points(a.pt_, b.pt_);
        long t = std::min(a.trunc_, b.trunc_);
        if (a.c_.empty() && b.c_.empty()) return LaurentSeries(0, {}, static_cast<int>(t), pt);
        int lo = a.c_.empty() ? b.lo_ : (b.c_.empty() ? a.lo_ : std::min(a.lo_, b.lo_));
        long hi0 = a.c_.empty() ? b.highest_stored()
                                : (b.c_.empty() ? a.highest_stored()
                                                : std::max(a.highest_stored(), b.highest_stored()));
        int hi = static_cast<int>(std::min(hi0, t));
        if (hi < lo) return LaurentSeries(0, {}, static_cast<int>(t), pt);
        std::vector<K> v(hi - lo + 1, K(0));
        for (int o = lo; o <= hi; ++o) {
            K x = (!a.c_.empty() && o >= a.lo_ && o <= a.highest_stored()) ? a.c_[o - a.lo_] : K(0);
            K y = (!b.c_.empty() && o >= b.lo_ && o <= b.highest_stored()) ? b.c_[o - b.lo_] : K(0);
            v[o - lo] = x + y;
        }
        return LaurentSeries(lo, std::move(v), static_cast<int>(t), pt);
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        ExpansionPoint pt = merge_points(a.pt_, b.pt_);
        long t = std::min<long>({static_cast<long>(a.trunc_) + b.val(),
                                 static_cast<long>(b.trunc_) + a.val(),
                                 static_cast<long>(kExactOrder)});
        int tt = static_cast<int>(t);
        if (a.c_.empty() || b.c_.empty()) return LaurentSeries(0, {}, tt, pt);
        int lo = a.lo_ + b.lo_;
        long hi0 = static_cast<long>(a.highest_stored()) + b.highest_stored();
        int hi = static_cast<int>(std::min(hi0, t));
        if (hi < lo) return LaurentSeries(0, {}, tt, pt);
        std::vector<K> v(hi - lo + 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == K(0)) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                int o = a.lo_ + static_cast<int>(i) + b.lo_ + static_cast<int>(j);
                if (o > hi) break;
                v[o - lo] += a.c_[i] * b.c_[j];
            }
        }
        return LaurentSeries(lo, std::move(v), tt, pt);
    }

    LaurentSeries operator*(const K& s) const {
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = x * s;
        r.normalize();
        return r;
    }

    LaurentSeries& operator+=(const LaurentSeries& b) { return *this = *this + b; }
    LaurentSeries& operator-=(const LaurentSeries& b) { return *this = *this - b; }
    LaurentSeries& operator*=(const LaurentSeries& b) { return *this = *this * b; }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.lo_ == b.lo_ && a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

    /* Multiplicative inverse.  The result is exact through
     * min(trunc - 2*val, target) for truncated input; exact input needs an
     * explicit target order.
     */
    LaurentSeries inverse(std::optional<int> target = std::nullopt) const {
        if (c_.empty()) throw MathError("LaurentSeries: inverse of zero series");
        int v = lo_;
        long rel;
        if (is_exact()) {
            if (!target) throw MathError("LaurentSeries: inverse of exact series needs target order");
            rel = static_cast<long>(*target) + v;
        } else {
            rel = static_cast<long>(trunc_) - 2 * v;
            if (target) rel = std::min(rel, static_cast<long>(*target) + v);
        }
        if (rel < 0) throw MathError("LaurentSeries: inverse target below leading order");
        std::vector<K> inv(rel + 1, K(0));
        K u0inv = K(1) / c_[0];
        inv[0] = u0inv;
        for (long n = 1; n <= rel; ++n) {
            K acc(0);
            for (long k = 1; k <= n && k < static_cast<long>(c_.size()); ++k)
                acc += c_[k] * inv[n - k];
            inv[n] = -(acc * u0inv);
        }
        return LaurentSeries(-v, std::move(inv), static_cast<int>(-v + rel), pt_);
    }

    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
        std::optional<int> target;
        if (b.is_exact()) {
            if (a.is_exact())
                throw MathError("LaurentSeries: exact/exact division needs explicit truncation");
            target = a.trunc_ - a.val() - 2 * b.val();
        }
        return a * b.inverse(target);
    }

    LaurentSeries derivative() const { // d/ds
        int t = is_exact() ? kExactOrder : trunc_ - 1;
        if (c_.empty()) return LaurentSeries(0, {}, t, pt_);
        std::vector<K> v;
        for (size_t i = 0; i < c_.size(); ++i) {
            long o = lo_ + static_cast<long>(i);
            v.push_back(c_[i] * K(o));
        }
        return LaurentSeries(lo_ - 1, std::move(v), t, pt_);
    }

    // antiderivative with zero constant term; requires vanishing residue
    LaurentSeries integrated() const {
        if (!c_.empty() && lo_ <= -1 && -1 <= trunc_ && !(coefficient(-1) == K(0)))
            throw MathError("LaurentSeries: integrating a series with nonzero residue");
        int t = is_exact() ? kExactOrder : trunc_ + 1;
        if (c_.empty()) return LaurentSeries(0, {}, t, pt_);
        std::vector<K> v;
        for (size_t i = 0; i < c_.size(); ++i) {
            long o = lo_ + static_cast<long>(i);
            if (o == -1) {
                v.push_back(K(0));
                continue;
            }
            v.push_back(div_by_long(c_[i], o + 1));
        }
        return LaurentSeries(lo_ + 1, std::move(v), t, pt_);
    }

    LaurentSeries pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        LaurentSeries r(K(1), trunc_);
        if (e == 0) return is_exact() ? LaurentSeries(K(1)) : r;
        LaurentSeries base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // log of a series with constant term 1, via integrating f'/f
    LaurentSeries log() const {
        if (val() != 0 || !(coefficient(0) == K(1)))
            throw MathError("series_log: series must have constant term 1");
        if (c_.size() == 1) return LaurentSeries(0, {}, trunc_, pt_); // log 1 = 0
        if (is_exact())
            throw MathError("series_log: truncate exact series to a finite order first");
        return (derivative() * inverse()).integrated().truncated(trunc_);
    }

    // exp of a series with positive valuation
    LaurentSeries exp() const {
        if (!c_.empty() && lo_ < 1) throw MathError("series_exp: positive valuation required");
        if (c_.empty()) return LaurentSeries(K(1), is_exact() ? kExactOrder : trunc_);
        if (is_exact())
            throw MathError("series_exp: truncate exact series to a finite order first");
        int t = trunc_;
        std::vector<K> e(std::max(t, 0) + 1, K(0));
        e[0] = K(1);
        for (int n = 1; n <= t; ++n) {
            K acc(0);
            for (int k = 1; k <= n; ++k) {
                K fk = (k >= lo_ && k <= highest_stored()) ? c_[k - lo_] : K(0);
                if (fk == K(0)) continue;
                acc += fk * K(static_cast<long>(k)) * e[n - k];
            }
            e[n] = div_by_long(acc, n);
        }
        return LaurentSeries(0, std::move(e), t, pt_);
    }

    // composition f(g) for inner series g with val >= 1
    LaurentSeries compose(const LaurentSeries& g) const {
        if (g.val() < 1) throw MathError("LaurentSeries: composition needs inner valuation >= 1");
        if (c_.empty())
            return LaurentSeries(0, {},
                                 is_exact() ? (g.is_exact() ? kExactOrder : g.trunc_)
                                            : static_cast<int>(std::min<long>(
                                                  static_cast<long>(trunc_ + 1) * g.val() - 1,
                                                  kExactOrder)));
        if (is_exact() && g.is_exact() && lo_ < 0)
            throw MathError("LaurentSeries: exact composition with principal part needs truncation");
        int top = highest_stored();
        LaurentSeries result = LaurentSeries::zero(kExactOrder);
        if (top >= std::max(0, lo_)) {
            LaurentSeries h(coefficient(top), kExactOrder);
            for (int j = top - 1; j >= std::max(0, lo_); --j)
                h = h * g + LaurentSeries(coefficient(j), kExactOrder);
            if (lo_ > 0) h = h * g.pow(lo_);
            result += h;
        }
        if (lo_ < 0) {
            long tail = is_exact() ? kExactOrder : static_cast<long>(trunc_ + 1) * g.val() - 1;
            std::optional<int> gt;
            if (g.is_exact())
                gt = static_cast<int>(std::min<long>(tail + static_cast<long>(-lo_) * g.val() + 4,
                                                     kExactOrder / 2));
            LaurentSeries gi = g.inverse(gt);
            LaurentSeries gp = gi;
            for (int j = 1; j <= -lo_; ++j) {
                K f = coefficient(-j);
                if (!(f == K(0))) result += gp * f;
                if (j < -lo_) gp = gp * gi;
            }
        }
        if (!is_exact()) {
            long tail = static_cast<long>(trunc_ + 1) * g.val() - 1;
            result = result.truncated(static_cast<int>(std::min<long>(tail, result.trunc_)));
        }
        return result;
    }

  private:
    void normalize() {
        if (trunc_ > kExactOrder) trunc_ = kExactOrder;
        if (!c_.empty() && highest_stored() > trunc_) {
            int keep = trunc_ - lo_ + 1;
            c_.resize(std::max(keep, 0));
        }
        while (!c_.empty() && c_.front() == K(0)) {
            c_.erase(c_.begin());
            ++lo_;
        }
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
        if (c_.empty()) lo_ = 0;
    }

    int lo_;
    std::vector<K> c_;
    int trunc_;
    ExpansionPoint pt_;
};

using SeriesQ = LaurentSeries<FieldElement>;

/* Laurent expansion of a rational function, exact through `order`.
 * At infinity the local coordinate is u = 1/z.
 */
template <class K>
LaurentSeries<K> expand_rational(const RationalFunction<K>& f, const ExpansionPoint& pt, int order) {
    LaurentSeries<K> zero_out = LaurentSeries<K>::zero(order);
    zero_out.set_point(pt);
    if (f.is_zero()) return zero_out;
    LaurentSeries<K> n, d;
    if (pt.kind == ExpansionPoint::Infinity) {
        n = LaurentSeries<K>::from_polynomial_at_infinity(f.num());
        d = LaurentSeries<K>::from_polynomial_at_infinity(f.den());
    } else if (pt.kind == ExpansionPoint::Finite) {
        n = LaurentSeries<K>::from_polynomial(f.num().shifted(point_as_k<K>(pt)));
        d = LaurentSeries<K>::from_polynomial(f.den().shifted(point_as_k<K>(pt)));
    } else {
        throw MathError("expand_rational: expansion point required");
    }
    int vn = n.lowest();
    LaurentSeries<K> di = d.inverse(order - vn);
    LaurentSeries<K> r = (n * di).truncated(order);
    r.set_point(pt);
    return r;
}

// spec-level aliases
inline SeriesQ series_expand(const RatQ& f, const ExpansionPoint& pt, int order) {
    return expand_rational(f, pt, order);
}
template <class K>
LaurentSeries<K> series_log(const LaurentSeries<K>& u) {
    return u.log();
}

/* Reversion: for g = g_1 w + g_2 w^2 + ... with g_1 != 0, find t with
 * g(t(w)) = w through the requested order.
 */
template <class K>
LaurentSeries<K> series_reversion(const LaurentSeries<K>& g, int order) {
    if (g.val() != 1) throw MathError("series_reversion: valuation 1 required");
    if (!g.is_exact() && g.trunc() < order)
        throw MathError("series_reversion: input truncation too small");
    std::vector<K> gc(order + 1, K(0));
    for (int j = 1; j <= order; ++j) gc[j] = g.coefficient(j);
    std::vector<K> t(order + 1, K(0));
    if (order >= 1) t[1] = K(1) / gc[1];
    for (int m = 2; m <= order; ++m) {
        std::vector<K> comp(m + 1, K(0));
        std::vector<K> tpow(m + 1, K(0));
        tpow[0] = K(1);
        for (int j = 1; j <= m; ++j) {
            std::vector<K> nxt(m + 1, K(0));
            for (int a = 0; a <= m; ++a) {
                if (tpow[a] == K(0)) continue;
                for (int b = 1; a + b <= m; ++b) {
                    if (t[b] == K(0)) continue;
                    nxt[a + b] += tpow[a] * t[b];
                }
            }
            tpow = std::move(nxt);
            if (!(gc[j] == K(0)))
                for (int a = 0; a <= m; ++a) comp[a] += gc[j] * tpow[a];
        }
        t[m] = -(comp[m] / gc[1]);
    }
    return LaurentSeries<K>(1, std::vector<K>(t.begin() + 1, t.end()), order);
}

} // namespace qcurve

#endif
