#ifndef QCURVE_RATIONAL_HPP
#define QCURVE_RATIONAL_HPP

/* Exact scalars: arbitrary-precision rationals, optionally extended to
 * Q(sqrt(d)) for a fixed square-free integer d.  A value is a + b*sqrt(d);
 * pure rationals carry d = 0.  Mixing two different nonzero d's is an error.
 */

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcurve {

struct MathError : std::runtime_error {
    explicit MathError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

class FieldElement {
  public:
    FieldElement() : a_(0), b_(0), d_(0) {}
    FieldElement(long n) : a_(n), b_(0), d_(0) {}
    FieldElement(long num, long den) : a_(mpq_class(num, den)), b_(0), d_(0) {
        if (den == 0) throw MathError("FieldElement: zero denominator");
        a_.canonicalize();
    }
    explicit FieldElement(const mpq_class& q) : a_(q), b_(0), d_(0) {}
    FieldElement(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        normalize();
    }

    static FieldElement sqrt_of(long d) { return FieldElement(mpq_class(0), mpq_class(1), d); }

    static FieldElement from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw MathError("FieldElement: bad rational literal '" + s + "'");
        q.canonicalize();
        return FieldElement(q);
    }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    long ext_d() const { return d_; }

    const mpq_class& rational_part() const { return a_; }
    const mpq_class& surd_part() const { return b_; }

    mpq_class to_mpq() const {
        if (b_ != 0) throw MathError("FieldElement: not a rational number");
        return a_;
    }

    FieldElement operator-() const { return FieldElement(-a_, -b_, d_); }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
        long d = merged_d(x, y);
        return FieldElement(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
        long d = merged_d(x, y);
        return FieldElement(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
        long d = merged_d(x, y);
        if (x.b_ == 0 && y.b_ == 0) return FieldElement(x.a_ * y.a_);
        return FieldElement(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
        return x * y.inverse();
    }

    FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
    FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
    FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
    FieldElement& operator/=(const FieldElement& y) { return *this = *this / y; }

    FieldElement inverse() const {
        if (is_zero()) throw MathError("FieldElement: division by zero");
        if (b_ == 0) return FieldElement(mpq_class(1) / a_);
        // 1/(a+b*sqrt(d)) = (a-b*sqrt(d))/(a^2-d*b^2); norm is nonzero for square-free d
        mpq_class norm = a_ * a_ - mpq_class(d_) * b_ * b_;
        if (norm == 0) throw MathError("FieldElement: zero norm (d is a perfect square?)");
        return FieldElement(a_ / norm, -b_ / norm, d_);
    }

    FieldElement pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElement r(1), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || y.b_ == 0 || x.d_ == y.d_);
    }
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

    // total order for use as map keys; not a numeric order on Q(sqrt d)
    friend bool operator<(const FieldElement& x, const FieldElement& y) {
        int c = cmp(x.a_, y.a_);
        if (c != 0) return c < 0;
        c = cmp(x.b_, y.b_);
        if (c != 0) return c < 0;
        return x.d_ < y.d_;
    }

    std::string str() const {
        if (b_ == 0) return a_.get_str();
        std::string s = a_ == 0 ? std::string() : a_.get_str();
        if (!s.empty()) s += "+";
        s += b_.get_str() + "*rt" + std::to_string(d_);
        return s;
    }

  private:
    void normalize() {
        a_.canonicalize();
        b_.canonicalize();
        if (b_ == 0) d_ = 0;
        else if (d_ == 0) throw MathError("FieldElement: surd part without extension");
    }
    static long merged_d(const FieldElement& x, const FieldElement& y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
        throw MathError("FieldElement: mixing extensions sqrt(" + std::to_string(x.d_) +
                        ") and sqrt(" + std::to_string(y.d_) + ")");
    }

    mpq_class a_, b_;
    long d_;
};

inline FieldElement div_by_long(const FieldElement& x, long n) {
    if (n == 0) throw MathError("division by zero");
    return x * FieldElement(1, n);
}

// binomial coefficient as an exact rational
inline FieldElement binomial(long n, long k) {
    if (k < 0 || k > n) return FieldElement(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return FieldElement(mpq_class(r));
}

inline FieldElement factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return FieldElement(mpq_class(r));
}

} // namespace qcurve

#endif
