#ifndef QCURVE_LOGAUG_HPP
#define QCURVE_LOGAUG_HPP

/* Functions of the form  R(z) + sum_i c_i(z) * log(r_i(z))  with R, c_i, r_i
 * exact rational functions.  The class is closed under d/dz, addition and
 * multiplication by rational functions; products of two genuinely
 * log-augmented values are rejected.
 *
 * Local expansions at a point track the transcendental constants log(r_i(a))
 * symbolically (tagged by the value r_i(a)); identities that hold over the
 * base field must make those parts cancel, and the strict accessors enforce
 * it.
 */

#include "qcurve/laurent.hpp"

#include <map>
#include <vector>

namespace qcurve {

struct LogTerm {
    RatQ coeff;
    RatQ arg; // nonconstant
    friend bool operator==(const LogTerm& a, const LogTerm& b) {
        return a.coeff == b.coeff && a.arg == b.arg;
    }
    friend bool operator<(const LogTerm& a, const LogTerm& b) {
        if (a.arg != b.arg) return a.arg < b.arg;
        return a.coeff < b.coeff;
    }
};

class LogAugmented {
  public:
    LogAugmented() = default;
    LogAugmented(const RatQ& r) : rat_(r) {}
    LogAugmented(long n) : rat_(RatQ(n)) {}
    LogAugmented(const FieldElement& c) : rat_(RatQ(c)) {}
    LogAugmented(RatQ r, std::vector<LogTerm> logs) : rat_(std::move(r)), logs_(std::move(logs)) {
        normalize();
    }

    static LogAugmented log_of(const RatQ& arg, const RatQ& coeff = RatQ(1)) {
        if (arg.is_constant()) throw MathError("log of a constant");
        if (arg.is_zero()) throw MathError("log of zero");
        return LogAugmented(RatQ(), {LogTerm{coeff, arg}});
    }

    const RatQ& rational_part() const { return rat_; }
    const std::vector<LogTerm>& log_terms() const { return logs_; }
    bool has_logs() const { return !logs_.empty(); }
    bool is_zero() const { return rat_.is_zero() && logs_.empty(); }

    RatQ rational() const {
        if (has_logs()) throw MathError("LogAugmented: value has log terms");
        return rat_;
    }

    LogAugmented operator-() const {
        std::vector<LogTerm> ls = logs_;
        for (auto& t : ls) t.coeff = -t.coeff;
        return LogAugmented(-rat_, std::move(ls));
    }
    friend LogAugmented operator+(const LogAugmented& f, const LogAugmented& g) {
        std::vector<LogTerm> ls = f.logs_;
        ls.insert(ls.end(), g.logs_.begin(), g.logs_.end());
        return LogAugmented(f.rat_ + g.rat_, std::move(ls));
    }
    friend LogAugmented operator-(const LogAugmented& f, const LogAugmented& g) { return f + (-g); }
    friend LogAugmented operator*(const LogAugmented& f, const LogAugmented& g) {
        if (f.has_logs() && g.has_logs())
            throw MathError("LogAugmented: product of two log-augmented values");
        const LogAugmented& withlogs = f.has_logs() ? f : g;
        const RatQ& r = f.has_logs() ? g.rat_ : f.rat_;
        std::vector<LogTerm> ls = withlogs.logs_;
        for (auto& t : ls) t.coeff = t.coeff * r;
        return LogAugmented(f.rat_ * g.rat_, std::move(ls));
    }
    LogAugmented operator*(const RatQ& r) const { return *this * LogAugmented(r); }
    LogAugmented operator/(const RatQ& r) const {
        if (r.is_zero()) throw MathError("LogAugmented: division by zero");
        return *this * LogAugmented(RatQ(1) / r);
    }
    LogAugmented& operator+=(const LogAugmented& g) { return *this = *this + g; }
    LogAugmented& operator-=(const LogAugmented& g) { return *this = *this - g; }

    friend bool operator==(const LogAugmented& f, const LogAugmented& g) {
        return f.rat_ == g.rat_ && f.logs_ == g.logs_;
    }
    friend bool operator!=(const LogAugmented& f, const LogAugmented& g) { return !(f == g); }

    LogAugmented derivative() const { // d/dz
        LogAugmented out(rat_.derivative());
        for (const auto& t : logs_) {
            out += LogAugmented(t.coeff * t.arg.derivative() / t.arg);
            if (!t.coeff.is_constant())
                out += log_of(t.arg, t.coeff.derivative());
        }
        return out;
    }

  private:
    void normalize() {
        std::map<RatQ, RatQ> merged;
        for (auto& t : logs_) {
            if (t.arg.is_constant()) throw MathError("log of a constant");
            merged[t.arg] += t.coeff;
        }
        logs_.clear();
        for (auto& [arg, coeff] : merged)
            if (!coeff.is_zero()) logs_.push_back(LogTerm{coeff, arg});
    }

    RatQ rat_;
    std::vector<LogTerm> logs_;
};

/* Expansion of a log-augmented function at a finite regular point of its log
 * arguments.  kappas[i] is the series multiplying the symbolic constant
 * log(tag_i).
 */
struct LocalExpansion {
    SeriesQ main;
    std::map<FieldElement, SeriesQ> kappas;

    LocalExpansion() = default;
    explicit LocalExpansion(SeriesQ m) : main(std::move(m)) {}

    bool has_kappas() const { return !kappas.empty(); }

    LocalExpansion& operator+=(const LocalExpansion& o) {
        main += o.main;
        for (const auto& [tag, s] : o.kappas) add_kappa(tag, s);
        return *this;
    }
    friend LocalExpansion operator*(const LocalExpansion& e, const SeriesQ& s) {
        LocalExpansion r;
        r.main = e.main * s;
        for (const auto& [tag, k] : e.kappas) r.add_kappa(tag, k * s);
        return r;
    }
    LocalExpansion operator*(const FieldElement& c) const {
        LocalExpansion r;
        r.main = main * c;
        for (const auto& [tag, k] : kappas) r.add_kappa(tag, k * c);
        return r;
    }

    void add_kappa(const FieldElement& tag, const SeriesQ& s) {
        auto it = kappas.find(tag);
        if (it == kappas.end()) {
            if (!s.is_zero()) kappas.emplace(tag, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) kappas.erase(it);
        }
    }

    // coefficient extraction that insists the symbolic log constants cancel
    FieldElement coefficient_strict(int order) const {
        for (const auto& [tag, s] : kappas) {
            if (!(s.coefficient(order) == FieldElement(0)))
                throw MathError("local expansion: transcendental constant log(" + tag.str() +
                                ") survives at order " + std::to_string(order));
        }
        return main.coefficient(order);
    }
    FieldElement residue_strict() const { return coefficient_strict(-1); }
};

LocalExpansion expand_local(const LogAugmented& f, const FieldElement& a, int order);

/* Expansion at z = infinity in u = 1/z.  log z contributions are kept in a
 * separate series coefficient (they are not Laurent in u).
 */
struct InfinityExpansion {
    SeriesQ main;      // series in u = 1/z
    SeriesQ logz;      // coefficient (series in u) of log z
    std::map<FieldElement, SeriesQ> kappas;
};
InfinityExpansion expand_at_infinity(const LogAugmented& f, int order);

struct PartialFractions {
    PolyQ poly;
    std::map<FieldElement, std::vector<FieldElement>> parts; // root -> coeffs of (z-root)^(-j), j>=1
};
PartialFractions partial_fractions(const RatQ& f, long& session_d);

// exact antiderivatives in closed log-augmented form
LogAugmented integrate_rational(const RatQ& f, long& session_d);
LogAugmented integrate(const LogAugmented& f, long& session_d);

} // namespace qcurve

#endif
