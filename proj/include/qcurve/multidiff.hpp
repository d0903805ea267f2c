#ifndef QCURVE_MULTIDIFF_HPP
#define QCURVE_MULTIDIFF_HPP

/* Multidifferentials in the pole-differential basis.
 *
 * BasisIndex (alpha, k) denotes the one-variable differential
 * (z - alpha)^{-k-1} dz = d((z - alpha)^{-k}) * (-1/k), k >= 1, at branch
 * point number alpha.  A stable omega^g_n is a symmetric tensor: we store a
 * map from SORTED index tuples to coefficients, where the stored value is
 * the coefficient of ANY ordered arrangement of that tuple (they coincide by
 * symmetry, which the recursion engine verifies).
 */

#include "qcurve/rational.hpp"

#include <compare>
#include <map>
#include <vector>

namespace qcurve {

struct BasisIndex {
    int alpha; // index into BranchData
    int k;     // pole order of the primitive; the differential has order k+1
    auto operator<=>(const BasisIndex&) const = default;
};

// canonical basis for arbitrary rational one-forms, used for residual checks
struct ExtIndex {
    int kind;        // 0: (z - pt)^{-k} dz with k >= 1;  1: z^k dz with k >= 0
    FieldElement pt; // pole location for kind 0
    int k;
    friend bool operator==(const ExtIndex& a, const ExtIndex& b) {
        return a.kind == b.kind && a.k == b.k && (a.kind == 1 || a.pt == b.pt);
    }
    friend bool operator<(const ExtIndex& a, const ExtIndex& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.kind == 0 && !(a.pt == b.pt)) return a.pt < b.pt;
        return a.k < b.k;
    }
};

template <class Idx>
class SymTensorT {
  public:
    using Key = std::vector<Idx>;

    SymTensorT() : n_(0) {}
    explicit SymTensorT(int slots) : n_(slots) {}

    int slots() const { return n_; }
    bool empty() const { return terms_.empty(); }
    const std::map<Key, FieldElement>& terms() const { return terms_; }

    static Key sorted(Key k) {
        std::sort(k.begin(), k.end());
        return k;
    }

    FieldElement coeff(Key key) const {
        std::sort(key.begin(), key.end());
        auto it = terms_.find(key);
        return it == terms_.end() ? FieldElement(0) : it->second;
    }

    void add(Key key, const FieldElement& c) {
        if (static_cast<int>(key.size()) != n_) throw MathError("SymTensor: slot mismatch");
        if (c.is_zero()) return;
        std::sort(key.begin(), key.end());
        auto it = terms_.find(key);
        if (it == terms_.end()) terms_.emplace(std::move(key), c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SymTensorT& operator+=(const SymTensorT& o) {
        if (n_ != o.n_) throw MathError("SymTensor: slot mismatch");
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    SymTensorT operator-() const {
        SymTensorT r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    friend SymTensorT operator-(const SymTensorT& a, const SymTensorT& b) {
        SymTensorT r = a;
        r += -b;
        return r;
    }
    SymTensorT operator*(const FieldElement& s) const {
        SymTensorT r(n_);
        if (s.is_zero()) return r;
        r.terms_ = terms_;
        for (auto& [k, c] : r.terms_) c = c * s;
        return r;
    }
    friend bool operator==(const SymTensorT& a, const SymTensorT& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    int max_k() const {
        int m = 0;
        for (const auto& [key, c] : terms_)
            for (const auto& b : key) m = std::max(m, b.k);
        return m;
    }

  private:
    int n_;
    std::map<Key, FieldElement> terms_;
};

using SymTensor = SymTensorT<BasisIndex>;
using ExtTensor = SymTensorT<ExtIndex>;
using TensorKey = SymTensor::Key;
using ExtKey = ExtTensor::Key;

/* omega^g_n: unstable cases are closed forms held by the engine; stable
 * cases carry tensor data.
 */
struct Multidifferential {
    int g = 0, n = 0;
    bool stable = false;
    SymTensor tensor;
};

} // namespace qcurve

#endif
