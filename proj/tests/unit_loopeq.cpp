#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

/* Loop-equation consistency: the specialised generating functions built from
 * the engine's expansion tables satisfy the quadratic loop identity
 *
 *   (1/n) x d/dx F_{g,n}(x..x) =
 *       sum_{g1+g2=g, i+j=n-1} binom(n-1,i) (1/(i+1)) F'_{g1,i+1} (1/(j+1)) F'_{g2,j+1}
 *     + (1/(n(n+1))) (d/dx)^2 F_{g-1,n+1}(x..x)
 *     - (1/n) (d^2/du^2) F_{g-1,n+1}(u,x..x)|_{u=x}
 *     + (n-1) (d^2/du^2) F_{g,n-1}(u,x..x)|_{u=x}
 *
 * coefficientwise in 1/x for 2g-2+n <= 2, with F_{0,1} carrying its log x
 * term (whose derivative is the 1/x in the y-series).
 */

#include "qcurve/oracles.hpp"
#include "qcurve/recursion.hpp"

#include <functional>

using namespace qcurve;

namespace {

using XSeries = std::map<int, FieldElement>; // power of 1/x -> coefficient

constexpr int kDepth = 8;

FieldElement fe(long n, long d = 1) { return FieldElement(n, d); }

void add(XSeries& s, int pow, const FieldElement& c) {
    if (c.is_zero()) return;
    s[pow] += c;
    if (s[pow].is_zero()) s.erase(pow);
}

XSeries mul(const XSeries& a, const XSeries& b) {
    XSeries out;
    for (const auto& [p, c] : a)
        for (const auto& [q, d] : b) {
            if (p + q > kDepth + 2) continue;
            add(out, p + q, c * d);
        }
    return out;
}

XSeries scale(const XSeries& a, const FieldElement& f) {
    XSeries out;
    for (const auto& [p, c] : a) add(out, p, c * f);
    return out;
}

XSeries sum(const XSeries& a, const XSeries& b) {
    XSeries out = a;
    for (const auto& [p, c] : b) add(out, p, c);
    return out;
}

// d/dx of sum c_S x^{-S} is sum (-S) c_S x^{-S-1}
XSeries ddx(const XSeries& a) {
    XSeries out;
    for (const auto& [p, c] : a) add(out, p + 1, c * fe(-p));
    return out;
}

XSeries mul_x(const XSeries& a) { // multiply by x
    XSeries out;
    for (const auto& [p, c] : a) add(out, p - 1, c);
    return out;
}

struct Tables {
    Engine* eng;
    std::map<std::pair<int, int>, std::map<std::vector<long>, FieldElement>> tab;

    const std::map<std::vector<long>, FieldElement>& table(int g, int n) {
        auto key = std::make_pair(g, n);
        auto it = tab.find(key);
        if (it == tab.end()) it = tab.emplace(key, eng->x_expansion(g, n, kDepth + 2)).first;
        return it->second;
    }

    // iterate ordered arrangements of each profile in the table
    void for_each_ordered(int g, int n,
                          const std::function<void(const std::vector<long>&, const FieldElement&)>& fn) {
        for (const auto& [mu, M] : table(g, n)) {
            std::vector<long> arr = mu;
            std::sort(arr.begin(), arr.end());
            do {
                fn(arr, M);
            } while (std::next_permutation(arr.begin(), arr.end()));
        }
    }

    // F'_{g,n} := d/dx F_{g,n}(x,...,x); for (0,1) this is the y-series
    XSeries Fd(int g, int n) {
        XSeries F; // the diagonal specialisation without the log x part
        for_each_ordered(g, n, [&](const std::vector<long>& mu, const FieldElement& M) {
            long S = 0;
            for (long m : mu) S += m;
            FieldElement c = M;
            if (n % 2 == 1) c = -c;
            add(F, static_cast<int>(S), c);
        });
        XSeries out = ddx(F);
        if (g == 0 && n == 1) add(out, 1, fe(1)); // d/dx log x
        return out;
    }

    XSeries Fdd_diag(int g, int n) {
        XSeries F;
        for_each_ordered(g, n, [&](const std::vector<long>& mu, const FieldElement& M) {
            long S = 0;
            for (long m : mu) S += m;
            FieldElement c = M;
            if (n % 2 == 1) c = -c;
            add(F, static_cast<int>(S), c);
        });
        return ddx(ddx(F));
    }

    // (d^2/du^2) F_{g,n}(u, x, ..., x) |_{u=x}
    XSeries Fuu(int g, int n) {
        XSeries out;
        if (g == 0 && n == 1) {
            // F_{0,1}(u) = log u - sum M mu^{-mu}; d^2/du^2 -> -1/u^2 + ...
            add(out, 2, fe(-1));
            for (const auto& [mu, M] : table(0, 1))
                add(out, static_cast<int>(mu[0]) + 2, -M * fe(-mu[0]) * fe(-mu[0] - 1));
            return out;
        }
        for_each_ordered(g, n, [&](const std::vector<long>& mu, const FieldElement& M) {
            long S = 0;
            for (long m : mu) S += m;
            FieldElement c = M * fe(mu[0]) * fe(mu[0] + 1); // u^{-m} -> m(m+1) u^{-m-2}
            if (n % 2 == 1) c = -c;
            add(out, static_cast<int>(S) + 2, c);
        });
        return out;
    }
};

} // namespace

TEST_CASE("loop equation consistency for 2g-2+n <= 2") {
    SpectralCurve c = SpectralCurve::from_text("param = z\nx = z + 1/z\ny = 1/z\n");
    Engine eng(c);
    Tables T{&eng, {}};

    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {1, 2}}) {
        XSeries lhs = scale(mul_x(T.Fd(g, n)), fe(1, n));
        XSeries rhs;
        for (int g1 = 0; g1 <= g; ++g1) {
            int g2 = g - g1;
            for (int i = 0; i + 1 <= n; ++i) {
                int j = n - 1 - i;
                XSeries prod = mul(T.Fd(g1, i + 1), T.Fd(g2, j + 1));
                FieldElement w = binomial(n - 1, i) / fe((i + 1) * (j + 1));
                rhs = sum(rhs, scale(prod, w));
            }
        }
        if (g >= 1) {
            rhs = sum(rhs, scale(T.Fdd_diag(g - 1, n + 1), fe(1, n * (n + 1))));
            rhs = sum(rhs, scale(T.Fuu(g - 1, n + 1), fe(-1, n)));
        }
        if (n >= 2) rhs = sum(rhs, scale(T.Fuu(g, n - 1), fe(n - 1)));

        for (int p = 0; p <= kDepth; ++p) {
            FieldElement l = lhs.count(p) ? lhs.at(p) : fe(0);
            FieldElement r = rhs.count(p) ? rhs.at(p) : fe(0);
            CAPTURE(g);
            CAPTURE(n);
            CAPTURE(p);
            CHECK(l == r);
        }
    }
}
