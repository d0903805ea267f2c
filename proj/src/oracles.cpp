#include "qcurve/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace qcurve {

namespace {

using Perm = std::vector<int>;

int cycle_count(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    int c = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        ++c;
        for (size_t j = i; !seen[j]; j = p[j]) seen[j] = 1;
    }
    return c;
}

Perm compose(const Perm& a, const Perm& b) { // (a o b)(i) = a[b[i]]
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

// enumerate fixed-point-free involutions (cycle type 2^e) of {0..2e-1}
void for_each_pairing(Perm& p, std::vector<char>& used, size_t n, const std::function<void(const Perm&)>& fn) {
    size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
        fn(p);
        return;
    }
    used[first] = 1;
    for (size_t j = first + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        p[first] = static_cast<int>(j);
        p[j] = static_cast<int>(first);
        for_each_pairing(p, used, n, fn);
        used[j] = 0;
    }
    used[first] = 0;
}

void for_each_involution(size_t n, const std::function<void(const Perm&)>& fn) {
    Perm p(n);
    std::vector<char> used(n, 0);
    for_each_pairing(p, used, n, fn);
}

FieldElement double_factorial_odd(long k) { // (2k-1)!!
    FieldElement r(1);
    for (long i = 1; i <= k; ++i) r *= FieldElement(2 * i - 1);
    return r;
}

/* labelled sigma_2 enumeration: disjoint cycles of lengths mu[0..n-1] covering
 * {0..2e-1}; cycle i is the i-th labelled point over infinity.
 */
void for_each_labelled_profile(const std::vector<long>& mu, size_t idx, Perm& p,
                               std::vector<char>& used, const std::function<void(const Perm&)>& fn) {
    size_t n = p.size();
    if (idx == mu.size()) {
        fn(p);
        return;
    }
    long len = mu[idx];
    // choose the support as an increasing sequence, then all cyclic orders
    std::vector<int> avail;
    for (size_t i = 0; i < n; ++i)
        if (!used[i]) avail.push_back(static_cast<int>(i));
    if (static_cast<long>(avail.size()) < len) return;
    std::vector<int> pick(len);
    std::function<void(size_t, size_t)> choose = [&](size_t from, size_t got) {
        if (got == static_cast<size_t>(len)) {
            // arrangements: fix pick[0] (the smallest chosen) as cycle start
            std::vector<int> rest(pick.begin() + 1, pick.end());
            std::sort(rest.begin(), rest.end());
            do {
                int prev = pick[0];
                for (int x : rest) {
                    p[prev] = x;
                    prev = x;
                }
                p[prev] = pick[0];
                for (int x : pick) used[x] = 1;
                for_each_labelled_profile(mu, idx + 1, p, used, fn);
                for (int x : pick) used[x] = 0;
            } while (std::next_permutation(rest.begin(), rest.end()));
            return;
        }
        for (size_t i = from; i < avail.size(); ++i) {
            pick[got] = avail[i];
            choose(i + 1, got + 1);
        }
    };
    choose(0, 0);
}

bool transitive(const Perm& a, const Perm& b) {
    size_t n = a.size();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    size_t cnt = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : {a[x], b[x]}) {
            if (!seen[y]) {
                seen[y] = 1;
                ++cnt;
                stack.push_back(y);
            }
        }
    }
    return cnt == n;
}

// tiny bivariate truncated series on the (v, e) grid, constant term separate
struct VEGrid {
    long vmax, emax;
    std::vector<std::vector<FieldElement>> c; // c[v][e], 0 <= v <= vmax, 0 <= e <= emax

    VEGrid(long vm, long em) : vmax(vm), emax(em), c(vm + 1, std::vector<FieldElement>(em + 1)) {}
};

} // namespace

FieldElement catalan(long n) {
    if (n < 0) throw GuardError("catalan: n must be >= 0");
    return div_by_long(binomial(2 * n, n), n + 1);
}

FieldElement stirling_first(long n, long k) {
    if (k < 0 || k > n) throw GuardError("stirling_first: need 0 <= k <= n");
    // coefficient of x^k in x(x+1)...(x+n-1)
    PolyQ p(1);
    PolyQ x = PolyQ::variable();
    for (long i = 0; i < n; ++i) p *= x + PolyQ(FieldElement(i));
    return p[static_cast<int>(k)];
}

FieldElement bernoulli(long m) {
    static std::vector<FieldElement> cache{FieldElement(1)};
    for (long j = static_cast<long>(cache.size()); j <= m; ++j) {
        FieldElement acc(0);
        for (long k = 0; k < j; ++k) acc += binomial(j + 1, k) * cache[k];
        cache.push_back(-acc / binomial(j + 1, j));
    }
    return cache[m];
}

FieldElement zeta_negative(long g) {
    if (g < 1) throw GuardError("zeta_negative: g >= 1");
    return -div_by_long(bernoulli(2 * g), 2 * g);
}

DessinCount dessin_count(long v, long e) {
    if (e < 1 || e > 5) throw GuardError("dessin_count: guard requires 1 <= e <= 5");
    if (v < 1 || v > 2 * e) throw GuardError("dessin_count: need 1 <= v <= 2e");

    struct Table {
        std::vector<FieldElement> disc; // indexed by v, 1..2e
        FieldElement invol_count;
    };
    static std::map<long, Table> cache;

    auto brute = [](long ee) {
        Table t;
        size_t n = static_cast<size_t>(2 * ee);
        // number of sigma_1 of cycle type 2^e, enumerated explicitly
        long invol = 0;
        for_each_involution(n, [&](const Perm&) { ++invol; });
        t.invol_count = FieldElement(invol);
        // sigma_0 runs over the full symmetric group; histogram by cycle count
        std::vector<long> hist(n + 1, 0);
        Perm p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            ++hist[cycle_count(p)];
        } while (std::next_permutation(p.begin(), p.end()));
        FieldElement fact = factorial(2 * ee);
        t.disc.assign(n + 1, FieldElement(0));
        for (size_t vv = 1; vv <= n; ++vv)
            t.disc[vv] = FieldElement(hist[vv]) * t.invol_count / fact;
        return t;
    };

    for (long ee = 1; ee <= e; ++ee)
        if (!cache.count(ee)) cache.emplace(ee, brute(ee));

    DessinCount out;
    out.v = v;
    out.e = e;
    out.disconnected = cache.at(e).disc[v];
    out.closed_form = stirling_first(2 * e, v) / (FieldElement(2).pow(e) * factorial(e));

    // connected part: coefficientwise log of 1 + sum f*(v,e) a^v b^e
    VEGrid D(2 * e, e);
    for (long ee = 1; ee <= e; ++ee)
        for (long vv = 1; vv <= 2 * ee; ++vv) D.c[vv][ee] = cache.at(ee).disc[vv];
    // log(1 + D) = sum (-1)^{k+1} D^k / k; D has e-valuation >= 1
    VEGrid L(2 * e, e), P(2 * e, e);
    for (long vv = 0; vv <= 2 * e; ++vv) P.c[vv] = D.c[vv];
    for (long k = 1; k <= e; ++k) {
        FieldElement sign = (k % 2 == 1) ? FieldElement(1) : FieldElement(-1);
        for (long vv = 0; vv <= 2 * e; ++vv)
            for (long ee = 0; ee <= e; ++ee) L.c[vv][ee] += div_by_long(P.c[vv][ee] * sign, k);
        if (k < e) {
            VEGrid N(2 * e, e);
            for (long v1 = 0; v1 <= 2 * e; ++v1)
                for (long e1 = 0; e1 <= e; ++e1) {
                    if (P.c[v1][e1].is_zero()) continue;
                    for (long v2 = 0; v1 + v2 <= 2 * e; ++v2)
                        for (long e2 = 0; e1 + e2 <= e; ++e2) {
                            if (D.c[v2][e2].is_zero()) continue;
                            N.c[v1 + v2][e1 + e2] += P.c[v1][e1] * D.c[v2][e2];
                        }
                }
            P = N;
        }
    }
    out.connected = L.c[v][e];
    return out;
}

FieldElement belyi_count(long g, const std::vector<long>& mu) {
    long total = 0;
    for (long m : mu) {
        if (m < 1) throw GuardError("belyi_count: profile parts must be positive");
        total += m;
    }
    if (total > 10) throw GuardError("belyi_count: guard requires sum(mu) <= 10");
    if (total % 2 != 0) return FieldElement(0);
    if (g < 0) return FieldElement(0);
    long e = total / 2;
    long n = static_cast<long>(mu.size());
    size_t N = static_cast<size_t>(2 * e);

    long count = 0;
    Perm sigma2(N);
    std::vector<char> used(N, 0);
    for_each_labelled_profile(mu, 0, sigma2, used, [&](const Perm& s2) {
        for_each_involution(N, [&](const Perm& s1) {
            Perm s0 = inverse(compose(s1, s2));
            long v = cycle_count(s0);
            // Euler characteristic: v - e + n = 2 - 2g
            if (v - e + n != 2 - 2 * g) return;
            if (!transitive(s1, s2)) return;
            ++count;
        });
    });
    return FieldElement(count) / factorial(2 * e);
}

PolyQ hermite(long N) {
    PolyQ out;
    PolyQ x = PolyQ::variable();
    for (long k = 0; 2 * k <= N; ++k) {
        FieldElement c = binomial(N, 2 * k) * double_factorial_odd(k) * FieldElement(2).pow(N - k);
        if (k % 2 == 1) c = -c;
        out += PolyQ::monomial(c, static_cast<int>(N - 2 * k));
    }
    return out;
}

PolyQ hermite_scaled(long N) {
    PolyQ out;
    for (long k = 0; 2 * k <= N; ++k) {
        FieldElement c = binomial(N, 2 * k) * double_factorial_odd(k) / FieldElement(N).pow(k);
        if (k % 2 == 1) c = -c;
        out += PolyQ::monomial(c, static_cast<int>(N - 2 * k));
    }
    return out;
}

std::vector<HbarPoly> wave_x_expansion_closed(int e_max) {
    if (e_max < 1) throw GuardError("wave_x_expansion_closed: e_max >= 1");
    std::vector<HbarPoly> out;
    for (int e = 1; e <= e_max; ++e) {
        HbarPoly prod(1);
        for (int j = 0; j < 2 * e; ++j)
            prod *= HbarPoly::monomial(FieldElement(1), -1) - HbarPoly(FieldElement(j));
        FieldElement scale = FieldElement(1) / (FieldElement(2).pow(e) * factorial(e));
        if (e % 2 == 1) scale = -scale;
        out.push_back(prod * HbarPoly::monomial(scale, e));
    }
    return out;
}

PolyQ hermite_wave_check(long N, int depth) {
    PolyQ h = hermite_scaled(N);
    // Hermite equation [(1/N d/dx)^2 - x (1/N) d/dx + 1] h
    PolyQ x = PolyQ::variable();
    PolyQ eq = div_by_long(h.derivative().derivative(), N * N) - div_by_long(x * h.derivative(), N) + h;
    // wave truncation: x^N psi-bar(x, 1/N) should equal h
    std::vector<HbarPoly> closed = wave_x_expansion_closed(std::max(depth, 1));
    FieldElement hb(1, N);
    PolyQ wave = PolyQ::monomial(FieldElement(1), static_cast<int>(N));
    PolyQ extra; // contributions with 2e > N must vanish identically at hbar = 1/N
    for (int e = 1; e <= static_cast<int>(closed.size()); ++e) {
        FieldElement c = closed[e - 1].eval(hb);
        if (2 * e <= N) wave += PolyQ::monomial(c, static_cast<int>(N - 2 * e));
        else extra += PolyQ::monomial(c, e);
    }
    PolyQ mismatch = wave - h;
    // degree-separated combination: zero iff all three residuals vanish
    return mismatch + eq * PolyQ::monomial(FieldElement(1), static_cast<int>(2 * N + 2)) +
           extra * PolyQ::monomial(FieldElement(1), static_cast<int>(4 * N + 8));
}

LaurentSeries<Polynomial<FieldElement>> gw_psi0(int order) {
    using KP = Polynomial<FieldElement>;
    using SP = LaurentSeries<KP>;
    if (order > 8) throw GuardError("gw_psi0: guard requires order <= 8");
    KP t = KP::variable();
    // F0 = sum_g c_g eps^{2g-1} (1-t eps)^{-(2g-1)}  +  sum_{k>=2} t^k/(k(k-1)) eps^{k-1}
    std::vector<KP> f(order + 1, KP(0));
    for (long g = 1; 2 * g - 1 <= order; ++g) {
        FieldElement cg = (FieldElement(1) - FieldElement(2).pow(1 - 2 * g)) * zeta_negative(g);
        cg = div_by_long(cg, 2 * g - 1);
        // (1 - t eps)^{-m} = sum_j binom(m-1+j, j) t^j eps^j
        long m = 2 * g - 1;
        for (long j = 0; m + j <= order; ++j) {
            FieldElement b = binomial(m - 1 + j, j);
            f[m + j] += t.pow(j) * (cg * b);
        }
    }
    for (long k = 2; k - 1 <= order; ++k) {
        FieldElement c = FieldElement(1) / FieldElement(k * (k - 1));
        f[k - 1] += t.pow(k) * c;
    }
    SP F0(0, std::move(f), order);
    return F0.exp();
}

LaurentSeries<Polynomial<FieldElement>> gw_psi0_recursion_residual(int order) {
    using KP = Polynomial<FieldElement>;
    using SP = LaurentSeries<KP>;
    SP psi = gw_psi0(order);
    // psi0(t-1): substitute t -> t-1 in every coefficient
    std::vector<KP> shifted(order + 1, KP(0));
    for (int o = 0; o <= order; ++o) shifted[o] = psi.coefficient(o).shifted(FieldElement(-1));
    SP psi_tm1(0, std::move(shifted), order);
    // factor 1 - (t - 1/2) eps
    KP t = KP::variable();
    SP factor(0, {KP(1), -(t - KP(FieldElement(1, 2)))}, order);
    return psi_tm1 - factor * psi;
}

namespace {

RatQ rat_shift_w(const RatQ& f, long delta) { // f(w + delta)
    return RatQ(f.num().shifted(FieldElement(delta)), f.den().shifted(FieldElement(delta)));
}

} // namespace

RatQ gw_psi_ratio(long d) {
    if (d < 0 || d > 6) throw GuardError("gw_psi_ratio: guard requires 0 <= d <= 6");
    static std::vector<RatQ> cache{RatQ(1)};
    PolyQ w = PolyQ::variable();
    for (long dd = static_cast<long>(cache.size()); dd <= d; ++dd) {
        // rho(w+1) - rho(w) = -rho_{d-1}(w-1) / (w^2 - 1/4)
        RatQ rhs = -rat_shift_w(cache[dd - 1], -1) / RatQ(w * w - PolyQ(FieldElement(1, 4)));
        long sd = 0;
        PartialFractions pf = partial_fractions(rhs, sd);
        if (!pf.poly.is_zero()) throw MathError("gw_psi_ratio: unexpected polynomial part");
        // ansatz rho_d = 1/d! + sum a_i / (w - (i - 1/2)); matching poles gives
        // a_1 = r(-1/2), a_{j+1} = r(j - 1/2) + a_j
        std::vector<FieldElement> a(dd + 2, FieldElement(0));
        auto rcoef = [&](long j) { // residue of rhs at w = j - 1/2
            FieldElement pole = FieldElement(2 * j - 1, 2);
            auto it = pf.parts.find(pole);
            if (it == pf.parts.end()) return FieldElement(0);
            if (it->second.size() > 1 && !it->second[1].is_zero())
                throw MathError("gw_psi_ratio: non-simple pole in difference equation");
            return it->second[0];
        };
        a[1] = rcoef(0);
        for (long j = 1; j <= dd; ++j) a[j + 1] = rcoef(j) + a[j];
        if (!a[dd + 1].is_zero()) throw MathError("gw_psi_ratio: telescoping did not close");
        RatQ rho(FieldElement(1) / factorial(dd));
        for (long i = 1; i <= dd; ++i) {
            PolyQ den = w - PolyQ(FieldElement(2 * i - 1, 2));
            rho += RatQ(PolyQ(a[i]), den);
        }
        // verify the difference equation exactly
        RatQ check = rat_shift_w(rho, 1) - rho - rhs;
        if (!check.is_zero()) throw MathError("gw_psi_ratio: difference equation verification failed");
        cache.push_back(rho);
    }
    return cache[d];
}

RatQ gw_psi_ratio_via_system(long d) {
    if (d < 0 || d > 6) throw GuardError("gw_psi_ratio_via_system: guard");
    PolyQ w = PolyQ::variable();
    // a[i][dd] with a[0][dd] = 1/dd!
    std::vector<std::vector<FieldElement>> a(d + 2, std::vector<FieldElement>(d + 1, FieldElement(0)));
    std::vector<RatQ> r(d + 1);
    r[0] = RatQ(1);
    a[0][0] = FieldElement(1);
    for (long dd = 1; dd <= d; ++dd) {
        a[0][dd] = FieldElement(1) / factorial(dd);
        for (long i = dd; i >= 2; --i)
            a[i][dd] = a[i + 1][dd] + div_by_long(a[i - 1][dd - 1], i * (i - 1));
        // r_{dd-1}(-1/2)
        FieldElement rm = r[dd - 1].eval(FieldElement(-1, 2));
        a[1][dd] = a[2][dd] + rm;
        RatQ rho(a[0][dd]);
        for (long i = 1; i <= dd; ++i)
            rho += RatQ(PolyQ(a[i][dd]), w - PolyQ(FieldElement(2 * i - 1, 2)));
        r[dd] = rho;
    }
    return r[d];
}

RatQ toda_residual(int m) {
    if (m < 0 || m > 2) throw GuardError("toda_residual: q-order 0..2 only");
    long need = m + 1;
    std::vector<RatQ> rho(need + 1);
    for (long dd = 0; dd <= need; ++dd) rho[dd] = gw_psi_ratio(dd);

    // truncated q-polynomials with rational-function coefficients
    auto mul = [&](const std::vector<RatQ>& A, const std::vector<RatQ>& B) {
        std::vector<RatQ> C(need + 1, RatQ(0));
        for (long i = 0; i <= need; ++i)
            for (long j = 0; i + j <= need; ++j) C[i + j] += A[i] * B[j];
        return C;
    };
    auto inv = [&](const std::vector<RatQ>& A) { // A[0] = 1
        std::vector<RatQ> I(need + 1, RatQ(0));
        I[0] = RatQ(1);
        for (long k = 1; k <= need; ++k) {
            RatQ acc(0);
            for (long j = 1; j <= k; ++j) acc += A[j] * I[k - j];
            I[k] = -acc;
        }
        return I;
    };

    std::vector<RatQ> up(need + 1), down(need + 1), mid(need + 1);
    for (long dd = 0; dd <= need; ++dd) {
        up[dd] = rat_shift_w(rho[dd], 1);   // t -> t-1 is w -> w+1
        down[dd] = rat_shift_w(rho[dd], -1); // t -> t+1 is w -> w-1
        mid[dd] = rho[dd];
    }
    std::vector<RatQ> lhs = mul(mul(up, down), mul(inv(mid), inv(mid)));
    RatQ R0 = rho[1]; // psi0(t-1) psi0(t+1) / psi0(t)^2 = rho_1(w)

    // log-expansion coefficients Lambda_d of log(1 + sum q^d rho_d)
    std::vector<RatQ> L(need + 1, RatQ(0));
    {
        std::vector<RatQ> u = mid;
        u[0] = RatQ(0);
        std::vector<RatQ> pw = u;
        for (long k = 1; k <= need; ++k) {
            FieldElement sign = (k % 2 == 1) ? FieldElement(1) : FieldElement(-1);
            for (long dd = 0; dd <= need; ++dd) L[dd] += pw[dd] * div_by_long(sign, k);
            if (k < need) pw = mul(pw, u);
        }
    }
    RatQ rhs = L[m + 1] * FieldElement((m + 1) * (m + 1));
    return R0 * lhs[m] - rhs;
}

} // namespace qcurve
