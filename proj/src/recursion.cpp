#include "qcurve/recursion.hpp"

#include <algorithm>
#include <functional>

namespace qcurve {

namespace {

// multiplicity map of a sorted key
std::map<BasisIndex, int> multiplicities(const TensorKey& key) {
    std::map<BasisIndex, int> m;
    for (const auto& b : key) ++m[b];
    return m;
}

TensorKey remove_one(const TensorKey& key, const BasisIndex& b) {
    TensorKey out;
    out.reserve(key.size() - 1);
    bool removed = false;
    for (const auto& x : key) {
        if (!removed && x == b) {
            removed = true;
            continue;
        }
        out.push_back(x);
    }
    if (!removed) throw MathError("remove_one: element not present");
    return out;
}

// all sub-multisets I of B: calls fn(I, J, W) with W = prod binom(mult_B, mult_I)
void for_each_submultiset(const TensorKey& B,
                          const std::function<void(const TensorKey&, const TensorKey&, const FieldElement&)>& fn) {
    std::vector<std::pair<BasisIndex, int>> dist;
    for (const auto& [b, m] : multiplicities(B)) dist.push_back({b, m});
    TensorKey I, J;
    std::function<void(size_t, FieldElement)> rec = [&](size_t idx, FieldElement W) {
        if (idx == dist.size()) {
            fn(I, J, W);
            return;
        }
        const auto& [b, m] = dist[idx];
        for (int take = 0; take <= m; ++take) {
            for (int t = 0; t < take; ++t) I.push_back(b);
            for (int t = 0; t < m - take; ++t) J.push_back(b);
            rec(idx + 1, W * binomial(m, take));
            for (int t = 0; t < take; ++t) I.pop_back();
            for (int t = 0; t < m - take; ++t) J.pop_back();
        }
    };
    rec(0, FieldElement(1));
}

} // namespace

Engine::Engine(const SpectralCurve& curve) : curve_(curve) { bd_ = curve.validate(); }

Engine::Local Engine::make_local(int ai, int N) {
    Local L;
    L.ai = ai;
    L.alpha = bd_.points[ai].alpha;
    L.N = N;
    L.sigma = curve_.deck_transform(L.alpha, N);
    L.sigma_prime = L.sigma.derivative();
    L.sigma_pow.push_back(SeriesQ(FieldElement(1)));
    L.sigma_pow.push_back(L.sigma);

    LocalExpansion ye = curve_.y_expansion(L.alpha, N + 2);
    SeriesQ dy_main = ye.main - ye.main.compose(L.sigma);
    for (const auto& [tag, ser] : ye.kappas) {
        SeriesQ diff = ser - ser.compose(L.sigma);
        if (!diff.is_zero())
            throw MathError("kernel: transcendental log constant log(" + tag.str() +
                            ") does not cancel in y(p) - y(p-hat)");
    }
    SeriesQ xp = series_expand(curve_.xprime(), ExpansionPoint::at(L.alpha), N);
    SeriesQ D = dy_main * xp * FieldElement(2);
    if (D.is_zero() || D.lowest() != 2)
        throw MathError("kernel: y(p) - y(p-hat) vanishes to order >= 2 at " + L.alpha.str() +
                        " (dy should be nonzero at a branch point)");
    L.Dinv = D.inverse();
    return L;
}

const SeriesQ& Engine::slot_series(Local& L, const BasisIndex& b, bool hatted) {
    auto& cache = hatted ? L.ser_zh : L.ser_z;
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
    SeriesQ base;
    if (b.alpha == L.ai) {
        base = SeriesQ::monomial(FieldElement(1), -(b.k + 1));
    } else {
        // ((alpha - beta) + s)^{-k-1}
        FieldElement c = L.alpha - bd_.points[b.alpha].alpha;
        PolyQ lin(std::vector<FieldElement>{c, FieldElement(1)});
        base = series_expand(RatQ(PolyQ(1), lin.pow(b.k + 1)), ExpansionPoint::at(FieldElement(0)), L.N);
        base.set_point(ExpansionPoint::formal());
    }
    SeriesQ value = hatted ? base.compose(L.sigma) * L.sigma_prime : base;
    return cache.emplace(b, std::move(value)).first->second;
}

SeriesQ Engine::kappa(Local& L, int m) {
    while (static_cast<int>(L.sigma_pow.size()) <= m)
        L.sigma_pow.push_back(L.sigma_pow.back() * L.sigma);
    SeriesQ smon = SeriesQ::monomial(FieldElement(1), m);
    return (L.sigma_pow[m] - smon) * L.Dinv;
}

KernelSeries Engine::recursion_kernel(const FieldElement& alpha, int order, int m_max) {
    int ai = bd_.index_of(alpha);
    Local L = make_local(ai, std::max(order + m_max + 8, 16));
    KernelSeries out;
    out.alpha = alpha;
    for (int m = 1; m <= m_max; ++m) out.kappa.push_back(kappa(L, m).truncated(order));
    return out;
}

const Multidifferential& Engine::omega(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n < -1)
        throw GuardError("omega: invalid (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")");
    std::pair<int, int> key{g, n};
    {
        std::lock_guard<std::mutex> lk(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Multidifferential md;
    md.g = g;
    md.n = n;
    md.stable = is_stable(g, n);
    if (md.stable) compute_stable(g, n, md);
    std::lock_guard<std::mutex> lk(memo_mutex_);
    auto [it, inserted] = memo_.emplace(key, std::move(md));
    return it->second;
}

void Engine::compute_stable(int g, int n, Multidifferential& out) {
    out.tensor = SymTensor(n);
    int nspec = n - 1;

    // make sure every lower invariant is available, and record the largest
    // pole index we will feed into the local series
    int maxk = 1;
    std::vector<std::pair<int, int>> lower;
    for (int g1 = 0; g1 <= g; ++g1)
        for (int n1 = 1; n1 <= nspec + 1; ++n1) {
            if (!is_stable(g1, n1)) continue;
            if (2 * g1 - 2 + n1 >= 2 * g - 2 + n) continue;
            lower.push_back({g1, n1});
        }
    if (g >= 1 && is_stable(g - 1, n + 1)) lower.push_back({g - 1, n + 1});
    for (auto [g1, n1] : lower) maxk = std::max(maxk, omega(g1, n1).tensor.max_k());

    int N = 4 * maxk + 28;
    int kcap = 2 * maxk + 4;

    // totals: ordered coefficient of (b1; B) accumulated over branch points
    std::map<std::pair<BasisIndex, TensorKey>, FieldElement> totals;

    for (int ai = 0; ai < static_cast<int>(bd_.points.size()); ++ai) {
        Local L = make_local(ai, N);

        // single-slot contractions of the lower invariants
        std::map<int, std::map<TensorKey, SeriesQ>> Fz, Fzh; // by genus
        for (int g1 = 0; g1 <= g; ++g1)
            for (int n1 = 1; n1 <= nspec + 1; ++n1) {
                if (!is_stable(g1, n1) || 2 * g1 - 2 + n1 >= 2 * g - 2 + n) continue;
                const SymTensor& T = omega(g1, n1).tensor;
                for (const auto& [K, c] : T.terms()) {
                    for (size_t i = 0; i < K.size(); ++i) {
                        if (i > 0 && K[i] == K[i - 1]) continue;
                        TensorKey rest = remove_one(K, K[i]);
                        Fz[g1][rest] += slot_series(L, K[i], false) * c;
                        Fzh[g1][rest] += slot_series(L, K[i], true) * c;
                    }
                }
            }

        // first bracket term omega_{g-1, n+1}(z, z-hat, spectators)
        std::map<TensorKey, SeriesQ> F0;
        if (g >= 1) {
            if (g - 1 == 0 && n + 1 == 2) {
                // B(z, z-hat) = sigma'(s) / (s - sigma(s))^2 (times ds^2)
                SeriesQ diff = SeriesQ::monomial(FieldElement(1), 1).truncated(N) - L.sigma;
                F0[TensorKey{}] = L.sigma_prime * (diff * diff).inverse();
            } else {
                const SymTensor& T = omega(g - 1, n + 1).tensor;
                for (const auto& [K, c] : T.terms()) {
                    auto mult = multiplicities(K);
                    for (const auto& [u, mu] : mult)
                        for (const auto& [v, mv] : mult) {
                            if (u == v && mu < 2) continue;
                            TensorKey rest = remove_one(remove_one(K, u), v);
                            F0[rest] += slot_series(L, u, false) * slot_series(L, v, true) * c;
                        }
                }
            }
        }

        // factor lookup; |I| == 1 at genus 0 is the special omega^0_2 factor
        auto lookup = [&](int g1, const TensorKey& I, bool hatted) -> SeriesQ {
            if (g1 == 0) {
                if (I.size() == 1) {
                    const BasisIndex& b = I[0];
                    if (b.alpha != L.ai) return SeriesQ(FieldElement(0), N);
                    if (!hatted) return SeriesQ::monomial(FieldElement(b.k), b.k - 1);
                    while (static_cast<int>(L.sigma_pow.size()) <= b.k - 1)
                        L.sigma_pow.push_back(L.sigma_pow.back() * L.sigma);
                    return L.sigma_pow[b.k - 1] * L.sigma_prime * FieldElement(b.k);
                }
                if (I.empty()) return SeriesQ(FieldElement(0), N); // omega^0_1 excluded
            }
            const auto& M = hatted ? Fzh : Fz;
            auto git = M.find(g1);
            if (git == M.end()) return SeriesQ(FieldElement(0), N);
            auto it = git->second.find(I);
            if (it == git->second.end()) return SeriesQ(FieldElement(0), N);
            return it->second;
        };

        // candidate spectator contents
        std::set<TensorKey> cands;
        for (const auto& [B, s] : F0) cands.insert(B);
        auto key_union = [](TensorKey a, const TensorKey& b) {
            a.insert(a.end(), b.begin(), b.end());
            std::sort(a.begin(), a.end());
            return a;
        };
        for (int g1 = 0; g1 <= g; ++g1) {
            int g2 = g - g1;
            std::vector<TensorKey> left, right;
            if (Fz.count(g1))
                for (const auto& [I, s] : Fz.at(g1)) left.push_back(I);
            if (g1 == 0)
                for (int k = 1; k <= kcap; ++k) left.push_back(TensorKey{BasisIndex{ai, k}});
            if (Fzh.count(g2))
                for (const auto& [J, s] : Fzh.at(g2)) right.push_back(J);
            if (g2 == 0)
                for (int k = 1; k <= kcap; ++k) right.push_back(TensorKey{BasisIndex{ai, k}});
            for (const auto& I : left)
                for (const auto& J : right)
                    if (static_cast<int>(I.size() + J.size()) == nspec) cands.insert(key_union(I, J));
        }

        for (const TensorKey& B : cands) {
            SeriesQ SB; // exact zero
            auto f0 = F0.find(B);
            if (f0 != F0.end()) SB += f0->second;
            for_each_submultiset(B, [&](const TensorKey& I, const TensorKey& J, const FieldElement& W) {
                for (int g1 = 0; g1 <= g; ++g1) {
                    SeriesQ f1 = lookup(g1, I, false);
                    if (f1.is_zero()) continue;
                    SeriesQ f2 = lookup(g - g1, J, true);
                    if (f2.is_zero()) continue;
                    SB += f1 * f2 * W;
                }
            });
            if (SB.is_zero()) continue;
            int lo = SB.lowest();
            for (int m = 1; m - 2 + lo <= -1; ++m) {
                FieldElement c = (kappa(L, m) * SB).residue();
                totals[{BasisIndex{ai, m}, B}] += c;
            }
        }
    }

    // assemble the symmetric tensor; representatives of the same sorted key
    // must agree (symmetry of the invariants)
    std::map<TensorKey, FieldElement> assembled;
    for (const auto& [rep, c] : totals) {
        TensorKey full = rep.second;
        full.push_back(rep.first);
        std::sort(full.begin(), full.end());
        auto it = assembled.find(full);
        if (it == assembled.end()) assembled.emplace(std::move(full), c);
        else if (!(it->second == c))
            throw MathError("omega(" + std::to_string(g) + "," + std::to_string(n) +
                            "): computed tensor is not symmetric (internal error)");
    }
    for (const auto& [K, c] : assembled) {
        if (c.is_zero()) continue;
        out.tensor.add(K, c);
        for (const auto& b : K)
            if (b.k + 1 > 6 * g - 6 + 4 * n)
                warnings_.push_back("omega(" + std::to_string(g) + "," + std::to_string(n) +
                                    "): pole order " + std::to_string(b.k + 1) +
                                    " exceeds the bound " + std::to_string(6 * g - 6 + 4 * n));
    }
}

SeriesQ Engine::u_of_w(int order) {
    // w = 1/x as a series in u = 1/z must have valuation 1
    RatQ winv = RatQ(1) / curve_.x();
    SeriesQ w_of_u = expand_rational(winv, ExpansionPoint::infinity(), order + 2);
    if (w_of_u.is_zero() || w_of_u.lowest() != 1)
        throw MathError("x_expansion: x must have a simple pole at z = infinity");
    return series_reversion(w_of_u.set_point(ExpansionPoint::formal()), order);
}

SeriesQ Engine::slot_w_series(const BasisIndex& b, int order) {
    FieldElement beta = bd_.points[b.alpha].alpha;
    PolyQ z = PolyQ::variable();
    PolyQ lin = z - PolyQ(beta);
    RatQ f = RatQ(PolyQ(1), lin.pow(b.k + 1)) / curve_.xprime();
    SeriesQ fu = expand_rational(f, ExpansionPoint::infinity(), order + 2);
    return fu.set_point(ExpansionPoint::formal()).compose(u_of_w(order)).truncated(order);
}

SeriesQ Engine::dF01_dx_series(int depth) {
    if (depth < 1) throw GuardError("x_expansion: depth must be >= 1");
    if (curve_.y().has_logs())
        throw MathError("x_expansion: (0,1) expansion requires rational y");
    SeriesQ yu = expand_rational(curve_.y().rational(), ExpansionPoint::infinity(), depth + 2);
    return yu.set_point(ExpansionPoint::formal()).compose(u_of_w(depth + 1)).truncated(depth + 1);
}

std::map<std::vector<long>, FieldElement> Engine::x_expansion(int g, int n, long mu_max) {
    if (mu_max < 1) throw GuardError("x_expansion: depth must be >= 1");
    std::map<std::vector<long>, FieldElement> table;

    auto canonical = [](std::vector<long> mu) {
        std::sort(mu.rbegin(), mu.rend());
        return mu;
    };

    if (g == 0 && n == 1) {
        SeriesQ s = dF01_dx_series(static_cast<int>(mu_max));
        for (long mu = 1; mu <= mu_max; ++mu) {
            FieldElement M = div_by_long(s.coefficient(static_cast<int>(mu) + 1), mu);
            if (!M.is_zero()) table[{mu}] = M;
        }
        return table;
    }

    if (g == 0 && n == 2) {
        // [B - dx1 dx2/(x1-x2)^2] / (dx1 dx2), bivariate in (z1, z2)
        using K1 = RatQ;
        using P1 = Polynomial<K1>;
        using R1 = RationalFunction<K1>;
        auto lift_poly = [](const PolyQ& p) {
            std::vector<K1> cs;
            for (const auto& c : p.coeffs()) cs.push_back(RatQ(c));
            return P1(cs);
        };
        auto lift_series = [](const SeriesQ& s, int upto) {
            std::vector<K1> cs;
            int lo = s.is_zero() ? 0 : s.lowest();
            for (int o = lo; o <= std::min(upto, s.trunc()); ++o) cs.push_back(RatQ(s.coefficient(o)));
            return LaurentSeries<K1>(lo, std::move(cs), std::min(upto, s.trunc()));
        };
        int order2 = static_cast<int>(mu_max) + 2;
        K1 x1 = curve_.x();
        K1 xp1 = curve_.xprime();
        R1 x2(lift_poly(curve_.x().num()), lift_poly(curve_.x().den()));
        R1 xp2(lift_poly(curve_.xprime().num()), lift_poly(curve_.xprime().den()));
        P1 z2 = P1::variable();
        R1 dz = R1(z2) - R1(P1(K1(RatQ::variable())));
        R1 dxdiff = x2 - R1(P1(x1));
        R1 W2 = R1(1) / (dz * dz * R1(P1(xp1)) * xp2) - R1(1) / (dxdiff * dxdiff);
        LaurentSeries<K1> s2 = expand_rational(W2, ExpansionPoint::infinity(), order2);
        SeriesQ uw = u_of_w(order2);
        LaurentSeries<K1> in_w2 =
            s2.set_point(ExpansionPoint::formal()).compose(lift_series(uw, order2));
        for (long mu2 = 1; mu2 + 1 <= mu_max; ++mu2) {
            K1 coef = in_w2.coefficient(static_cast<int>(mu2) + 1); // rational in z1
            if (coef.is_zero()) continue;
            SeriesQ s1 = expand_rational(coef, ExpansionPoint::infinity(),
                                         static_cast<int>(mu_max - mu2) + 2);
            SeriesQ s1w = s1.set_point(ExpansionPoint::formal())
                              .compose(u_of_w(static_cast<int>(mu_max - mu2) + 1));
            for (long mu1 = 1; mu1 + mu2 <= mu_max; ++mu1) {
                FieldElement v = s1w.coefficient(static_cast<int>(mu1) + 1);
                if (v.is_zero()) continue;
                FieldElement M = v / FieldElement(mu1 * mu2);
                std::vector<long> key = canonical({mu1, mu2});
                auto it = table.find(key);
                if (it == table.end()) table.emplace(key, M);
                else if (!(it->second == M))
                    throw MathError("x_expansion(0,2): asymmetric table (internal error)");
            }
        }
        return table;
    }

    if (!is_stable(g, n)) throw GuardError("x_expansion: unstable (g, n)");

    const SymTensor& T = omega(g, n).tensor;
    int order = static_cast<int>(mu_max) + 2;
    std::map<BasisIndex, SeriesQ> slotw;
    for (const auto& [K, c] : T.terms())
        for (const auto& b : K)
            if (!slotw.count(b)) slotw.emplace(b, slot_w_series(b, order));

    // ordered coefficient of x1^{-mu1-1} ... xn^{-mun-1}
    std::map<std::vector<long>, FieldElement> ordered;
    for (const auto& [K, c] : T.terms()) {
        TensorKey arr = K;
        do {
            std::vector<long> mu(n, 1);
            std::function<void(int, long, FieldElement)> rec = [&](int slot, long used, FieldElement prod) {
                if (slot == n) {
                    std::vector<long> key(mu);
                    ordered[key] += prod * c;
                    return;
                }
                const SeriesQ& s = slotw.at(arr[slot]);
                for (long m = 1; used + m + (n - slot - 1) <= mu_max; ++m) {
                    FieldElement co = s.coefficient(static_cast<int>(m) + 1);
                    if (co.is_zero()) continue;
                    mu[slot] = m;
                    rec(slot + 1, used + m, prod * co);
                }
            };
            rec(0, 0, FieldElement(1));
        } while (std::next_permutation(arr.begin(), arr.end()));
    }
    for (const auto& [mu, v] : ordered) {
        std::vector<long> key = canonical(mu);
        FieldElement denom(1);
        for (long m : mu) denom *= FieldElement(m);
        // raw coefficient is (-1)^n M_{g,n}(mu) in the Belyi normalisation
        FieldElement M = v / denom;
        if (n % 2 == 1) M = -M;
        if (M.is_zero()) continue;
        auto it = table.find(key);
        if (it == table.end()) table.emplace(key, M);
        else if (!(it->second == M))
            throw MathError("x_expansion: asymmetric table (internal error)");
    }
    return table;
}

const LogAugmented& Engine::phi() {
    // antiderivative of omega^0_1 = -y dx; with this choice the dilaton
    // identity holds in the form (2-2g-n) omega^g_n under the sign
    // conventions of the recursion (omega^0_1 = -y dx)
    if (!phi_ready_) {
        LogAugmented ydx = -(curve_.y() * curve_.xprime());
        phi_ = integrate(ydx, curve_.session_d());
        phi_ready_ = true;
    }
    return phi_;
}

void Engine::shift_phi(const FieldElement& c) {
    phi();
    phi_ += LogAugmented(c);
}

ExtTensor Engine::check_string(int g, int n, int m) {
    if (m != 0 && m != 1) throw GuardError("check_string: m must be 0 or 1");
    if (!is_stable(g, n)) throw GuardError("check_string: (g, n) must be stable");
    ExtTensor residual(n);

    auto ext_of = [&](const BasisIndex& b) {
        return ExtIndex{0, bd_.points[b.alpha].alpha, b.k + 1};
    };
    auto ext_key = [&](const TensorKey& K) {
        ExtKey out;
        for (const auto& b : K) out.push_back(ext_of(b));
        std::sort(out.begin(), out.end());
        return out;
    };

    // LHS: sum over branch points of Res x^m y omega^g_{n+1}(z, spectators)
    const SymTensor& T1 = omega(g, n + 1).tensor;
    int maxk = T1.max_k();
    std::vector<LocalExpansion> weights; // per branch point: series of x^m y
    for (const auto& bp : bd_.points) {
        SeriesQ xs = series_expand(curve_.x().pow(m), ExpansionPoint::at(bp.alpha), maxk + 2);
        weights.push_back(curve_.y_expansion(bp.alpha, maxk + 2) * xs);
    }
    for (const auto& [K, c] : T1.terms()) {
        for (size_t i = 0; i < K.size(); ++i) {
            if (i > 0 && K[i] == K[i - 1]) continue;
            FieldElement w = weights[K[i].alpha].coefficient_strict(K[i].k);
            if (w.is_zero()) continue;
            residual.add(ext_key(remove_one(K, K[i])), c * w);
        }
    }

    // plus sum_j dz_j d/dz_j ( x^m omega^g_n / dx(z_j) )  (the identity moves
    // this to the right-hand side with a minus sign)
    const SymTensor& T0 = omega(g, n).tensor;
    PolyQ z = PolyQ::variable();
    for (const auto& [K, c] : T0.terms()) {
        for (size_t i = 0; i < K.size(); ++i) {
            if (i > 0 && K[i] == K[i - 1]) continue;
            const BasisIndex& b = K[i];
            PolyQ lin = z - PolyQ(bd_.points[b.alpha].alpha);
            RatQ f = curve_.x().pow(m) * RatQ(PolyQ(1), lin.pow(b.k + 1)) / curve_.xprime();
            RatQ df = f.derivative();
            // decompose into the canonical one-form basis
            PartialFractions pf = partial_fractions(df, curve_.session_d());
            TensorKey restB = remove_one(K, b);
            ExtKey rest = ext_key(restB);
            auto scatter = [&](const ExtIndex& e, const FieldElement& d) {
                if (d.is_zero()) return;
                ExtKey full = rest;
                full.push_back(e);
                std::sort(full.begin(), full.end());
                int mult = 0;
                for (const auto& x : full)
                    if (x == e) ++mult;
                residual.add(full, c * d * FieldElement(mult));
            };
            for (int j = 0; j <= pf.poly.degree(); ++j) scatter(ExtIndex{1, FieldElement(0), j}, pf.poly[j]);
            for (const auto& [root, coeffs] : pf.parts)
                for (size_t jj = 1; jj <= coeffs.size(); ++jj)
                    scatter(ExtIndex{0, root, static_cast<int>(jj)}, coeffs[jj - 1]);
        }
    }
    return residual;
}

SymTensor Engine::check_dilaton(int g, int n) {
    if (!is_stable(g, n)) throw GuardError("check_dilaton: (g, n) must be stable");
    const SymTensor& T1 = omega(g, n + 1).tensor;
    int maxk = T1.max_k();
    std::vector<LocalExpansion> phis;
    for (const auto& bp : bd_.points) phis.push_back(expand_local(phi(), bp.alpha, maxk + 2));
    SymTensor lhs(n);
    for (const auto& [K, c] : T1.terms()) {
        for (size_t i = 0; i < K.size(); ++i) {
            if (i > 0 && K[i] == K[i - 1]) continue;
            FieldElement w = phis[K[i].alpha].coefficient_strict(K[i].k);
            if (w.is_zero()) continue;
            lhs.add(remove_one(K, K[i]), c * w);
        }
    }
    return lhs - omega(g, n).tensor * FieldElement(2 - 2 * g - n);
}

FieldElement Engine::free_energy(int g) {
    if (g < 1) throw GuardError("free_energy: g >= 1 (g = 1 is non-normative)");
    const SymTensor& T = omega(g, 1).tensor;
    int maxk = T.max_k();
    FieldElement out(0);
    std::vector<LocalExpansion> phis;
    for (const auto& bp : bd_.points) phis.push_back(expand_local(phi(), bp.alpha, maxk + 2));
    for (const auto& [K, c] : T.terms()) out += c * phis[K[0].alpha].coefficient_strict(K[0].k);
    return out;
}

} // namespace qcurve
