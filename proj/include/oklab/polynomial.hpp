#ifndef OKLAB_POLYNOMIAL_HPP
#define OKLAB_POLYNOMIAL_HPP

#include <utility>
#include <vector>

#include "oklab/rational.hpp"

namespace oklab {

/* Dense univariate polynomial over Q, coefficients in ascending power. */
using Poly = std::vector<Rational>;

inline Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline int poly_degree(const Poly& p) {
    for (size_t i = p.size(); i > 0; --i)
        if (p[i - 1] != 0) return static_cast<int>(i - 1);
    return -1;
}

inline bool poly_is_zero(const Poly& p) { return poly_degree(p) < 0; }

inline bool poly_equal(const Poly& a, const Poly& b) {
    return poly_trim(a) == poly_trim(b);
}

inline Rational poly_eval(const Poly& p, const Rational& x) {
    Rational r(0);
    for (size_t i = p.size(); i > 0; --i) r = r * x + p[i - 1];
    return r;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return poly_trim(r);
}

inline Poly poly_neg(const Poly& a) {
    Poly r = a;
    for (auto& c : r) c = -c;
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

inline Poly poly_scale(const Rational& c, const Poly& a) {
    Poly r = a;
    for (auto& x : r) x *= c;
    return poly_trim(r);
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (poly_is_zero(a) || poly_is_zero(b)) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(r);
}

inline Poly poly_derive(const Poly& p) {
    if (p.size() < 2) return {};
    Poly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<long long>(i));
    return poly_trim(r);
}

inline Poly poly_antiderive(const Poly& p) {
    Poly r(p.size() + 1, Rational(0));
    for (size_t i = 0; i < p.size(); ++i)
        r[i + 1] = p[i] / Rational(static_cast<long long>(i + 1));
    return poly_trim(r);
}

/* Unique polynomial of degree < xs.size() through the given points. */
inline Poly lagrange_interpolate(const std::vector<Rational>& xs,
                                 const std::vector<Rational>& ys) {
    Poly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        Poly term{Rational(1)};
        Rational denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            term = poly_mul(term, Poly{-xs[j], Rational(1)});
            denom *= xs[i] - xs[j];
        }
        acc = poly_add(acc, poly_scale(ys[i] / denom, term));
    }
    return poly_trim(acc);
}

inline std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    int db = poly_degree(b);
    if (db < 0) throw std::invalid_argument("polynomial division by zero");
    a = poly_trim(a);
    Poly q;
    while (poly_degree(a) >= db) {
        int da = poly_degree(a);
        Rational f = a[static_cast<size_t>(da)] / b[static_cast<size_t>(db)];
        size_t shift = static_cast<size_t>(da - db);
        if (q.size() < shift + 1) q.resize(shift + 1, Rational(0));
        q[shift] = f;
        for (int i = 0; i <= db; ++i)
            a[shift + static_cast<size_t>(i)] -= f * b[static_cast<size_t>(i)];
        a = poly_trim(a);
        if (poly_is_zero(a)) break;
    }
    return {poly_trim(q), a};
}

inline Poly poly_monic(Poly p) {
    p = poly_trim(p);
    if (p.empty()) return p;
    Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline Poly poly_gcd(Poly a, Poly b) {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!poly_is_zero(b)) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

inline Poly poly_squarefree(const Poly& p) {
    if (poly_degree(p) <= 0) return poly_trim(p);
    Poly g = poly_gcd(p, poly_derive(p));
    if (poly_degree(g) <= 0) return poly_trim(p);
    return poly_divmod(p, g).first;
}

namespace detail {

inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    chain.push_back(poly_trim(p));
    chain.push_back(poly_derive(p));
    while (!poly_is_zero(chain.back())) {
        Poly r = poly_divmod(chain[chain.size() - 2], chain.back()).second;
        chain.push_back(poly_neg(r));
    }
    chain.pop_back();
    return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
    int v = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sign(poly_eval(q, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace detail

/* Number of distinct real roots in (a, b]. */
inline int count_roots_in(const Poly& p, const Rational& a, const Rational& b) {
    Poly sf = poly_squarefree(p);
    if (poly_degree(sf) <= 0) return 0;
    auto chain = detail::sturm_chain(sf);
    return detail::sign_variations(chain, a) - detail::sign_variations(chain, b);
}

/* Disjoint brackets [lo, hi] in (a, b], each containing exactly one distinct
 * root of p; exact roots come back as zero-width brackets. */
inline std::vector<std::pair<Rational, Rational>> isolate_roots(const Poly& p,
                                                                const Rational& a,
                                                                const Rational& b) {
    std::vector<std::pair<Rational, Rational>> out;
    Poly sf = poly_squarefree(p);
    if (poly_degree(sf) <= 0) return out;
    auto chain = detail::sturm_chain(sf);
    auto count = [&](const Rational& lo, const Rational& hi) {
        return detail::sign_variations(chain, lo) - detail::sign_variations(chain, hi);
    };
    std::vector<std::pair<Rational, Rational>> work{{a, b}};
    while (!work.empty()) {
        auto [lo, hi] = work.back();
        work.pop_back();
        int c = count(lo, hi);
        if (c == 0) continue;
        Rational mid = (lo + hi) / 2;
        if (c == 1) {
            // shrink until the root is exact or the bracket is narrow
            Rational width = hi - lo;
            Rational lim = rat(1, 1000000000);
            Rational l = lo, h = hi;
            while (h - l > lim) {
                Rational m = (l + h) / 2;
                if (poly_eval(sf, m) == 0) {
                    out.emplace_back(m, m);
                    goto next;
                }
                if (count(l, m) == 1)
                    h = m;
                else
                    l = m;
            }
            {
                // try to snap to the simplest rational inside the bracket
                Rational r = simplest_rational_in(l, h);
                if (poly_eval(sf, r) == 0)
                    out.emplace_back(r, r);
                else
                    out.emplace_back(l, h);
            }
        next:;
        } else {
            if (poly_eval(sf, mid) == 0) out.emplace_back(mid, mid);
            work.emplace_back(lo, mid);
            work.emplace_back(mid, hi);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/* Exact decision of p <= 0 everywhere on [a, b]. */
inline bool poly_nonpositive_on(const Poly& p, const Rational& a, const Rational& b) {
    if (poly_is_zero(p)) return true;
    if (poly_eval(p, a) > 0 || poly_eval(p, b) > 0) return false;
    auto roots = isolate_roots(p, a, b);
    // sign of p is constant between consecutive root brackets
    Rational prev = a;
    for (const auto& [lo, hi] : roots) {
        if (lo > prev && poly_eval(p, (prev + lo) / 2) > 0) return false;
        prev = hi;
    }
    if (b > prev && poly_eval(p, (prev + b) / 2) > 0) return false;
    return true;
}

}  // namespace oklab

#endif
