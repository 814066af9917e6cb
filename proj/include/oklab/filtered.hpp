#ifndef OKLAB_FILTERED_HPP
#define OKLAB_FILTERED_HPP

#include "oklab/okounkov.hpp"

namespace oklab {

/* Jumping numbers of the vanishing-order filtration on one level of a
 * series: the multiset of orders in weakly decreasing order, together with
 * the distinct values alpha and the counts beta[j] = #{l : e[l] >= alpha[j]}. */
struct FiltrationProfile {
    int m = 1;
    std::vector<long long> e;
    std::vector<long long> alpha;
    std::vector<long long> beta;

    FiltrationProfile(int level, std::vector<long long> values)
        : m(level), e(std::move(values)) {
        if (m < 1) throw std::invalid_argument("level must be positive");
        std::sort(e.begin(), e.end(), std::greater<long long>());
        if (!e.empty() && e.back() < 0)
            throw std::invalid_argument("jumping numbers must be nonnegative");
        for (long long v : e)
            if (alpha.empty() || alpha.back() != v) alpha.push_back(v);
        for (long long a : alpha) {
            auto it = std::partition_point(e.begin(), e.end(),
                                           [a](long long v) { return v >= a; });
            beta.push_back(static_cast<long long>(it - e.begin()));
        }
        long long total = 0;
        for (long long v : e) total += v;
        long long telescoped = 0;
        for (size_t j = 0; j < alpha.size(); ++j) {
            long long next = j + 1 < alpha.size() ? alpha[j + 1] : 0;
            telescoped += beta[j] * (alpha[j] - next);
        }
        if (telescoped != total)
            throw std::logic_error("filtration profile mass mismatch");
    }

    size_t count() const { return e.size(); }

    long long total_mass() const {
        long long total = 0;
        for (long long v : e) total += v;
        return total;
    }
};

/* Profile of the given level with respect to vanishing order at the fixed
 * point. */
inline FiltrationProfile jumping_profile(const MonomialSeries& S, int m, int point = 0) {
    if (m < 1 || m > S.m_max) throw std::invalid_argument("level out of range");
    std::vector<long long> vals;
    vals.reserve(S.levels[static_cast<size_t>(m)].size());
    for (const auto& e : S.levels[static_cast<size_t>(m)])
        vals.push_back(S.ord_at(m, e, point));
    return FiltrationProfile(m, std::move(vals));
}

enum class MassMethod { closed_form, integral };

/* Truncated mass of the profile at threshold t >= 0. The integral method
 * sums min(e_l, t) directly; the closed form telescopes over the distinct
 * jumping values. The two agree identically. */
inline Rational mass_plus(const FiltrationProfile& P, const Rational& t,
                          MassMethod method = MassMethod::closed_form) {
    if (t < 0) throw std::invalid_argument("mass threshold must be nonnegative");
    if (method == MassMethod::integral) {
        Rational s(0);
        for (long long v : P.e) s += rat_min(Rational(v), t);
        return s;
    }
    size_t N = P.alpha.size();
    size_t jt = N + 1;
    for (size_t j = 1; j <= N; ++j)
        if (Rational(P.alpha[j - 1]) <= t) {
            jt = j;
            break;
        }
    Rational alpha_jt = jt <= N ? Rational(P.alpha[jt - 1]) : Rational(0);
    Rational beta_prev = jt >= 2 ? Rational(P.beta[jt - 2]) : Rational(0);
    Rational s = beta_prev * (t - alpha_jt);
    for (size_t j = jt; j <= N; ++j) {
        Rational next = j < N ? Rational(P.alpha[j]) : Rational(0);
        s += Rational(P.beta[j - 1]) * (Rational(P.alpha[j - 1]) - next);
    }
    return s;
}

/* Body of the series graded by vanishing order: the limit hull of the points
 * (nu(v)/m, s) for s = 0 and s = ord(v)/m, one dimension above the flag
 * body. Slicing the last axis at height t recovers the bodies of the
 * order-filtered subseries. */
inline BodyResult filtered_body(const MonomialSeries& S, const Flag& flag) {
    if (S.trivial()) throw std::runtime_error("empty series");
    int n = S.dim();
    auto order = effective_order(flag, n);
    std::vector<std::vector<Vec>> by_level(static_cast<size_t>(S.m_max) + 1);
    parallel_for(static_cast<size_t>(S.m_max), [&](size_t i) {
        int m = static_cast<int>(i) + 1;
        Rational inv = rat(1, m);
        auto& bucket = by_level[static_cast<size_t>(m)];
        for (const auto& e : S.levels[static_cast<size_t>(m)]) {
            auto local = S.local_exponents(m, e, flag.point);
            Vec nu = vscale(inv, flag_valuation(flag, local, order));
            Vec base = nu, graph = nu;
            base.push_back(Rational(0));
            graph.push_back(inv * S.ord_at(m, e, flag.point));
            bucket.push_back(std::move(base));
            bucket.push_back(std::move(graph));
        }
    });
    return detail::limit_hull(by_level, S.m_max, n + 1);
}

/* Integrated volume function of the series at a fixed point, built from the
 * infinitesimal body: with p the cross-section profile of the body along the
 * exceptional axis and G its antiderivative, phihat' = vol - G extended by
 * the constant vol below the smallest vanishing rate, and phihat is its
 * antiderivative vanishing at 0. */
struct IntegratedVolume {
    int n = 0;
    Rational total_volume;
    BodyResult inf_body;
    PiecewisePolynomial profile;
    PiecewisePolynomial phihat_prime;
    PiecewisePolynomial phihat;
};

inline IntegratedVolume integrated_volume(const MonomialSeries& S, int point = 0) {
    IntegratedVolume iv;
    iv.n = S.dim();
    iv.inf_body = okounkov_body(S, Flag::infinitesimal_flag(point));
    iv.total_volume = volume(iv.inf_body.body);
    iv.profile = slice_volume_profile(iv.inf_body.body, 0);

    PiecewisePolynomial G = iv.profile.antiderivative();
    std::vector<Rational> breaks;
    std::vector<Poly> pieces;
    Rational start = iv.profile.domain_start();
    if (start > 0) {
        breaks.push_back(Rational(0));
        pieces.push_back(Poly{iv.total_volume});
    }
    const auto& gb = G.breakpoints();
    breaks.insert(breaks.end(), gb.begin(), gb.end());
    for (size_t i = 0; i < G.piece_count(); ++i)
        pieces.push_back(poly_sub(Poly{iv.total_volume}, G.piece(i)));
    iv.phihat_prime = PiecewisePolynomial(breaks, pieces);
    iv.phihat = iv.phihat_prime.antiderivative();
    return iv;
}

/* Same quantity through the filtered body: the volume below height t. */
inline Rational phihat_via_filtered_body(const Polytope& filtered, const Rational& t) {
    return volume(slice(filtered, filtered.ambient - 1, SliceMode::at_most, t));
}

/* Finite-level approximation of phihat: the scaled truncated mass of the
 * jumping profile, mass(m t) / m^(n+1). */
inline Rational ivf_mass_approx(const MonomialSeries& S, int m, const Rational& t,
                                int point = 0,
                                MassMethod method = MassMethod::closed_form) {
    FiltrationProfile prof = jumping_profile(S, m, point);
    Rational scale = rat_pow(Rational(m), S.dim() + 1);
    return mass_plus(prof, t * m, method) / scale;
}

/* Invariants read off the integrated volume function: the exhaustion scale
 * mu (right end of the support of phihat'), the largest t below which the
 * mass grows exactly like t^n/n! (the point where the series stops
 * separating all jets), and the volume function n! * phihat' of the
 * order-filtered subseries. */
struct VolumeInvariants {
    Rational mu;
    Rational seshadri;
    PiecewisePolynomial vol_t;
};

inline VolumeInvariants extract_invariants(const IntegratedVolume& iv) {
    const PiecewisePolynomial& fp = iv.phihat_prime;
    Rational nfact(1);
    for (int i = 2; i <= iv.n; ++i) nfact *= i;

    Rational mu = fp.domain_end();
    for (size_t i = fp.piece_count(); i-- > 0;) {
        if (!poly_is_zero(fp.piece(i))) {
            mu = fp.breakpoints()[i + 1];
            break;
        }
    }

    Poly monomial(static_cast<size_t>(iv.n) + 1, Rational(0));
    monomial[static_cast<size_t>(iv.n)] = Rational(1) / nfact;
    Rational seshadri = fp.domain_end();
    for (size_t i = 0; i < fp.piece_count(); ++i) {
        Poly g = poly_sub(poly_sub(Poly{iv.total_volume}, fp.piece(i)), monomial);
        if (!poly_is_zero(g)) {
            seshadri = fp.breakpoints()[i];
            break;
        }
    }
    return {mu, seshadri, fp.scaled(nfact)};
}

}  // namespace oklab

#endif
