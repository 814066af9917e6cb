#ifndef OKLAB_OKOUNKOV_HPP
#define OKLAB_OKOUNKOV_HPP

#include <climits>

#include "oklab/geometry.hpp"
#include "oklab/parallel.hpp"
#include "oklab/series.hpp"

namespace oklab {

/* A full flag of subvarieties through a torus-fixed point, described by the
 * chart axes in nesting order. A coordinate flag stays on the variety; an
 * infinitesimal flag lives on the blow-up of the point, starting with the
 * exceptional divisor. */
struct Flag {
    enum class Kind { coordinate, infinitesimal };

    Kind kind = Kind::coordinate;
    int point = 0;
    std::vector<int> order;  // permutation of the chart axes; empty = identity

    static Flag coordinate_flag(int point = 0, std::vector<int> order = {}) {
        return Flag{Kind::coordinate, point, std::move(order)};
    }
    static Flag infinitesimal_flag(int point = 0, std::vector<int> order = {}) {
        return Flag{Kind::infinitesimal, point, std::move(order)};
    }
};

inline std::vector<int> effective_order(const Flag& f, int n) {
    std::vector<int> ord = f.order;
    if (ord.empty()) {
        ord.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) ord[static_cast<size_t>(i)] = i;
        return ord;
    }
    std::vector<int> sorted = ord;
    std::sort(sorted.begin(), sorted.end());
    bool perm = static_cast<int>(sorted.size()) == n;
    for (int i = 0; perm && i < n; ++i) perm = sorted[static_cast<size_t>(i)] == i;
    if (!perm) throw std::invalid_argument("flag order must be a permutation of the axes");
    return ord;
}

/* Value of the flag valuation on a monomial with the given local exponents
 * at the flag point. A coordinate flag reads the exponents along its axes in
 * order. An infinitesimal flag records the total vanishing order first (the
 * multiplicity along the exceptional divisor), then the exponents along the
 * remaining flag axes, which carry over unchanged to the blow-up chart. */
inline Vec flag_valuation(const Flag& f, const std::vector<int>& local,
                          const std::vector<int>& order) {
    size_t n = local.size();
    Vec out;
    out.reserve(n);
    if (f.kind == Flag::Kind::coordinate) {
        for (size_t i = 0; i < n; ++i)
            out.push_back(Rational(local[static_cast<size_t>(order[i])]));
    } else {
        long long total = 0;
        for (int c : local) total += c;
        out.push_back(Rational(total));
        for (size_t i = 1; i < n; ++i)
            out.push_back(Rational(local[static_cast<size_t>(order[i])]));
    }
    return out;
}

/* How the limit body was obtained from finite truncations: `stabilized` if
 * the hulls at the top two scales agree, `extrapolated` if the vertex paths
 * admit a unique consistent affine-in-1/m limit, `truncated` otherwise. */
struct BodyReport {
    enum class Mode { stabilized, extrapolated, truncated };

    Mode mode = Mode::truncated;
    int m_full = 0;
    int m_half = 0;
    int m_quarter = 0;
};

inline const char* to_string(BodyReport::Mode m) {
    switch (m) {
        case BodyReport::Mode::stabilized: return "stabilized";
        case BodyReport::Mode::extrapolated: return "extrapolated";
        default: return "truncated";
    }
}

struct BodyResult {
    Polytope body;
    BodyReport report;
};

namespace detail {

inline Polytope hull_up_to(const std::vector<std::vector<Vec>>& by_level, int M,
                           int ambient) {
    std::vector<Vec> pts;
    for (int m = 1; m <= M && m < static_cast<int>(by_level.size()); ++m)
        pts.insert(pts.end(), by_level[static_cast<size_t>(m)].begin(),
                   by_level[static_cast<size_t>(m)].end());
    if (pts.empty()) return Polytope::make_empty(ambient);
    return convex_hull(pts, ambient);
}

/* Limit of the increasing hulls H(M) of scale-normalized valuation points.
 * Compares the full scale against the half scale; on disagreement, tries to
 * extrapolate every top-scale vertex along v = A + B/M through matching
 * vertices at the half and quarter scales. The extrapolated body is accepted
 * only if every vertex has a unique limit, all limits are in the nonnegative
 * orthant, and the result contains the top-scale hull. */
inline BodyResult limit_hull(const std::vector<std::vector<Vec>>& by_level, int m_max,
                             int ambient) {
    int M = m_max;
    int M2 = std::max(1, m_max / 2);
    int M4 = std::max(1, m_max / 4);
    Polytope top = hull_up_to(by_level, M, ambient);
    if (top.is_empty()) throw std::runtime_error("empty series");
    Polytope half = hull_up_to(by_level, M2, ambient);
    if (top == half) return {top, {BodyReport::Mode::stabilized, M, M2, M4}};

    if (M2 < M && M4 < M2 && !half.is_empty()) {
        Polytope quarter = hull_up_to(by_level, M4, ambient);
        if (!quarter.is_empty()) {
            Rational den = rat(1, M) - rat(1, M2);
            std::vector<Vec> limits;
            bool ok = true;
            for (const Vec& v : top.vertices) {
                std::vector<Vec> cands;
                for (const Vec& u : half.vertices) {
                    Vec B = vscale(Rational(1) / den, vsub(v, u));
                    Vec A = vsub(v, vscale(rat(1, M), B));
                    Vec w = vadd(A, vscale(rat(1, M4), B));
                    if (std::binary_search(quarter.vertices.begin(),
                                           quarter.vertices.end(), w, lex_less))
                        cands.push_back(A);
                }
                std::sort(cands.begin(), cands.end(), lex_less);
                cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
                if (cands.size() != 1) {
                    ok = false;
                    break;
                }
                for (const Rational& c : cands[0])
                    if (c < 0) ok = false;
                if (!ok) break;
                limits.push_back(cands[0]);
            }
            if (ok) {
                Polytope lim = convex_hull(limits, ambient);
                if (lim.contains_polytope(top))
                    return {lim, {BodyReport::Mode::extrapolated, M, M2, M4}};
            }
        }
    }
    return {top, {BodyReport::Mode::truncated, M, M2, M4}};
}

}  // namespace detail

/* Scale-normalized valuation images nu(v)/m of every level, ready for hull
 * taking. Level 0 is left empty. */
inline std::vector<std::vector<Vec>> normalized_valuation_points(
    const MonomialSeries& S, const Flag& flag) {
    int n = S.dim();
    auto order = effective_order(flag, n);
    std::vector<std::vector<Vec>> by_level(static_cast<size_t>(S.m_max) + 1);
    parallel_for(static_cast<size_t>(S.m_max), [&](size_t i) {
        int m = static_cast<int>(i) + 1;
        Rational inv = rat(1, m);
        auto& bucket = by_level[static_cast<size_t>(m)];
        for (const auto& e : S.levels[static_cast<size_t>(m)]) {
            auto local = S.local_exponents(m, e, flag.point);
            bucket.push_back(vscale(inv, flag_valuation(flag, local, order)));
        }
    });
    return by_level;
}

/* The limit body of the graded series with respect to the flag. */
inline BodyResult okounkov_body(const MonomialSeries& S, const Flag& flag) {
    if (S.trivial()) throw std::runtime_error("empty series");
    auto by_level = normalized_valuation_points(S, flag);
    return detail::limit_hull(by_level, S.m_max, S.dim());
}

/* Both flag bodies at a fixed point together with their inscribed-simplex
 * gauges: the standard simplex scale for the coordinate flag and the
 * inverted simplex scale for the infinitesimal flag. */
struct GaugeReport {
    BodyResult coord;
    BodyResult inf;
    Rational xi;
    Rational xi_tilde;
};

inline GaugeReport compute_gauges(const MonomialSeries& S, int point = 0) {
    GaugeReport g;
    g.coord = okounkov_body(S, Flag::coordinate_flag(point));
    g.inf = okounkov_body(S, Flag::infinitesimal_flag(point));
    g.xi = simplex_gauge(g.coord.body, SimplexMode::standard);
    g.xi_tilde = simplex_gauge(g.inf.body, SimplexMode::inverted);
    return g;
}

/* Largest first coordinate over the infinitesimal body: the scale at which
 * the mass of the series at the point is exhausted. */
inline Rational nakayama_mu(const Polytope& inf_body) {
    if (inf_body.is_empty()) throw std::invalid_argument("empty polytope");
    Rational best = inf_body.vertices.front()[0];
    for (const auto& v : inf_body.vertices) best = rat_max(best, v[0]);
    return best;
}

/* Largest s such that level m generates all jets of order s at the fixed
 * point; -1 when even the constants are missing. */
inline int jet_separation(const MonomialSeries& S, int m, int point = 0) {
    if (m < 1 || m > S.m_max) throw std::invalid_argument("level out of range");
    int scaled = S.scaled_level(m);
    int missing = INT_MAX;
    for (const auto& e : S.model.enumerate_sections(scaled)) {
        if (!S.contains(m, e))
            missing = std::min(missing, S.model.ord_at_point(e, scaled, point));
    }
    int cap;
    if (S.model.kind == ModelVariety::Kind::Pn)
        cap = scaled * S.model.d;
    else
        cap = std::min(scaled * S.model.a, scaled * S.model.b);
    return std::min(missing == INT_MAX ? cap : missing - 1, cap);
}

/* Lower estimate of the Seshadri constant from jet separation: the best
 * ratio s_m / m over all levels, clamped at zero. `stabilized` reports
 * whether the ratio is constant over the top half of the levels. */
struct SeshadriEstimate {
    Rational value;
    bool stabilized = false;
    std::vector<int> jets;  // jets[m - 1] = jet separation of level m
};

inline SeshadriEstimate seshadri_estimate(const MonomialSeries& S, int point = 0) {
    SeshadriEstimate est;
    est.jets.resize(static_cast<size_t>(S.m_max));
    parallel_for(static_cast<size_t>(S.m_max), [&](size_t i) {
        est.jets[i] = jet_separation(S, static_cast<int>(i) + 1, point);
    });
    Rational best = rat(est.jets[0], 1);
    for (int m = 1; m <= S.m_max; ++m)
        best = rat_max(best, rat(est.jets[static_cast<size_t>(m - 1)], m));
    est.value = rat_max(Rational(0), best);
    int lo = S.m_max - S.m_max / 2;
    est.stabilized = true;
    for (int m = lo; m <= S.m_max; ++m)
        if (rat(est.jets[static_cast<size_t>(m - 1)], m) !=
            rat(est.jets[static_cast<size_t>(lo - 1)], lo))
            est.stabilized = false;
    return est;
}

/* Gauge audit across every torus-fixed point: positivity of both gauges at
 * every point is the polytope-side ampleness signal. */
struct PointGauges {
    int point = 0;
    Rational xi;
    Rational xi_tilde;
    BodyReport::Mode coord_mode = BodyReport::Mode::truncated;
    BodyReport::Mode inf_mode = BodyReport::Mode::truncated;
};

struct AmplenessReport {
    std::vector<PointGauges> per_point;
    bool all_positive = false;
};

inline AmplenessReport ampleness_check(const MonomialSeries& S) {
    AmplenessReport rep;
    rep.all_positive = true;
    for (int p = 0; p < S.model.fixed_point_count(); ++p) {
        GaugeReport g = compute_gauges(S, p);
        rep.per_point.push_back({p, g.xi, g.xi_tilde, g.coord.report.mode,
                                 g.inf.report.mode});
        if (g.xi <= 0 || g.xi_tilde <= 0) rep.all_positive = false;
    }
    return rep;
}

}  // namespace oklab

#endif
