#ifndef OKLAB_GEOMETRY_HPP
#define OKLAB_GEOMETRY_HPP

#include <map>

#include "oklab/hull.hpp"
#include "oklab/piecewise.hpp"

namespace oklab {
namespace detail {

/* Combinatorial triangulation of a full-dimensional polytope: fan from the
 * first vertex over recursively triangulated facets. Returns index sets into
 * `verts`. */
inline std::vector<std::vector<size_t>> triangulate_full(
    const std::vector<Vec>& verts, const std::vector<Halfspace>& facets, int d) {
    std::vector<std::vector<size_t>> out;
    if (verts.size() == static_cast<size_t>(d) + 1) {
        std::vector<size_t> all(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) all[i] = i;
        out.push_back(all);
        return out;
    }
    if (d == 1) {
        // more than two collinear "vertices" cannot occur
        throw std::logic_error("triangulate: bad 1-d hull");
    }
    const Vec& apex = verts[0];
    for (const auto& h : facets) {
        if (dot(h.normal, apex) == h.offset) continue;
        std::vector<size_t> fidx;
        for (size_t i = 0; i < verts.size(); ++i)
            if (dot(h.normal, verts[i]) == h.offset) fidx.push_back(i);
        // project the facet along an axis its normal does not annihilate
        size_t drop = 0;
        while (h.normal[drop] == 0) ++drop;
        std::vector<Vec> proj;
        proj.reserve(fidx.size());
        for (size_t i : fidx) {
            Vec q;
            for (size_t j = 0; j < verts[i].size(); ++j)
                if (j != drop) q.push_back(verts[i][j]);
            proj.push_back(q);
        }
        Polytope sub = convex_hull(proj, d - 1);
        std::map<Vec, size_t, bool (*)(const Vec&, const Vec&)> back(lex_less);
        for (size_t i = 0; i < proj.size(); ++i) back[proj[i]] = fidx[i];
        std::vector<size_t> subidx(sub.vertices.size());
        for (size_t i = 0; i < sub.vertices.size(); ++i)
            subidx[i] = back.at(sub.vertices[i]);
        for (const auto& tri : triangulate_full(sub.vertices, sub.halfspaces, d - 1)) {
            std::vector<size_t> simplex{0};
            for (size_t t : tri) simplex.push_back(subidx[t]);
            out.push_back(simplex);
        }
    }
    return out;
}

}  // namespace detail

/* Exact volume in the ambient measure; 0 for lower-dimensional bodies. */
inline Rational volume(const Polytope& P) {
    if (P.is_empty() || P.affine_dim < P.ambient) return Rational(0);
    int d = P.ambient;
    if (d == 1) return P.vertices.back()[0] - P.vertices.front()[0];
    Rational vol(0);
    for (const auto& simplex : detail::triangulate_full(P.vertices, P.halfspaces, d)) {
        Mat m;
        for (size_t i = 1; i < simplex.size(); ++i)
            m.push_back(vsub(P.vertices[simplex[i]], P.vertices[simplex[0]]));
        vol += rat_abs(det(m));
    }
    Rational fact(1);
    for (int i = 2; i <= d; ++i) fact *= i;
    return vol / fact;
}

enum class SliceMode { equal, at_least, at_most };

/* Slice by the hyperplane x[axis] = t. `equal` returns the section projected
 * to the remaining coordinates (ambient - 1); the halfspace modes stay in the
 * ambient space. The empty slice is the distinguished empty polytope. */
inline Polytope slice(const Polytope& P, int axis, SliceMode mode, const Rational& t) {
    int out_dim = (mode == SliceMode::equal) ? P.ambient - 1 : P.ambient;
    if (mode == SliceMode::equal && P.ambient < 2)
        throw std::invalid_argument("unsupported dimension");
    if (P.is_empty()) return Polytope::make_empty(out_dim);
    size_t ax = static_cast<size_t>(axis);

    std::vector<Vec> pts;
    for (const auto& v : P.vertices) {
        bool keep = (mode == SliceMode::at_least && v[ax] >= t) ||
                    (mode == SliceMode::at_most && v[ax] <= t) ||
                    (v[ax] == t);
        if (keep) pts.push_back(v);
    }
    for (size_t i = 0; i < P.vertices.size(); ++i)
        for (size_t j = i + 1; j < P.vertices.size(); ++j) {
            const Vec& u = P.vertices[i];
            const Vec& w = P.vertices[j];
            if ((u[ax] < t && w[ax] > t) || (w[ax] < t && u[ax] > t)) {
                Rational lambda = (t - u[ax]) / (w[ax] - u[ax]);
                pts.push_back(vadd(u, vscale(lambda, vsub(w, u))));
            }
        }
    if (mode == SliceMode::equal) {
        std::vector<Vec> dropped;
        for (auto& p : pts) {
            Vec q;
            for (size_t j = 0; j < p.size(); ++j)
                if (j != ax) q.push_back(p[j]);
            dropped.push_back(q);
        }
        pts = std::move(dropped);
    }
    if (pts.empty()) return Polytope::make_empty(out_dim);
    return convex_hull(pts, out_dim);
}

enum class SimplexMode { standard, inverted };

inline std::vector<Vec> simplex_generators(int n, SimplexMode mode) {
    std::vector<Vec> gens;
    for (int i = 0; i < n; ++i) {
        Vec u(static_cast<size_t>(n), Rational(0));
        if (mode == SimplexMode::standard) {
            u[static_cast<size_t>(i)] = 1;
        } else {
            u[0] = 1;
            if (i > 0) u[static_cast<size_t>(i)] = 1;
        }
        gens.push_back(u);
    }
    return gens;
}

/* Scaled model simplex: standard hull(0, s e_i) or inverted
 * hull(0, s e_1, s(e_1 + e_i)). */
inline Polytope model_simplex(int n, SimplexMode mode, const Rational& s) {
    std::vector<Vec> pts{Vec(static_cast<size_t>(n), Rational(0))};
    for (const auto& g : simplex_generators(n, mode)) pts.push_back(vscale(s, g));
    return convex_hull(pts, n);
}

/* Largest s >= 0 such that the scaled model simplex fits inside P; 0 whenever
 * the origin is outside P. */
inline Rational simplex_gauge(const Polytope& P, SimplexMode mode) {
    if (P.is_empty()) return Rational(0);
    Vec origin(static_cast<size_t>(P.ambient), Rational(0));
    if (!P.contains_point(origin)) return Rational(0);
    Rational best(-1);
    for (const auto& u : simplex_generators(P.ambient, mode)) {
        for (const auto& h : P.halfspaces) {
            Rational nu = dot(h.normal, u);
            if (nu > 0) {
                Rational cap = h.offset / nu;
                if (best < 0 || cap < best) best = cap;
            }
        }
    }
    return best < 0 ? Rational(0) : best;
}

/* Intersection via the combined halfspace lists. */
inline Polytope intersect(const Polytope& P, const Polytope& Q) {
    if (P.ambient != Q.ambient) throw std::invalid_argument("ambient mismatch");
    if (P.is_empty() || Q.is_empty()) return Polytope::make_empty(P.ambient);
    std::vector<Halfspace> hs = P.halfspaces;
    hs.insert(hs.end(), Q.halfspaces.begin(), Q.halfspaces.end());
    auto verts = vertices_from_halfspaces(hs, P.ambient);
    if (verts.empty()) return Polytope::make_empty(P.ambient);
    return convex_hull(verts, P.ambient);
}

/* Exact cross-section volume as a function of the axis coordinate: piecewise
 * polynomial of degree <= ambient-1 between consecutive vertex coordinates,
 * recovered by interpolation at `ambient` interior sample points. */
inline PiecewisePolynomial slice_volume_profile(const Polytope& P, int axis) {
    if (P.is_empty()) throw std::invalid_argument("empty polytope");
    if (P.ambient < 2) throw std::invalid_argument("unsupported dimension");
    size_t ax = static_cast<size_t>(axis);
    std::vector<Rational> breaks;
    for (const auto& v : P.vertices) breaks.push_back(v[ax]);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    if (breaks.size() == 1) return PiecewisePolynomial(breaks, {});

    int d = P.ambient;
    std::vector<Poly> pieces;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        std::vector<Rational> xs, ys;
        for (int k = 1; k <= d; ++k) {
            Rational u = breaks[i] + (breaks[i + 1] - breaks[i]) *
                                         Rational(k, static_cast<long long>(d + 1));
            xs.push_back(u);
            ys.push_back(volume(slice(P, axis, SliceMode::equal, u)));
        }
        pieces.push_back(lagrange_interpolate(xs, ys));
    }
    return PiecewisePolynomial(breaks, pieces);
}

/* Double-description audit: vertices recomputed from the halfspace list and
 * the hull recomputed from the vertex list must both reproduce the polytope. */
inline bool verify_double_description(const Polytope& P) {
    if (P.is_empty())
        return P.vertices.empty() &&
               vertices_from_halfspaces(P.halfspaces, P.ambient).empty();
    if (vertices_from_halfspaces(P.halfspaces, P.ambient) != P.vertices) return false;
    return convex_hull(P.vertices, P.ambient) == P;
}

}  // namespace oklab

#endif
