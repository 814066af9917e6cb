#ifndef OKLAB_HULL_HPP
#define OKLAB_HULL_HPP

#include <optional>
#include <set>
#include <vector>

#include "oklab/polytope.hpp"

namespace oklab {
namespace detail {

/* All supporting hyperplanes of the full-dimensional point set S spanned by
 * affinely independent d-subsets: exactly the facets of conv(S). */
inline std::vector<Halfspace> brute_facets(const std::vector<Vec>& S, int d) {
    std::set<Halfspace> out;
    std::vector<int> idx(static_cast<size_t>(d));
    size_t n = S.size();

    auto consider = [&](const std::vector<int>& T) {
        Mat rows;
        for (int i = 1; i < d; ++i)
            rows.push_back(vsub(S[static_cast<size_t>(T[static_cast<size_t>(i)])],
                                S[static_cast<size_t>(T[0])]));
        auto ns = nullspace(rows, static_cast<size_t>(d));
        if (ns.size() != 1) return;  // affinely dependent subset
        const Vec& nrm = ns[0];
        Rational c = dot(nrm, S[static_cast<size_t>(T[0])]);
        bool le = true, ge = true;
        for (const auto& p : S) {
            Rational v = dot(nrm, p);
            if (v > c) le = false;
            if (v < c) ge = false;
            if (!le && !ge) return;
        }
        if (le) {
            Halfspace h{nrm, c};
            h.canonicalize();
            out.insert(h);
        }
        if (ge && !le) {
            Halfspace h{vscale(Rational(-1), nrm), -c};
            h.canonicalize();
            out.insert(h);
        }
    };

    // enumerate d-subsets
    std::vector<int> comb(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) comb[static_cast<size_t>(i)] = i;
    if (n < static_cast<size_t>(d)) return {};
    while (true) {
        consider(comb);
        int i = d - 1;
        while (i >= 0 && comb[static_cast<size_t>(i)] ==
                             static_cast<int>(n) - d + i)
            --i;
        if (i < 0) break;
        ++comb[static_cast<size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }
    return {out.begin(), out.end()};
}

/* Points of S lying on d facets with linearly independent normals, i.e. the
 * vertices of conv(S). */
inline std::vector<Vec> vertex_filter(const std::vector<Vec>& S,
                                      const std::vector<Halfspace>& facets, int d) {
    std::vector<Vec> verts;
    for (const auto& p : S) {
        Mat tight;
        for (const auto& h : facets)
            if (dot(h.normal, p) == h.offset) tight.push_back(h.normal);
        if (static_cast<int>(tight.size()) >= d && rank_of(tight) == d)
            verts.push_back(p);
    }
    return verts;
}

struct FullHull {
    std::vector<Vec> vertices;
    std::vector<Halfspace> facets;
};

/* Incremental hull of a full-dimensional deduped point set: points inside the
 * running hull are rejected by a cheap facet test; the few outside points
 * trigger a facet recomputation over the small active set. */
inline FullHull full_hull(const std::vector<Vec>& pts, int d) {
    // seed with d+1 affinely independent points
    std::vector<size_t> seed{0};
    Mat dirs;
    for (size_t i = 1; i < pts.size() && static_cast<int>(seed.size()) < d + 1; ++i) {
        Mat trial = dirs;
        trial.push_back(vsub(pts[i], pts[0]));
        if (rank_of(trial) == static_cast<int>(trial.size())) {
            dirs = trial;
            seed.push_back(i);
        }
    }

    std::vector<Vec> active;
    std::vector<bool> used(pts.size(), false);
    for (size_t i : seed) {
        active.push_back(pts[i]);
        used[i] = true;
    }
    std::vector<Halfspace> facets = brute_facets(active, d);

    // visit remaining points, farthest from the centroid first
    Vec centroid(static_cast<size_t>(d), Rational(0));
    for (const auto& p : pts) centroid = vadd(centroid, p);
    centroid = vscale(Rational(1, static_cast<long long>(pts.size())), centroid);
    std::vector<std::pair<Rational, size_t>> order;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        Rational l1(0);
        for (int j = 0; j < d; ++j)
            l1 += rat_abs(pts[i][static_cast<size_t>(j)] - centroid[static_cast<size_t>(j)]);
        order.emplace_back(l1, i);
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    for (const auto& [l1, i] : order) {
        (void)l1;
        const Vec& p = pts[i];
        bool inside = true;
        for (const auto& h : facets)
            if (dot(h.normal, p) > h.offset) {
                inside = false;
                break;
            }
        if (inside) continue;
        active.push_back(p);
        facets = brute_facets(active, d);
        active = vertex_filter(active, facets, d);
    }

    FullHull res;
    res.facets = brute_facets(active, d);
    res.vertices = vertex_filter(active, res.facets, d);
    return res;
}

}  // namespace detail

/* Convex hull in ambient dimension 1..4. Lower-dimensional input yields a
 * degenerate polytope whose halfspace list pins the affine span with opposite
 * halfspace pairs. */
inline Polytope convex_hull(std::vector<Vec> points, int ambient) {
    if (points.empty()) throw std::invalid_argument("empty point set");
    if (ambient < 1 || ambient > 4) throw std::invalid_argument("unsupported dimension");
    for (const auto& p : points)
        if (p.size() != static_cast<size_t>(ambient))
            throw std::invalid_argument("point dimension mismatch");

    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());

    const Vec& p0 = points[0];
    Mat dirs;
    for (size_t i = 1; i < points.size(); ++i) {
        Mat trial = dirs;
        trial.push_back(vsub(points[i], p0));
        if (rank_of(trial) == static_cast<int>(trial.size())) dirs = trial;
        if (static_cast<int>(dirs.size()) == ambient) break;
    }
    int k = static_cast<int>(dirs.size());

    Polytope poly;
    poly.ambient = ambient;
    poly.affine_dim = k;

    if (k == ambient) {
        auto h = detail::full_hull(points, ambient);
        poly.vertices = std::move(h.vertices);
        poly.halfspaces = std::move(h.facets);
        poly.finalize();
        return poly;
    }

    if (k == 0) {
        poly.vertices.push_back(p0);
        for (int j = 0; j < ambient; ++j) {
            Vec e(static_cast<size_t>(ambient), Rational(0));
            e[static_cast<size_t>(j)] = 1;
            poly.halfspaces.push_back({e, p0[static_cast<size_t>(j)]});
            poly.halfspaces.push_back({vscale(Rational(-1), e), -p0[static_cast<size_t>(j)]});
        }
        poly.finalize();
        return poly;
    }

    // affine coordinates: x = p0 + A y with A's columns the basis directions
    size_t uk = static_cast<size_t>(k);
    Mat A(static_cast<size_t>(ambient), Vec(uk));
    for (size_t j = 0; j < uk; ++j)
        for (size_t i = 0; i < static_cast<size_t>(ambient); ++i)
            A[i][j] = dirs[j][i];

    std::vector<Vec> proj;
    proj.reserve(points.size());
    for (const auto& p : points) {
        auto y = solve_consistent(A, vsub(p, p0), uk);
        if (!y) throw std::logic_error("affine projection failed");
        proj.push_back(*y);
    }

    auto sub = detail::full_hull(proj, k);

    // left inverse M = (A^T A)^{-1} A^T maps ambient points into subspace coords
    Mat ata(uk, Vec(uk, Rational(0)));
    for (size_t i = 0; i < uk; ++i)
        for (size_t j = 0; j < uk; ++j)
            for (size_t r = 0; r < static_cast<size_t>(ambient); ++r)
                ata[i][j] += A[r][i] * A[r][j];
    Mat M(uk, Vec(static_cast<size_t>(ambient)));
    for (size_t col = 0; col < static_cast<size_t>(ambient); ++col) {
        Vec rhs(uk);
        for (size_t i = 0; i < uk; ++i) rhs[i] = A[col][i];
        auto z = solve_square(ata, rhs);
        if (!z) throw std::logic_error("affine basis not independent");
        for (size_t i = 0; i < uk; ++i) M[i][col] = (*z)[i];
    }

    for (const auto& v : sub.vertices) {
        Vec x = p0;
        for (size_t j = 0; j < uk; ++j)
            x = vadd(x, vscale(v[j], dirs[j]));
        poly.vertices.push_back(x);
    }
    for (const auto& f : sub.facets) {
        Vec nrm(static_cast<size_t>(ambient), Rational(0));
        for (size_t i = 0; i < uk; ++i)
            nrm = vadd(nrm, vscale(f.normal[i], M[i]));
        poly.halfspaces.push_back({nrm, f.offset + dot(nrm, p0)});
    }
    for (const auto& u : nullspace(dirs, static_cast<size_t>(ambient))) {
        Rational c = dot(u, p0);
        poly.halfspaces.push_back({u, c});
        poly.halfspaces.push_back({vscale(Rational(-1), u), -c});
    }
    poly.finalize();
    return poly;
}

/* Vertex enumeration from a halfspace list: solve every d-subset of tight
 * constraints and keep feasible solutions. Used for the double-description
 * audit and for polytope intersections. */
inline std::vector<Vec> vertices_from_halfspaces(const std::vector<Halfspace>& hs,
                                                 int ambient) {
    std::vector<Vec> verts;
    size_t n = hs.size();
    if (n < static_cast<size_t>(ambient)) return verts;
    std::vector<int> comb(static_cast<size_t>(ambient));
    for (int i = 0; i < ambient; ++i) comb[static_cast<size_t>(i)] = i;
    std::set<Vec, bool (*)(const Vec&, const Vec&)> seen(lex_less);
    while (true) {
        Mat rows;
        Vec rhs;
        for (int i = 0; i < ambient; ++i) {
            rows.push_back(hs[static_cast<size_t>(comb[static_cast<size_t>(i)])].normal);
            rhs.push_back(hs[static_cast<size_t>(comb[static_cast<size_t>(i)])].offset);
        }
        if (auto x = solve_square(rows, rhs)) {
            bool feasible = true;
            for (const auto& h : hs)
                if (dot(h.normal, *x) > h.offset) {
                    feasible = false;
                    break;
                }
            if (feasible && seen.insert(*x).second) verts.push_back(*x);
        }
        int i = ambient - 1;
        while (i >= 0 && comb[static_cast<size_t>(i)] ==
                             static_cast<int>(n) - ambient + i)
            --i;
        if (i < 0) break;
        ++comb[static_cast<size_t>(i)];
        for (int j = i + 1; j < ambient; ++j)
            comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }
    std::sort(verts.begin(), verts.end(), lex_less);
    return verts;
}

}  // namespace oklab

#endif
