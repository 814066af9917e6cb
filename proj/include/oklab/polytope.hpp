#ifndef OKLAB_POLYTOPE_HPP
#define OKLAB_POLYTOPE_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "oklab/linalg.hpp"

namespace oklab {

inline bool lex_less(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}

/* Closed halfspace {x : normal . x <= offset}. Canonical form clears
 * denominators and divides by the content, so equal halfspaces compare
 * equal componentwise. */
struct Halfspace {
    Vec normal;
    Rational offset;

    void canonicalize() {
        Int l(1);
        for (const auto& x : normal) l = boost::multiprecision::lcm(l, den(x));
        l = boost::multiprecision::lcm(l, den(offset));
        Int g(0);
        auto acc = [&](const Rational& x) {
            Int v = num(x) * (l / den(x));
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(v));
        };
        for (const auto& x : normal) acc(x);
        acc(offset);
        if (g == 0) g = 1;
        Rational f = Rational(l, g);
        for (auto& x : normal) x *= f;
        offset *= f;
    }

    bool operator==(const Halfspace& o) const {
        return normal == o.normal && offset == o.offset;
    }
    bool operator<(const Halfspace& o) const {
        if (normal != o.normal) return lex_less(normal, o.normal);
        return offset < o.offset;
    }
};

/* Bounded rational polytope in ambient dimension 1..4, carried in double
 * description: canonical vertex list plus supporting halfspaces whose
 * intersection is the polytope. Lower-dimensional hulls are first-class
 * (affine_dim < ambient; the halfspace list then contains opposite pairs
 * encoding the affine span). The empty polytope is the distinguished value
 * with affine_dim == -1 and a single infeasible constraint. */
class Polytope {
  public:
    int ambient = 0;
    int affine_dim = -1;
    std::vector<Vec> vertices;        // sorted lexicographically
    std::vector<Halfspace> halfspaces;  // sorted, canonical

    static Polytope make_empty(int ambient_dim) {
        Polytope p;
        p.ambient = ambient_dim;
        p.affine_dim = -1;
        Halfspace h;
        h.normal.assign(static_cast<size_t>(ambient_dim), Rational(0));
        h.offset = -1;
        p.halfspaces.push_back(h);
        return p;
    }

    bool is_empty() const { return affine_dim < 0; }

    bool contains_point(const Vec& x) const {
        if (x.size() != static_cast<size_t>(ambient))
            throw std::invalid_argument("point dimension mismatch");
        for (const auto& h : halfspaces)
            if (dot(h.normal, x) > h.offset) return false;
        return !is_empty();
    }

    bool contains_polytope(const Polytope& other) const {
        if (other.is_empty()) return true;
        for (const auto& v : other.vertices)
            if (!contains_point(v)) return false;
        return true;
    }

    bool operator==(const Polytope& o) const {
        return ambient == o.ambient && affine_dim == o.affine_dim &&
               vertices == o.vertices;
    }

    void finalize() {
        std::sort(vertices.begin(), vertices.end(), lex_less);
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        for (auto& h : halfspaces) h.canonicalize();
        std::sort(halfspaces.begin(), halfspaces.end());
        halfspaces.erase(std::unique(halfspaces.begin(), halfspaces.end()),
                         halfspaces.end());
    }
};

}  // namespace oklab

#endif
