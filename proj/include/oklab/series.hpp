#ifndef OKLAB_SERIES_HPP
#define OKLAB_SERIES_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "oklab/parallel.hpp"
#include "oklab/rational.hpp"

namespace oklab {

/* Exponent vector of a monomial in the affine chart around the distinguished
 * torus-fixed point. */
using ExponentVec = std::vector<int>;

/* The supported ambient varieties with a fixed ample line bundle: projective
 * space P^n (n = 2 or 3) with O(d), or P^1 x P^1 with O(a,b). Point indices
 * enumerate the torus-fixed points; index 0 is the distinguished chart
 * origin. */
struct ModelVariety {
    enum class Kind { Pn, P1xP1 };

    Kind kind = Kind::Pn;
    int n = 2;
    int d = 1;
    int a = 1, b = 1;

    static ModelVariety projective_space(int dim, int degree) {
        if (dim != 2 && dim != 3)
            throw std::invalid_argument("projective space dimension must be 2 or 3");
        if (degree < 1) throw std::invalid_argument("line bundle degree must be positive");
        ModelVariety m;
        m.kind = Kind::Pn;
        m.n = dim;
        m.d = degree;
        return m;
    }

    static ModelVariety product_of_lines(int dega, int degb) {
        if (dega < 1 || degb < 1) throw std::invalid_argument("bidegree must be positive");
        ModelVariety m;
        m.kind = Kind::P1xP1;
        m.n = 2;
        m.a = dega;
        m.b = degb;
        return m;
    }

    int dim() const { return n; }

    int fixed_point_count() const { return kind == Kind::Pn ? n + 1 : 4; }

    std::string point_name(int p) const {
        if (p < 0 || p >= fixed_point_count())
            throw std::invalid_argument("fixed point index out of range");
        if (kind == Kind::Pn) {
            std::string s = "[";
            for (int i = 0; i <= n; ++i) {
                s += (i == p ? "1" : "0");
                if (i < n) s += ":";
            }
            return s + "]";
        }
        std::string x = (p & 1) ? "inf" : "0";
        std::string y = (p & 2) ? "inf" : "0";
        return "(" + x + "," + y + ")";
    }

    /* Whether e is a section exponent at level multiplier `scaled_m` (the
     * level index times any reindexing factor applied to the series). */
    bool valid_exponent(const ExponentVec& e, int scaled_m) const {
        if (static_cast<int>(e.size()) != n) return false;
        for (int c : e)
            if (c < 0) return false;
        if (kind == Kind::Pn) {
            long long total = std::accumulate(e.begin(), e.end(), 0LL);
            return total <= static_cast<long long>(scaled_m) * d;
        }
        return e[0] <= scaled_m * a && e[1] <= scaled_m * b;
    }

    /* Local chart exponents of the monomial at the given fixed point. */
    std::vector<int> local_exponents(const ExponentVec& e, int scaled_m, int point) const {
        if (point < 0 || point >= fixed_point_count())
            throw std::invalid_argument("fixed point index out of range");
        if (kind == Kind::Pn) {
            int total = std::accumulate(e.begin(), e.end(), 0);
            int c0 = scaled_m * d - total;
            std::vector<int> hom;
            hom.reserve(static_cast<size_t>(n) + 1);
            hom.push_back(c0);
            hom.insert(hom.end(), e.begin(), e.end());
            std::vector<int> out;
            out.reserve(static_cast<size_t>(n));
            for (int j = 0; j <= n; ++j)
                if (j != point) out.push_back(hom[static_cast<size_t>(j)]);
            return out;
        }
        int i = e[0], j = e[1];
        if (point & 1) i = scaled_m * a - i;
        if (point & 2) j = scaled_m * b - j;
        return {i, j};
    }

    /* Vanishing order of the monomial at the fixed point. */
    int ord_at_point(const ExponentVec& e, int scaled_m, int point) const {
        auto loc = local_exponents(e, scaled_m, point);
        return std::accumulate(loc.begin(), loc.end(), 0);
    }

    /* All section exponents at the given level multiplier, lex sorted. */
    std::vector<ExponentVec> enumerate_sections(int scaled_m) const {
        std::vector<ExponentVec> out;
        if (kind == Kind::P1xP1) {
            for (int i = 0; i <= scaled_m * a; ++i)
                for (int j = 0; j <= scaled_m * b; ++j) out.push_back({i, j});
            return out;
        }
        int D = scaled_m * d;
        if (n == 2) {
            for (int i = 0; i <= D; ++i)
                for (int j = 0; j + i <= D; ++j) out.push_back({i, j});
        } else {
            for (int i = 0; i <= D; ++i)
                for (int j = 0; j + i <= D; ++j)
                    for (int k = 0; k + j + i <= D; ++k) out.push_back({i, j, k});
        }
        return out;
    }
};

/* A graded linear series spanned by monomials, materialized level by level up
 * to m_max. Instances are immutable after construction and safe to share
 * across threads. `degree_scale` records reindexing: level m of this series
 * consists of sections of the underlying bundle at level m * degree_scale. */
class MonomialSeries {
public:
    ModelVariety model;
    int m_max = 0;
    int degree_scale = 1;
    std::string label;
    std::vector<std::vector<ExponentVec>> levels;

    MonomialSeries() = default;

    MonomialSeries(ModelVariety mv, int mmax, int scale, std::string lbl,
                   std::vector<std::vector<ExponentVec>> lv)
        : model(mv), m_max(mmax), degree_scale(scale), label(std::move(lbl)),
          levels(std::move(lv)) {
        if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
        if (levels.size() != static_cast<size_t>(m_max) + 1)
            throw std::invalid_argument("level table size mismatch");
        for (auto& lvl : levels)
            if (!std::is_sorted(lvl.begin(), lvl.end()))
                throw std::invalid_argument("levels must be sorted");
    }

    int dim() const { return model.dim(); }

    int scaled_level(int m) const { return m * degree_scale; }

    long long dimension(int m) const {
        return static_cast<long long>(levels[static_cast<size_t>(m)].size());
    }

    bool contains(int m, const ExponentVec& e) const {
        const auto& lvl = levels[static_cast<size_t>(m)];
        return std::binary_search(lvl.begin(), lvl.end(), e);
    }

    std::vector<int> local_exponents(int m, const ExponentVec& e, int point) const {
        return model.local_exponents(e, scaled_level(m), point);
    }

    int ord_at(int m, const ExponentVec& e, int point) const {
        return model.ord_at_point(e, scaled_level(m), point);
    }

    /* True when no level 1..m_max contains a section. */
    bool trivial() const {
        for (int m = 1; m <= m_max; ++m)
            if (dimension(m) > 0) return false;
        return true;
    }
};

namespace detail {

inline std::vector<std::vector<ExponentVec>> level_table(int m_max) {
    std::vector<std::vector<ExponentVec>> lv(static_cast<size_t>(m_max) + 1);
    return lv;
}

}  // namespace detail

/* The complete series: every section at every level. Level 0 is the constant
 * monomial. */
inline MonomialSeries complete_series(const ModelVariety& model, int m_max) {
    if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
    auto lv = detail::level_table(m_max);
    lv[0] = {ExponentVec(static_cast<size_t>(model.dim()), 0)};
    parallel_for(static_cast<size_t>(m_max), [&](size_t i) {
        lv[i + 1] = model.enumerate_sections(static_cast<int>(i) + 1);
    });
    return MonomialSeries(model, m_max, 1, "complete", std::move(lv));
}

/* Sections vanishing at the given fixed point (order at least one at every
 * positive level). */
inline MonomialSeries vanishing_subseries(const ModelVariety& model, int m_max,
                                          int point = 0) {
    if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
    auto lv = detail::level_table(m_max);
    lv[0] = {ExponentVec(static_cast<size_t>(model.dim()), 0)};
    parallel_for(static_cast<size_t>(m_max), [&](size_t i) {
        int m = static_cast<int>(i) + 1;
        for (auto& e : model.enumerate_sections(m))
            if (model.ord_at_point(e, m, point) >= 1)
                lv[static_cast<size_t>(m)].push_back(e);
    });
    return MonomialSeries(model, m_max, 1, "vanishing", std::move(lv));
}

/* Sections whose vanishing order at the fixed point grows at least linearly:
 * ord >= t * m at level m. */
inline MonomialSeries subseries_vt(const ModelVariety& model, int m_max,
                                   const Rational& t, int point = 0) {
    if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
    if (t < 0) throw std::invalid_argument("threshold must be nonnegative");
    auto lv = detail::level_table(m_max);
    lv[0] = {ExponentVec(static_cast<size_t>(model.dim()), 0)};
    parallel_for(static_cast<size_t>(m_max), [&](size_t i) {
        int m = static_cast<int>(i) + 1;
        for (auto& e : model.enumerate_sections(m))
            if (Rational(model.ord_at_point(e, m, point)) >= t * m)
                lv[static_cast<size_t>(m)].push_back(e);
    });
    return MonomialSeries(model, m_max, 1, "vt", std::move(lv));
}

/* Level reindexing m -> i*m. The result sees every i-th level of S. */
inline MonomialSeries veronese_series(const MonomialSeries& S, int i) {
    if (i < 1) throw std::invalid_argument("veronese factor must be positive");
    int new_max = S.m_max / i;
    if (new_max < 1) throw std::invalid_argument("veronese factor exceeds m_max");
    auto lv = detail::level_table(new_max);
    for (int m = 0; m <= new_max; ++m) lv[static_cast<size_t>(m)] = S.levels[static_cast<size_t>(i * m)];
    return MonomialSeries(S.model, new_max, S.degree_scale * i,
                          S.label + "-veronese", std::move(lv));
}

/* Audit V_k * V_l subset V_{k+l} for all k, l with k + l <= up_to. */
inline bool check_multiplicative(const MonomialSeries& S, int up_to) {
    up_to = std::min(up_to, S.m_max);
    for (int k = 0; k <= up_to; ++k)
        for (int l = k; k + l <= up_to; ++l)
            for (const auto& ea : S.levels[static_cast<size_t>(k)])
                for (const auto& eb : S.levels[static_cast<size_t>(l)]) {
                    ExponentVec sum(ea.size());
                    for (size_t i = 0; i < ea.size(); ++i) sum[i] = ea[i] + eb[i];
                    if (!S.contains(k + l, sum)) return false;
                }
    return true;
}

}  // namespace oklab

#endif
