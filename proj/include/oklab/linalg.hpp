#ifndef OKLAB_LINALG_HPP
#define OKLAB_LINALG_HPP

#include <optional>
#include <vector>

#include "oklab/rational.hpp"

namespace oklab {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row major

inline Rational dot(const Vec& a, const Vec& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec vsub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vadd(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vscale(const Rational& c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

/* Row echelon reduction in place; returns rank. Full pivoting is unnecessary
 * with exact arithmetic. */
inline int row_reduce(Mat& m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        Rational inv = Rational(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

inline int rank_of(Mat m) { return row_reduce(m); }

/* Unique solution of the n x n system rows * x = rhs, or nullopt if the
 * matrix is singular. */
inline std::optional<Vec> solve_square(const Mat& rows, const Vec& rhs) {
    size_t n = rows.size();
    Mat aug(n, Vec(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = rows[i][j];
        aug[i][n] = rhs[i];
    }
    Mat lhs(n, Vec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) lhs[i][j] = rows[i][j];
    if (rank_of(lhs) != static_cast<int>(n)) return std::nullopt;
    row_reduce(aug);
    Vec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

/* Any solution of a (possibly overdetermined) consistent system rows * x =
 * rhs with `cols` unknowns; nullopt when inconsistent or underdetermined. */
inline std::optional<Vec> solve_consistent(const Mat& rows, const Vec& rhs, size_t cols) {
    size_t n = rows.size();
    Mat aug(n, Vec(cols + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = rows[i][j];
        aug[i][cols] = rhs[i];
    }
    row_reduce(aug);
    Vec x(cols, Rational(0));
    std::vector<bool> pivoted(cols, false);
    for (size_t i = 0; i < n; ++i) {
        size_t lead = cols + 1;
        for (size_t j = 0; j <= cols; ++j)
            if (aug[i][j] != 0) { lead = j; break; }
        if (lead == cols) return std::nullopt;  // 0 = nonzero
        if (lead > cols) continue;              // zero row
        pivoted[lead] = true;
        x[lead] = aug[i][cols];
        for (size_t j = lead + 1; j < cols; ++j)
            if (aug[i][j] != 0) {
                // free variable present; solution not unique, reject so
                // callers notice a rank deficiency instead of guessing.
                return std::nullopt;
            }
    }
    for (size_t j = 0; j < cols; ++j)
        if (!pivoted[j]) return std::nullopt;
    return x;
}

/* Basis of {x : rows * x = 0} in dimension `cols`. */
inline std::vector<Vec> nullspace(Mat rows, size_t cols) {
    if (rows.empty()) {
        std::vector<Vec> basis;
        for (size_t j = 0; j < cols; ++j) {
            Vec e(cols, Rational(0));
            e[j] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    row_reduce(rows);
    std::vector<int> pivot_col;
    std::vector<bool> is_pivot(cols, false);
    for (const auto& row : rows) {
        for (size_t j = 0; j < cols; ++j)
            if (row[j] != 0) {
                pivot_col.push_back(static_cast<int>(j));
                is_pivot[j] = true;
                break;
            }
    }
    std::vector<Vec> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols, Rational(0));
        v[f] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = -rows[i][f];
        basis.push_back(v);
    }
    return basis;
}

/* Determinant of a small square matrix. */
inline Rational det(Mat m) {
    size_t n = m.size();
    Rational d(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        Rational inv = Rational(1) / m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return d;
}

}  // namespace oklab

#endif
