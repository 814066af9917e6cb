#ifndef OKLAB_RATIONAL_HPP
#define OKLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oklab {

/* Exact rational arithmetic. cpp_rational keeps values in lowest terms with a
 * positive denominator, which is exactly the canonical form every serializer
 * and comparison in this library relies on. */
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational rat(long long n, long long d = 1) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    Int nn(n), dd(d);
    if (dd < 0) {
        nn = -nn;
        dd = -dd;
    }
    return Rational(nn, dd);
}

inline int sign(const Rational& q) { return q.sign(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline Int floor_int(const Rational& q) {
    Int n = num(q), d = den(q);
    Int f = n / d;
    if (n < 0 && f * d != n) --f;
    return f;
}

inline Int ceil_int(const Rational& q) {
    return -floor_int(-q);
}

/* q^k for small non-negative k. */
inline Rational rat_pow(const Rational& q, unsigned k) {
    Rational r(1);
    for (unsigned i = 0; i < k; ++i) r *= q;
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string rat_string(const Rational& q) {
    std::ostringstream os;
    os << num(q);
    if (den(q) != 1) os << "/" << den(q);
    return os.str();
}

/* Rational with the smallest denominator inside [lo, hi] (Stern-Brocot walk).
 * Used to recover an exact root once bisection has pinned it into a tight
 * bracket. */
inline Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("empty interval");
    if (lo == hi) return lo;
    if (lo <= 0 && 0 <= hi) return Rational(0);
    if (hi < 0) return -simplest_rational_in(-hi, -lo);
    // 0 < lo < hi: descend the continued-fraction expansion.
    Int fl = floor_int(lo);
    if (fl == floor_int(hi) && lo != Rational(fl)) {
        Rational frac = simplest_rational_in(Rational(1) / (hi - Rational(fl)),
                                             Rational(1) / (lo - Rational(fl)));
        return Rational(fl) + Rational(1) / frac;
    }
    // an integer lies in [lo, hi]
    return Rational(Rational(lo) == Rational(fl) ? fl : fl + 1);
}

}  // namespace oklab

#endif
