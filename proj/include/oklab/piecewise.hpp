#ifndef OKLAB_PIECEWISE_HPP
#define OKLAB_PIECEWISE_HPP

#include <stdexcept>
#include <vector>

#include "oklab/polynomial.hpp"

namespace oklab {

/* Continuous piecewise polynomial over strictly increasing rational
 * breakpoints. pieces[i] lives on [breaks[i], breaks[i+1]]. Evaluation clamps
 * to the domain (the functions modeled here extend constantly past it). A
 * single-breakpoint value is the empty function with integral 0. */
class PiecewisePolynomial {
  public:
    PiecewisePolynomial() : breaks_{Rational(0)} {}

    PiecewisePolynomial(std::vector<Rational> breaks, std::vector<Poly> pieces)
        : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
        if (breaks_.empty() || pieces_.size() + 1 != breaks_.size())
            throw std::invalid_argument("piecewise: size mismatch");
        for (size_t i = 0; i + 1 < breaks_.size(); ++i)
            if (!(breaks_[i] < breaks_[i + 1]))
                throw std::invalid_argument("piecewise: breakpoints not increasing");
        for (size_t i = 0; i + 1 < pieces_.size(); ++i)
            if (poly_eval(pieces_[i], breaks_[i + 1]) !=
                poly_eval(pieces_[i + 1], breaks_[i + 1]))
                throw std::invalid_argument("piecewise: discontinuous at breakpoint");
        for (auto& p : pieces_) p = poly_trim(p);
    }

    static PiecewisePolynomial constant(const Rational& lo, const Rational& hi,
                                        const Rational& c) {
        return PiecewisePolynomial({lo, hi}, {Poly{c}});
    }

    const std::vector<Rational>& breakpoints() const { return breaks_; }
    size_t piece_count() const { return pieces_.size(); }
    const Poly& piece(size_t i) const { return pieces_.at(i); }
    Rational domain_start() const { return breaks_.front(); }
    Rational domain_end() const { return breaks_.back(); }

    Rational eval(const Rational& t) const {
        if (pieces_.empty()) return Rational(0);
        Rational x = rat_min(rat_max(t, domain_start()), domain_end());
        size_t i = 0;
        while (i + 1 < pieces_.size() && x > breaks_[i + 1]) ++i;
        return poly_eval(pieces_[i], x);
    }

    PiecewisePolynomial derivative() const {
        std::vector<Poly> d;
        d.reserve(pieces_.size());
        for (const auto& p : pieces_) d.push_back(poly_derive(p));
        return PiecewisePolynomial(breaks_, std::move(d));
    }

    /* Antiderivative vanishing at the left end of the domain. */
    PiecewisePolynomial antiderivative() const {
        std::vector<Poly> out;
        out.reserve(pieces_.size());
        Rational acc(0);
        for (size_t i = 0; i < pieces_.size(); ++i) {
            Poly F = poly_antiderive(pieces_[i]);
            Rational shift = acc - poly_eval(F, breaks_[i]);
            Poly piece = poly_add(F, Poly{shift});
            acc = poly_eval(piece, breaks_[i + 1]);
            out.push_back(std::move(piece));
        }
        return PiecewisePolynomial(breaks_, std::move(out));
    }

    Rational definite_integral() const {
        if (pieces_.empty()) return Rational(0);
        return antiderivative().eval(domain_end());
    }

    PiecewisePolynomial scaled(const Rational& c) const {
        std::vector<Poly> out;
        out.reserve(pieces_.size());
        for (const auto& p : pieces_) out.push_back(poly_scale(c, p));
        return PiecewisePolynomial(breaks_, std::move(out));
    }

    bool operator==(const PiecewisePolynomial& o) const {
        if (breaks_ != o.breaks_ || pieces_.size() != o.pieces_.size()) return false;
        for (size_t i = 0; i < pieces_.size(); ++i)
            if (!poly_equal(pieces_[i], o.pieces_[i])) return false;
        return true;
    }

  private:
    std::vector<Rational> breaks_;
    std::vector<Poly> pieces_;
};

}  // namespace oklab

#endif
