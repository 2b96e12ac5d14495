#pragma once

#include "homeo/rational.hpp"

#include <vector>

namespace homeo {

// Strictly increasing piecewise-linear function on a closed interval
// [knots.front(), knots.back()]. Collinear interior knots are removed on
// construction, so two functions are equal iff their knot lists are.
class PLFunction {
 public:
  PLFunction(std::vector<Rational> knots, std::vector<Rational> values);

  static PLFunction linear(const Rational& x0, const Rational& x1,
                           const Rational& y0, const Rational& y1);
  static PLFunction identity(const Rational& lo, const Rational& hi);

  const std::vector<Rational>& knots() const { return knots_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& lo() const { return knots_.front(); }
  const Rational& hi() const { return knots_.back(); }
  const Rational& image_lo() const { return values_.front(); }
  const Rational& image_hi() const { return values_.back(); }
  bool in_domain(const Rational& x) const { return lo() <= x && x <= hi(); }

  // Throws DomainError outside [lo, hi].
  Rational operator()(const Rational& x) const;
  // Slope of the piece starting at knot i.
  Rational slope(std::size_t i) const;

  PLFunction inverse() const;
  PLFunction restrict(const Rational& a, const Rational& b) const;

  friend bool operator==(const PLFunction&, const PLFunction&) = default;

 private:
  std::vector<Rational> knots_;
  std::vector<Rational> values_;
};

// (f o g)(x) = f(g(x)) on the largest interval where it is defined.
// Throws DomainError when that interval is empty or a single point.
PLFunction compose(const PLFunction& f, const PLFunction& g);

// Drops interior points whose neighbours are collinear with them.
void remove_collinear(std::vector<Rational>& xs, std::vector<Rational>& ys);

}  // namespace homeo
