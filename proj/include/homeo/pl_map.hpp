#pragma once

#include "homeo/pl_function.hpp"
#include "homeo/rational.hpp"

#include <utility>
#include <vector>

namespace homeo {

enum class Domain { Interval, Circle };

std::string_view to_string(Domain d);

// Orientation-preserving PL homeomorphism of [0,1] or of the circle R/Z.
//
// Interval maps fix 0 and 1. Circle maps are stored as a lift F with
// F(x + 1) = F(x) + 1: knots are the breakpoints of F in [0, 1) (a rotation
// has the single knot 0), and the lift is normalised so that its value at the
// first knot lies in [0, 1). Two maps are equal iff their stored data is.
class PLMap {
 public:
  static PLMap identity(Domain domain);
  static PLMap interval(std::vector<Rational> knots, std::vector<Rational> values);
  // Builds a circle map from points (x, F(x)) of some lift F. The points
  // may lie anywhere on the line; every breakpoint of F must appear among
  // them modulo 1.
  static PLMap circle(std::vector<std::pair<Rational, Rational>> points);
  static PLMap rotation(const Rational& angle);
  // Interval maps from points strictly inside (0,1) plus the fixed endpoints.
  static PLMap interval_from_points(std::vector<std::pair<Rational, Rational>> points);

  Domain domain() const { return domain_; }
  const std::vector<Rational>& knots() const { return knots_; }
  const std::vector<Rational>& values() const { return values_; }

  // Interval: x must lie in [0,1]. Circle: any rational, evaluated on the lift.
  Rational operator()(const Rational& x) const;
  // Lift value shifted by the integer that brings it within 1/2 of x; the
  // natural lift for maps close to the identity.
  Rational near_lift(const Rational& x) const;

  PLMap inverse() const;
  bool is_identity() const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  PLMap(Domain d, std::vector<Rational> knots, std::vector<Rational> values);

  Domain domain_;
  std::vector<Rational> knots_;
  std::vector<Rational> values_;
  // derived: slope on [knot i, next knot] and, on the circle, knots_[0] + 1
  std::vector<Rational> slopes_;
  Rational period_end_;
};

// compose(f, g)(x) = f(g(x)).
PLMap compose(const PLMap& f, const PLMap& g);
// compose(m1, m2, ..., mk) = m1 o m2 o ... o mk.
PLMap compose_all(const std::vector<PLMap>& maps);
PLMap invert(const PLMap& f);
// f^n for any integer n.
PLMap power(const PLMap& f, int n);

// max over x of d_M(f(x), g(x)); arc length on the circle.
Rational sup_distance(const PLMap& f, const PLMap& g);
// sup_distance(f, g) + sup_distance(f^{-1}, g^{-1}).
Rational complete_distance(const PLMap& f, const PLMap& g);
Rational displacement(const PLMap& f);

}  // namespace homeo
