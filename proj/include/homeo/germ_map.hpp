#pragma once

#include "homeo/pl_function.hpp"

namespace homeo {

// Increasing PL map on [0, hi] fixing 0, standing for its germ at 0 (the
// radial model of a homeomorphism of R^n fixing the origin).
class GermMap {
 public:
  explicit GermMap(PLFunction rep);
  GermMap(std::vector<Rational> knots, std::vector<Rational> values);

  // x -> scale * x on [0, 1].
  static GermMap scaling(const Rational& scale);
  static GermMap identity();

  const PLFunction& rep() const { return rep_; }
  const Rational& hi() const { return rep_.hi(); }
  Rational operator()(const Rational& x) const { return rep_(x); }
  // Slope of the first piece; determines the germ.
  Rational initial_slope() const { return rep_.slope(0); }
  // End of the first linear piece.
  const Rational& linear_until() const { return rep_.knots()[1]; }

  GermMap inverse() const { return GermMap(rep_.inverse()); }

  friend bool operator==(const GermMap&, const GermMap&) = default;

 private:
  PLFunction rep_;
};

GermMap compose(const GermMap& f, const GermMap& g);

// Same germ at 0: both reps are linear near 0, so compare first slopes.
bool germ_equal(const GermMap& f, const GermMap& g);
// Pointwise agreement on [0, t], decided from the knots.
bool agree_on(const GermMap& f, const GermMap& g, const Rational& t);

}  // namespace homeo
