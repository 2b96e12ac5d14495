#include "homeo/germ_map.hpp"

#include "homeo/error.hpp"

namespace homeo {

GermMap::GermMap(PLFunction rep) : rep_(std::move(rep)) {
  if (rep_.lo() != 0 || rep_.image_lo() != 0) {
    fail(ErrorKind::InvariantViolation, "germ representative must be defined at 0 and fix it");
  }
}

GermMap::GermMap(std::vector<Rational> knots, std::vector<Rational> values)
    : GermMap(PLFunction(std::move(knots), std::move(values))) {}

GermMap GermMap::scaling(const Rational& scale) {
  if (scale <= 0) fail(ErrorKind::InvariantViolation, "scaling factor must be positive");
  return GermMap({0, 1}, {0, scale});
}

GermMap GermMap::identity() { return scaling(1); }

GermMap compose(const GermMap& f, const GermMap& g) { return GermMap(compose(f.rep(), g.rep())); }

bool germ_equal(const GermMap& f, const GermMap& g) { return f.initial_slope() == g.initial_slope(); }

bool agree_on(const GermMap& f, const GermMap& g, const Rational& t) {
  if (t > f.hi() || t > g.hi()) return false;
  // both are linear between consecutive points of the merged knot set
  for (const Rational& k : f.rep().knots()) {
    if (k <= t && f(k) != g(k)) return false;
  }
  for (const Rational& k : g.rep().knots()) {
    if (k <= t && f(k) != g(k)) return false;
  }
  return f(t) == g(t);
}

}  // namespace homeo
