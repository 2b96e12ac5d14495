#pragma once

#include "homeo/pl_map.hpp"
#include "homeo/rational.hpp"

#include <vector>

namespace homeo {

// Closed arc [lo, hi]. On the circle lo is in [0,1) and hi may exceed 1 for
// arcs through 0; the whole circle is stored as [0, 1].
struct ClosedArc {
  Rational lo;
  Rational hi;
  friend bool operator==(const ClosedArc&, const ClosedArc&) = default;
};

// Open arc (lo, hi). On the interval the arc is intersected with [0,1], and an
// endpoint strictly outside [0,1] means the arc contains that boundary point
// (so (-1, 2/3) stands for [0, 2/3)). On the circle hi - lo > 1 means the
// whole circle.
struct OpenArc {
  Rational lo;
  Rational hi;
  friend bool operator==(const OpenArc&, const OpenArc&) = default;
};

// Finite disjoint union of closed arcs, sorted by lo.
class SupportSet {
 public:
  explicit SupportSet(Domain domain, std::vector<ClosedArc> components = {});

  static SupportSet whole(Domain domain);

  Domain domain() const { return domain_; }
  const std::vector<ClosedArc>& components() const { return components_; }
  bool empty() const { return components_.empty(); }
  bool is_whole() const;

  bool contains(const Rational& x) const;
  // Image under an increasing homeomorphism.
  SupportSet image(const PLMap& h) const;
  bool inside(const OpenArc& arc) const;
  // Every component lies in one of the arcs.
  bool inside(const std::vector<OpenArc>& arcs) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  Domain domain_;
  std::vector<ClosedArc> components_;
};

// Closure of {x : f(x) != x}, computed exactly from the knots.
SupportSet support(const PLMap& f);

// Union of two supports, merging touching components.
SupportSet unite(const SupportSet& a, const SupportSet& b);

bool arc_inside(Domain domain, const ClosedArc& c, const OpenArc& arc);
bool arc_contains_point(Domain domain, const OpenArc& arc, const Rational& x);
// Whole-circle arcs and arcs covering [0,1].
bool arc_is_whole(Domain domain, const OpenArc& arc);

}  // namespace homeo
