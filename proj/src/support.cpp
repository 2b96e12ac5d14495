#include "homeo/support.hpp"

#include "homeo/error.hpp"

#include <algorithm>

namespace homeo {

namespace {

// Merge sorted closed arcs that overlap or touch.
std::vector<ClosedArc> merge_line(std::vector<ClosedArc> arcs) {
  std::sort(arcs.begin(), arcs.end(), [](const ClosedArc& a, const ClosedArc& b) { return a.lo < b.lo; });
  std::vector<ClosedArc> out;
  for (ClosedArc& a : arcs) {
    if (!out.empty() && a.lo <= out.back().hi) {
      out.back().hi = max(out.back().hi, a.hi);
    } else {
      out.push_back(std::move(a));
    }
  }
  return out;
}

// Normalise circle arcs given as lifts to lo in [0,1) and merge cyclically.
std::vector<ClosedArc> merge_circle(std::vector<ClosedArc> arcs) {
  std::vector<ClosedArc> lifted;
  for (ClosedArc a : arcs) {
    if (a.hi - a.lo >= 1) return {ClosedArc{0, 1}};
    Rational k = floor(a.lo);
    a.lo -= k;
    a.hi -= k;
    lifted.push_back(a);
  }
  std::vector<ClosedArc> merged = merge_line(std::move(lifted));
  if (merged.empty()) return merged;
  // the last arc may wrap past 1 and swallow arcs at the start
  bool changed = true;
  while (changed && merged.size() > 1) {
    changed = false;
    ClosedArc& last = merged.back();
    if (merged.front().lo + 1 <= last.hi) {
      last.hi = max(last.hi, merged.front().hi + 1);
      merged.erase(merged.begin());
      changed = true;
    }
  }
  if (merged.size() == 1 && merged.front().hi - merged.front().lo >= 1) return {ClosedArc{0, 1}};
  // re-normalise the wrapped arc
  for (ClosedArc& a : merged) {
    Rational k = floor(a.lo);
    a.lo -= k;
    a.hi -= k;
  }
  std::sort(merged.begin(), merged.end(), [](const ClosedArc& a, const ClosedArc& b) { return a.lo < b.lo; });
  return merged;
}

}  // namespace

SupportSet::SupportSet(Domain domain, std::vector<ClosedArc> components) : domain_(domain) {
  for (const ClosedArc& c : components) {
    if (c.hi < c.lo) fail(ErrorKind::InvariantViolation, "support component with hi < lo");
  }
  components_ = domain == Domain::Interval ? merge_line(std::move(components))
                                           : merge_circle(std::move(components));
}

SupportSet SupportSet::whole(Domain domain) { return SupportSet(domain, {ClosedArc{0, 1}}); }

bool SupportSet::is_whole() const {
  return components_.size() == 1 && components_.front().lo == 0 && components_.front().hi == 1;
}

bool SupportSet::contains(const Rational& x) const {
  Rational y = domain_ == Domain::Circle ? frac(x) : x;
  for (const ClosedArc& c : components_) {
    if (c.lo <= y && y <= c.hi) return true;
    if (domain_ == Domain::Circle && c.lo <= y + 1 && y + 1 <= c.hi) return true;
  }
  return false;
}

SupportSet SupportSet::image(const PLMap& h) const {
  if (h.domain() != domain_) fail(ErrorKind::DomainMismatch, "support image under map of other domain");
  if (is_whole()) return *this;
  std::vector<ClosedArc> out;
  out.reserve(components_.size());
  for (const ClosedArc& c : components_) out.push_back(ClosedArc{h(c.lo), h(c.hi)});
  return SupportSet(domain_, std::move(out));
}

bool arc_is_whole(Domain domain, const OpenArc& arc) {
  if (domain == Domain::Interval) return arc.lo < 0 && arc.hi > 1;
  return arc.hi - arc.lo > 1;
}

bool arc_inside(Domain domain, const ClosedArc& c, const OpenArc& arc) {
  if (arc_is_whole(domain, arc)) return true;
  if (domain == Domain::Interval) return arc.lo < c.lo && c.hi < arc.hi;
  if (c.hi - c.lo >= 1) return false;
  // shift arc by k so that arc.lo + k < c.lo <= arc.lo + k + 1
  Rational k = ceil(c.lo - arc.lo) - 1;
  return c.hi < arc.hi + k;
}

bool arc_contains_point(Domain domain, const OpenArc& arc, const Rational& x) {
  return arc_inside(domain, ClosedArc{x, x}, arc);
}

bool SupportSet::inside(const OpenArc& arc) const {
  return std::all_of(components_.begin(), components_.end(),
                     [&](const ClosedArc& c) { return arc_inside(domain_, c, arc); });
}

bool SupportSet::inside(const std::vector<OpenArc>& arcs) const {
  return std::all_of(components_.begin(), components_.end(), [&](const ClosedArc& c) {
    return std::any_of(arcs.begin(), arcs.end(),
                       [&](const OpenArc& a) { return arc_inside(domain_, c, a); });
  });
}

SupportSet support(const PLMap& f) {
  const auto& xs = f.knots();
  std::vector<ClosedArc> pieces;
  if (f.domain() == Domain::Interval) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      bool fixed = f.values()[i] == xs[i] && f.values()[i + 1] == xs[i + 1];
      if (!fixed) pieces.push_back(ClosedArc{xs[i], xs[i + 1]});
    }
    return SupportSet(Domain::Interval, std::move(pieces));
  }
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    Rational a = xs[i];
    Rational b = i + 1 < n ? xs[i + 1] : Rational(xs[0] + 1);
    Rational da = f(a) - a;
    Rational db = f(b) - b;
    bool fixed = da == db && floor(da) == da;
    if (!fixed) pieces.push_back(ClosedArc{a, b});
  }
  if (pieces.size() == n && n > 0) return SupportSet::whole(Domain::Circle);
  return SupportSet(Domain::Circle, std::move(pieces));
}

SupportSet unite(const SupportSet& a, const SupportSet& b) {
  if (a.domain() != b.domain()) fail(ErrorKind::DomainMismatch, "support union across domains");
  std::vector<ClosedArc> all = a.components();
  all.insert(all.end(), b.components().begin(), b.components().end());
  return SupportSet(a.domain(), std::move(all));
}

}  // namespace homeo
