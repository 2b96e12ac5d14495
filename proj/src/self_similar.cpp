#include "homeo/self_similar.hpp"

#include "homeo/error.hpp"

#include <algorithm>

namespace homeo {

namespace {

// Restriction of a circle/interval map to [lo, hi] as a PL function in lift
// coordinates, using the lift that fixes lo.
PLFunction lift_piece(const PLMap& m, const Rational& lo, const Rational& hi) {
  Rational shift = m(lo) - lo;
  std::vector<Rational> xs{lo};
  if (m.domain() == Domain::Interval) {
    for (const Rational& k : m.knots()) {
      if (lo < k && k < hi) xs.push_back(k);
    }
  } else {
    for (Rational j = floor(lo); j <= floor(hi); j += 1) {
      for (const Rational& k : m.knots()) {
        Rational x = k + j;
        if (lo < x && x < hi) xs.push_back(x);
      }
    }
    std::sort(xs.begin(), xs.end());
  }
  xs.push_back(hi);
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const Rational& x : xs) ys.push_back(m(x) - shift);
  return PLFunction(std::move(xs), std::move(ys));
}

}  // namespace

AndersonTower::AndersonTower(PLMap base, PLMap translator, int depth_bound)
    : base_(std::move(base)), translator_(std::move(translator)), depth_bound_(depth_bound) {
  if (base_.domain() != translator_.domain()) {
    fail(ErrorKind::DomainMismatch, "tower base and translator on different domains");
  }
  const Domain dom = base_.domain();
  SupportSet sf = support(base_);
  SupportSet sb = support(translator_);
  if (sf.empty()) return;
  if (sb.is_whole()) fail(ErrorKind::InvariantViolation, "translator must have fixed points");
  for (const ClosedArc& c : sf.components()) {
    bool placed = false;
    for (const ClosedArc& d : sb.components()) {
      // lift d next to c
      Rational k = dom == Domain::Circle ? Rational(ceil(c.lo - d.lo) - 1) : Rational(0);
      Rational lo = d.lo + k;
      Rational hi = d.hi + k;
      if (!(lo < c.lo && c.hi < hi)) continue;
      auto it = std::find_if(regions_.begin(), regions_.end(),
                             [&](const Region& r) { return r.lo == lo && r.hi == hi; });
      if (it == regions_.end()) {
        PLFunction t = lift_piece(translator_, lo, hi);
        regions_.push_back(Region{lo, hi, floor(lo), frac(lo), {}, t, t.inverse(), lift_piece(base_, lo, hi)});
        it = std::prev(regions_.end());
      }
      it->base_support.push_back(c);
      placed = true;
      break;
    }
    if (!placed) {
      fail(ErrorKind::InvariantViolation,
           "support component [" + to_string(c.lo) + ", " + to_string(c.hi) +
               "] not compactly inside the translator's support");
    }
  }
  for (Region& r : regions_) {
    std::sort(r.base_support.begin(), r.base_support.end(),
              [](const ClosedArc& a, const ClosedArc& b) { return a.lo < b.lo; });
    const auto& xs = r.translator.knots();
    const auto& ys = r.translator.values();
    if (ys.back() != xs.back()) fail(ErrorKind::InvariantViolation, "translator does not fix its region");
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      if (!(ys[i] > xs[i])) fail(ErrorKind::InvariantViolation, "translator must push points right");
    }
    if (!(r.translator(r.base_support.front().lo) > r.base_support.back().hi)) {
      fail(ErrorKind::InvariantViolation, "translator iterates of the support overlap");
    }
  }
}

Rational AndersonTower::operator()(const Rational& x) const {
  if (base_.domain() == Domain::Interval && (x < 0 || x > 1)) {
    fail(ErrorKind::DomainError, "x = " + to_string(x) + " outside [0,1]");
  }
  const bool circle = base_.domain() == Domain::Circle;
  const Rational xf = circle ? frac(x) : x;
  for (const Region& r : regions_) {
    // the lift of x in (lo, lo + 1]
    Rational y = circle ? Rational(r.lo_floor + xf + (xf > r.lo_frac ? 0 : 1)) : x;
    if (!(r.lo < y && y < r.hi)) continue;
    Rational k = y - x;
    const Rational& s = r.base_support.front().lo;
    for (int n = 0;; ++n) {
      if (y < s) return x;
      for (const ClosedArc& c : r.base_support) {
        if (c.lo <= y && y <= c.hi) {
          Rational v = r.piece(y);
          for (int i = 0; i < n; ++i) v = r.translator(v);
          return v - k;
        }
      }
      if (n >= depth_bound_) {
        fail(ErrorKind::DepthExceeded, "tower descent at x = " + to_string(x));
      }
      y = r.translator_inv(y);
    }
  }
  return x;
}

AndersonTower AndersonTower::inverse() const {
  return AndersonTower(base_.inverse(), translator_, depth_bound_);
}

SupportSet AndersonTower::support_hull() const {
  std::vector<ClosedArc> comps;
  for (const Region& r : regions_) comps.push_back(ClosedArc{r.base_support.front().lo, r.hi});
  return SupportSet(base_.domain(), std::move(comps));
}

EquivariantTower::EquivariantTower(GermMap contraction, Rational window, PLFunction base, bool inverted,
                                   int depth_bound)
    : contraction_(std::move(contraction)),
      contraction_inv_(contraction_.inverse()),
      window_(std::move(window)),
      base_(std::move(base)),
      base_inv_(base_.inverse()),
      inverted_(inverted),
      depth_bound_(depth_bound) {
  if (window_ <= 0 || window_ > contraction_.hi()) {
    fail(ErrorKind::InvariantViolation, "window outside the contraction's domain");
  }
  for (const Rational& k : contraction_.rep().knots()) {
    if (k > 0 && k <= window_ && !(contraction_(k) < k)) {
      fail(ErrorKind::NotAContraction, "g(x) >= x at x = " + to_string(k));
    }
  }
  if (!(contraction_(window_) < window_)) fail(ErrorKind::NotAContraction, "g(t) >= t");
  if (base_.lo() != contraction_(window_) || base_.hi() != window_ ||
      base_.image_lo() != window_ / 2 || base_.image_hi() != window_) {
    fail(ErrorKind::InvariantViolation, "base piece must map [g(t), t] onto [t/2, t]");
  }
}

Rational EquivariantTower::forward(const Rational& x) const {
  if (x < 0) fail(ErrorKind::DomainError, "negative radius " + to_string(x));
  if (x == 0 || x > window_) return x;
  const Rational& inner = base_.lo();
  Rational y = x;
  int n = 0;
  while (y < inner) {
    if (n >= depth_bound_) fail(ErrorKind::DepthExceeded, "straightening descent at x = " + to_string(x));
    y = contraction_inv_(y);
    ++n;
  }
  return base_(y) * pow2(-n);
}

Rational EquivariantTower::backward(const Rational& y) const {
  if (y < 0) fail(ErrorKind::DomainError, "negative radius " + to_string(y));
  if (y == 0 || y > window_) return y;
  Rational half = window_ / 2;
  Rational z = y;
  int n = 0;
  while (z < half) {
    if (n >= depth_bound_) fail(ErrorKind::DepthExceeded, "straightening descent at y = " + to_string(y));
    z *= 2;
    ++n;
  }
  Rational x = base_inv_(z);
  for (int i = 0; i < n; ++i) x = contraction_(x);
  return x;
}

Rational EquivariantTower::operator()(const Rational& x) const {
  return inverted_ ? backward(x) : forward(x);
}

EquivariantTower EquivariantTower::inverse() const {
  return EquivariantTower(contraction_, window_, base_, !inverted_, depth_bound_);
}

Rational SelfSimilarMap::operator()(const Rational& x) const {
  return std::visit([&](const auto& t) { return t(x); }, v_);
}

SelfSimilarMap SelfSimilarMap::inverse() const {
  return std::visit([](const auto& t) { return SelfSimilarMap(t.inverse()); }, v_);
}

}  // namespace homeo
