#include "homeo/pl_map.hpp"

#include "homeo/error.hpp"

#include <algorithm>

namespace homeo {

std::string_view to_string(Domain d) { return d == Domain::Interval ? "interval" : "circle"; }

namespace {

void require_same_domain(const PLMap& f, const PLMap& g) {
  if (f.domain() != g.domain()) {
    fail(ErrorKind::DomainMismatch, "maps live on different domains");
  }
}

bool contains_half_integer(const Rational& a, const Rational& b) {
  const Rational& lo = a < b ? a : b;
  const Rational& hi = a < b ? b : a;
  Rational half(1, 2);
  return floor(hi - half) >= ceil(lo - half);
}

}  // namespace

PLMap PLMap::identity(Domain domain) {
  if (domain == Domain::Interval) return PLMap(domain, {0, 1}, {0, 1});
  return PLMap(domain, {0}, {0});
}

PLMap PLMap::interval(std::vector<Rational> knots, std::vector<Rational> values) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    fail(ErrorKind::InvariantViolation, "interval map needs matching knot/value lists of length >= 2");
  }
  if (knots.front() != 0 || knots.back() != 1 || values.front() != 0 || values.back() != 1) {
    fail(ErrorKind::InvariantViolation, "interval map must fix 0 and 1");
  }
  PLFunction canonical(std::move(knots), std::move(values));
  return PLMap(Domain::Interval, canonical.knots(), canonical.values());
}

PLMap PLMap::interval_from_points(std::vector<std::pair<Rational, Rational>> points) {
  points.emplace_back(0, 0);
  points.emplace_back(1, 1);
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (auto& [x, y] : points) {
    if (!xs.empty() && xs.back() == x) {
      if (ys.back() != y) fail(ErrorKind::InvariantViolation, "conflicting values at " + to_string(x));
      continue;
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  return interval(std::move(xs), std::move(ys));
}

PLMap PLMap::circle(std::vector<std::pair<Rational, Rational>> points) {
  if (points.empty()) fail(ErrorKind::InvariantViolation, "circle map needs at least one point");
  for (auto& [x, y] : points) {
    Rational k = floor(x);
    x -= k;
    y -= k;
  }
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (auto& [x, y] : points) {
    if (!xs.empty() && xs.back() == x) {
      if (ys.back() != y) {
        fail(ErrorKind::InvariantViolation, "conflicting lift values at " + to_string(x));
      }
      continue;
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  const std::size_t n = xs.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (!(ys[i - 1] < ys[i])) {
      fail(ErrorKind::InvariantViolation, "lift not strictly increasing at index " + std::to_string(i));
    }
  }
  if (!(ys.back() < ys.front() + 1)) {
    fail(ErrorKind::InvariantViolation, "lift does not satisfy F(x+1) = F(x) + 1 monotonically");
  }
  auto x_at = [&](std::size_t i) -> Rational { return i < n ? xs[i] : Rational(xs[i - n] + 1); };
  auto y_at = [&](std::size_t i) -> Rational { return i < n ? ys[i] : Rational(ys[i - n] + 1); };
  // slope of the piece leaving point i (cyclically)
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (y_at(i + 1) - y_at(i)) / (x_at(i + 1) - x_at(i));
  }
  std::vector<Rational> kx;
  std::vector<Rational> ky;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& in = out[(i + n - 1) % n];
    if (in != out[i]) {
      kx.push_back(xs[i]);
      ky.push_back(ys[i]);
    }
  }
  if (kx.empty()) {
    // no breakpoint: slope is 1 everywhere, a rotation
    kx.push_back(0);
    ky.push_back(ys.front() - xs.front());
  }
  Rational shift = floor(ky.front());
  for (Rational& y : ky) y -= shift;
  return PLMap(Domain::Circle, std::move(kx), std::move(ky));
}

PLMap PLMap::rotation(const Rational& angle) { return circle({{Rational(0), angle}}); }

PLMap::PLMap(Domain d, std::vector<Rational> knots, std::vector<Rational> values)
    : domain_(d), knots_(std::move(knots)), values_(std::move(values)) {
  const std::size_t n = knots_.size();
  slopes_.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) slopes_.push_back((values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]));
  if (domain_ == Domain::Circle) {
    period_end_ = knots_.front() + 1;
    slopes_.push_back((values_.front() + 1 - values_.back()) / (period_end_ - knots_.back()));
  }
}

Rational PLMap::operator()(const Rational& x) const {
  if (domain_ == Domain::Interval) {
    if (x < 0 || x > 1) fail(ErrorKind::DomainError, "x = " + to_string(x) + " outside [0,1]");
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    if (it == knots_.end()) return values_.back();
    std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    return values_[i] + slopes_[i] * (x - knots_[i]);
  }
  // most queries already lie in the fundamental period
  if (knots_.front() <= x && x < period_end_) {
    std::size_t i = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin()) - 1;
    return values_[i] + slopes_[i] * (x - knots_[i]);
  }
  Rational k = floor(x - knots_.front());
  Rational xr = x - k;
  std::size_t i = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), xr) - knots_.begin()) - 1;
  return values_[i] + slopes_[i] * (xr - knots_[i]) + k;
}

Rational PLMap::near_lift(const Rational& x) const {
  Rational v = (*this)(x);
  if (domain_ == Domain::Interval) return v;
  return v - floor(v - x + Rational(1, 2));
}

PLMap PLMap::inverse() const {
  if (domain_ == Domain::Interval) return PLMap(domain_, values_, knots_);
  std::vector<std::pair<Rational, Rational>> pts;
  pts.reserve(knots_.size());
  for (std::size_t i = 0; i < knots_.size(); ++i) pts.emplace_back(values_[i], knots_[i]);
  return circle(std::move(pts));
}

bool PLMap::is_identity() const { return *this == identity(domain_); }

PLMap compose(const PLMap& f, const PLMap& g) {
  require_same_domain(f, g);
  PLMap ginv = g.inverse();
  if (f.domain() == Domain::Interval) {
    std::vector<Rational> xs = g.knots();
    for (const Rational& k : f.knots()) xs.push_back(ginv(k));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Rational> ys;
    ys.reserve(xs.size());
    for (const Rational& x : xs) ys.push_back(f(g(x)));
    return PLMap::interval(std::move(xs), std::move(ys));
  }
  std::vector<std::pair<Rational, Rational>> pts;
  pts.reserve(f.knots().size() + g.knots().size());
  for (const Rational& k : g.knots()) pts.emplace_back(k, f(g(k)));
  // ginv is only the inverse lift up to an integer shift, so evaluate through it
  for (const Rational& k : f.knots()) {
    Rational x = ginv(k);
    pts.emplace_back(x, f(g(x)));
  }
  return PLMap::circle(std::move(pts));
}

PLMap compose_all(const std::vector<PLMap>& maps) {
  if (maps.empty()) fail(ErrorKind::DomainError, "compose_all of an empty list");
  PLMap acc = maps.back();
  for (std::size_t i = maps.size() - 1; i-- > 0;) acc = compose(maps[i], acc);
  return acc;
}

PLMap invert(const PLMap& f) { return f.inverse(); }

PLMap power(const PLMap& f, int n) {
  PLMap base = n < 0 ? f.inverse() : f;
  PLMap acc = PLMap::identity(f.domain());
  for (int i = 0; i < (n < 0 ? -n : n); ++i) acc = compose(base, acc);
  return acc;
}

Rational sup_distance(const PLMap& f, const PLMap& g) {
  require_same_domain(f, g);
  std::vector<Rational> xs = f.knots();
  xs.insert(xs.end(), g.knots().begin(), g.knots().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Rational best = 0;
  if (f.domain() == Domain::Interval) {
    for (const Rational& x : xs) best = max(best, abs(f(x) - g(x)));
    return best;
  }
  std::vector<Rational> diffs;
  diffs.reserve(xs.size() + 1);
  for (const Rational& x : xs) diffs.push_back(f(x) - g(x));
  diffs.push_back(f(xs.front() + 1) - g(xs.front() + 1));
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
    if (contains_half_integer(diffs[i], diffs[i + 1])) return Rational(1, 2);
    best = max(best, circle_norm(diffs[i]));
  }
  return best;
}

Rational complete_distance(const PLMap& f, const PLMap& g) {
  return sup_distance(f, g) + sup_distance(f.inverse(), g.inverse());
}

Rational displacement(const PLMap& f) { return sup_distance(f, PLMap::identity(f.domain())); }

}  // namespace homeo
