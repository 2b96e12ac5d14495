#include "homeo/pl_function.hpp"

#include "homeo/error.hpp"

#include <algorithm>
#include <iterator>

namespace homeo {

void remove_collinear(std::vector<Rational>& xs, std::vector<Rational>& ys) {
  if (xs.size() <= 2) return;
  std::vector<Rational> kx{xs.front()};
  std::vector<Rational> ky{ys.front()};
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    // keep point i unless slope(prev kept, i) == slope(i, i+1)
    Rational left = (ys[i] - ky.back()) / (xs[i] - kx.back());
    Rational right = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    if (left != right) {
      kx.push_back(xs[i]);
      ky.push_back(ys[i]);
    }
  }
  kx.push_back(xs.back());
  ky.push_back(ys.back());
  xs = std::move(kx);
  ys = std::move(ky);
}

PLFunction::PLFunction(std::vector<Rational> knots, std::vector<Rational> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.size() != values_.size()) {
    fail(ErrorKind::InvariantViolation, "knots and values differ in length");
  }
  if (knots_.size() < 2) {
    fail(ErrorKind::InvariantViolation, "a PL function needs at least two knots");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i - 1] < knots_[i])) {
      fail(ErrorKind::InvariantViolation,
           "knots not strictly increasing at index " + std::to_string(i));
    }
    if (!(values_[i - 1] < values_[i])) {
      fail(ErrorKind::InvariantViolation,
           "values not strictly increasing at index " + std::to_string(i));
    }
  }
  remove_collinear(knots_, values_);
}

PLFunction PLFunction::linear(const Rational& x0, const Rational& x1,
                              const Rational& y0, const Rational& y1) {
  return PLFunction({x0, x1}, {y0, y1});
}

PLFunction PLFunction::identity(const Rational& lo, const Rational& hi) {
  return PLFunction({lo, hi}, {lo, hi});
}

Rational PLFunction::operator()(const Rational& x) const {
  if (!in_domain(x)) {
    fail(ErrorKind::DomainError,
         "x = " + to_string(x) + " outside [" + to_string(lo()) + ", " + to_string(hi()) + "]");
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  if (it == knots_.end()) return values_.back();
  std::size_t j = static_cast<std::size_t>(std::distance(knots_.begin(), it));
  std::size_t i = j - 1;
  if (knots_[i] == x) return values_[i];
  return values_[i] + (values_[j] - values_[i]) * (x - knots_[i]) / (knots_[j] - knots_[i]);
}

Rational PLFunction::slope(std::size_t i) const {
  return (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
}

PLFunction PLFunction::inverse() const { return PLFunction(values_, knots_); }

PLFunction PLFunction::restrict(const Rational& a, const Rational& b) const {
  if (!(a < b) || a < lo() || hi() < b) {
    fail(ErrorKind::DomainError, "restriction interval not inside domain");
  }
  std::vector<Rational> xs{a};
  for (const Rational& k : knots_) {
    if (a < k && k < b) xs.push_back(k);
  }
  xs.push_back(b);
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const Rational& x : xs) ys.push_back((*this)(x));
  return PLFunction(std::move(xs), std::move(ys));
}

PLFunction compose(const PLFunction& f, const PLFunction& g) {
  // domain: g^{-1}([f.lo, f.hi]) intersected with [g.lo, g.hi]
  PLFunction ginv = g.inverse();
  Rational a = g.lo();
  Rational b = g.hi();
  if (g.image_lo() < f.lo()) {
    if (f.lo() > g.image_hi()) fail(ErrorKind::DomainError, "empty composition domain");
    a = ginv(f.lo());
  }
  if (g.image_hi() > f.hi()) {
    if (f.hi() < g.image_lo()) fail(ErrorKind::DomainError, "empty composition domain");
    b = ginv(f.hi());
  }
  if (!(a < b)) fail(ErrorKind::DomainError, "degenerate composition domain");
  std::vector<Rational> xs{a, b};
  for (const Rational& k : g.knots()) {
    if (a < k && k < b) xs.push_back(k);
  }
  for (const Rational& k : f.knots()) {
    if (g.image_lo() < k && k < g.image_hi()) {
      Rational x = ginv(k);
      if (a < x && x < b) xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const Rational& x : xs) ys.push_back(f(g(x)));
  return PLFunction(std::move(xs), std::move(ys));
}

}  // namespace homeo
