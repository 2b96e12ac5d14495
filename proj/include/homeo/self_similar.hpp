#pragma once

#include "homeo/germ_map.hpp"
#include "homeo/pl_map.hpp"
#include "homeo/support.hpp"

#include <variant>
#include <vector>

namespace homeo {

inline constexpr int kDefaultDepthBound = 64;

// The map a(x) = b^n f b^{-n}(x) for x in b^n(supp f), n >= 0, and a(x) = x
// elsewhere. b must push each support component of f to the right inside one
// support component of b, with b(min S) > max S there, so that the iterates
// b^n(supp f) are pairwise disjoint.
class AndersonTower {
 public:
  AndersonTower(PLMap base, PLMap translator, int depth_bound = kDefaultDepthBound);

  const PLMap& base() const { return base_; }
  const PLMap& translator() const { return translator_; }
  int depth_bound() const { return depth_bound_; }
  Domain domain() const { return base_.domain(); }

  Rational operator()(const Rational& x) const;
  AndersonTower inverse() const;
  // Closed set containing every point the tower moves.
  SupportSet support_hull() const;

  friend bool operator==(const AndersonTower& a, const AndersonTower& b) {
    return a.base_ == b.base_ && a.translator_ == b.translator_ && a.depth_bound_ == b.depth_bound_;
  }

 private:
  struct Region {
    Rational lo;
    Rational hi;
    Rational lo_floor;  // lo = lo_floor + lo_frac
    Rational lo_frac;
    std::vector<ClosedArc> base_support;  // lift coordinates, inside (lo, hi)
    PLFunction translator;
    PLFunction translator_inv;
    PLFunction piece;
  };

  PLMap base_;
  PLMap translator_;
  int depth_bound_;
  std::vector<Region> regions_;
};

// Homeomorphism h of [0, oo) fixing 0 with h(g(x)) = h(x) / 2 on (0, window],
// determined by a base piece from [g(window), window] onto
// [window/2, window]. Identity beyond the window.
class EquivariantTower {
 public:
  EquivariantTower(GermMap contraction, Rational window, PLFunction base, bool inverted = false,
                   int depth_bound = kDefaultDepthBound);

  const GermMap& contraction() const { return contraction_; }
  const Rational& window() const { return window_; }
  const PLFunction& base() const { return base_; }
  bool inverted() const { return inverted_; }
  int depth_bound() const { return depth_bound_; }

  Rational operator()(const Rational& x) const;
  EquivariantTower inverse() const;

  friend bool operator==(const EquivariantTower&, const EquivariantTower&) = default;

 private:
  Rational forward(const Rational& x) const;
  Rational backward(const Rational& y) const;

  GermMap contraction_;
  GermMap contraction_inv_;
  Rational window_;
  PLFunction base_;
  PLFunction base_inv_;
  bool inverted_;
  int depth_bound_;
};

// Homeomorphism given by a finite base piece and a recursion rule; evaluated
// exactly by finite descent, failing with DepthExceeded past depth_bound.
class SelfSimilarMap {
 public:
  using Variant = std::variant<AndersonTower, EquivariantTower>;

  SelfSimilarMap(AndersonTower t) : v_(std::move(t)) {}
  SelfSimilarMap(EquivariantTower t) : v_(std::move(t)) {}

  const Variant& variant() const { return v_; }
  Rational operator()(const Rational& x) const;
  SelfSimilarMap inverse() const;

  friend bool operator==(const SelfSimilarMap&, const SelfSimilarMap&) = default;

 private:
  Variant v_;
};

}  // namespace homeo
