#include "homeo/commutator.hpp"

#include "homeo/error.hpp"

#include <algorithm>
#include <optional>

namespace homeo {

namespace {

// Lift of component c placed inside the ball (lo, hi); nullopt if it does not fit.
std::optional<ClosedArc> place_in(Domain domain, const ClosedArc& c, const OpenArc& ball) {
  if (domain == Domain::Interval) {
    Rational lo = max(ball.lo, Rational(0));
    Rational hi = min(ball.hi, Rational(1));
    // a map fixing 0 and 1 cannot push them, so the boundary is excluded
    if (lo < c.lo && c.hi < hi) return c;
    return std::nullopt;
  }
  if (c.hi - c.lo >= 1) return std::nullopt;
  Rational j = floor(ball.lo - c.lo) + 1;
  ClosedArc lifted{c.lo + j, c.hi + j};
  if (ball.lo < lifted.lo && lifted.hi < ball.hi) return lifted;
  return std::nullopt;
}

PLMap from_points(Domain domain, std::vector<std::pair<Rational, Rational>> pts) {
  return domain == Domain::Interval ? PLMap::interval_from_points(std::move(pts))
                                    : PLMap::circle(std::move(pts));
}

bool arcs_disjoint(Domain domain, const OpenArc& a, const OpenArc& b) {
  if (arc_is_whole(domain, a) || arc_is_whole(domain, b)) return false;
  if (domain == Domain::Interval) return a.hi <= b.lo || b.hi <= a.lo;
  // shift b so that it starts in [a.lo, a.lo + 1)
  Rational k = floor(a.lo - b.lo);
  if (b.lo + k < a.lo) k += 1;
  Rational blo = b.lo + k;
  Rational bhi = b.hi + k;
  return a.hi <= blo && bhi <= a.lo + 1;
}

bool nested(Domain domain, const OpenArc& inner, const OpenArc& outer) {
  if (arc_is_whole(domain, outer)) return true;
  if (domain == Domain::Interval) return outer.lo <= inner.lo && inner.hi <= outer.hi;
  Rational k = ceil(inner.lo - outer.lo) - 1;
  if (outer.lo + k + 1 <= inner.lo) k += 1;
  return outer.lo + k <= inner.lo && inner.hi <= outer.hi + k;
}

bool in_arc(Domain domain, const OpenArc& arc, const Rational& x) {
  if (domain == Domain::Interval) return arc.lo < x && x < arc.hi;
  return arc_contains_point(domain, arc, x);
}

std::vector<Rational> letter_knots(const Letter& m) {
  if (const auto* p = std::get_if<PLMap>(&m)) return p->knots();
  return {};
}

bool agree_on_arc(const Letter& f, const Letter& g, const OpenArc& arc, Domain domain,
                  std::span<const Rational> points) {
  std::vector<Rational> xs(points.begin(), points.end());
  for (const Rational& k : letter_knots(f)) xs.push_back(k);
  for (const Rational& k : letter_knots(g)) xs.push_back(k);
  for (const Rational& x : xs) {
    if (!in_arc(domain, arc, x)) continue;
    Rational u = evaluate(f, x);
    Rational v = evaluate(g, x);
    if (domain == Domain::Circle ? frac(u - v) != 0 : u != v) return false;
  }
  return true;
}

}  // namespace

PLMap build_translator(const OpenArc& ball, const SupportSet& s) {
  const Domain domain = s.domain();
  if (s.empty()) return PLMap::identity(domain);
  if (s.is_whole() || arc_is_whole(domain, ball)) {
    fail(ErrorKind::SupportTooLarge, "support or ball is the whole manifold");
  }
  Rational lo_s;
  Rational hi_s;
  bool first = true;
  for (const ClosedArc& c : s.components()) {
    auto placed = place_in(domain, c, ball);
    if (!placed) {
      fail(ErrorKind::SupportTooLarge, "support component [" + to_string(c.lo) + ", " + to_string(c.hi) +
                                           "] not compactly inside the ball");
    }
    if (first || placed->lo < lo_s) lo_s = placed->lo;
    if (first || placed->hi > hi_s) hi_s = placed->hi;
    first = false;
  }
  Rational ball_lo = domain == Domain::Interval ? max(ball.lo, Rational(0)) : ball.lo;
  Rational ball_hi = domain == Domain::Interval ? min(ball.hi, Rational(1)) : ball.hi;
  if (domain == Domain::Circle && hi_s - lo_s >= 1) fail(ErrorKind::SupportTooLarge, "support wraps the ball");
  Rational repel = (ball_lo + lo_s) / 2;
  Rational attract = (hi_s + ball_hi) / 2;
  Rational q1 = (hi_s + attract) / 2;
  Rational q2 = attract - (attract - q1) / 2;
  return from_points(domain, {{repel, repel}, {lo_s, q1}, {q1, q2}, {attract, attract}});
}

AndersonFactors anderson_factor(const PLMap& f, const OpenArc& ball) {
  SupportSet s = support(f);
  PLMap b = build_translator(ball, s);
  return AndersonFactors{SelfSimilarMap(AndersonTower(f, b)), b};
}

PLMap restrict_to_ball(const PLMap& f, const OpenArc& ball) {
  const Domain domain = f.domain();
  std::vector<std::pair<Rational, Rational>> pts;
  SupportSet sf = support(f);
  for (const ClosedArc& c : sf.components()) {
    auto placed = place_in(domain, c, ball);
    if (!placed) continue;
    Rational shift = f(placed->lo) - placed->lo;
    pts.emplace_back(placed->lo, placed->lo);
    for (Rational j = floor(placed->lo); j <= floor(placed->hi); j += 1) {
      for (const Rational& k : f.knots()) {
        Rational x = k + (domain == Domain::Circle ? j : Rational(0));
        if (placed->lo < x && x < placed->hi) pts.emplace_back(x, f(x) - shift);
      }
      if (domain == Domain::Interval) break;
    }
    pts.emplace_back(placed->hi, placed->hi);
  }
  if (pts.empty()) return PLMap::identity(domain);
  return from_points(domain, std::move(pts));
}

MultiAnderson multi_anderson(const PLMap& f, const std::vector<OpenArc>& balls) {
  const Domain domain = f.domain();
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (!arcs_disjoint(domain, balls[i], balls[j])) {
        fail(ErrorKind::BallsNotDisjoint,
             "balls " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
  SupportSet s = support(f);
  for (const ClosedArc& c : s.components()) {
    bool ok = std::any_of(balls.begin(), balls.end(),
                          [&](const OpenArc& b) { return place_in(domain, c, b).has_value(); });
    if (!ok) {
      fail(ErrorKind::SupportTooLarge,
           "support component [" + to_string(c.lo) + ", " + to_string(c.hi) + "] not inside any ball");
    }
  }
  std::vector<AndersonFactors> per_ball;
  std::vector<PLMap> translators;
  for (const OpenArc& ball : balls) {
    PLMap piece = restrict_to_ball(f, ball);
    if (piece.is_identity()) continue;
    per_ball.push_back(anderson_factor(piece, ball));
    translators.push_back(per_ball.back().b);
  }
  PLMap b = translators.empty() ? PLMap::identity(domain) : compose_all(translators);
  return MultiAnderson{SelfSimilarMap(AndersonTower(f, b)), b, std::move(per_ball)};
}

std::vector<Rational> dyadic_grid(int level) {
  std::vector<Rational> xs;
  const long n = 1L << level;
  xs.reserve(static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) {
    Rational x(k, n);
    x.canonicalize();
    xs.push_back(x);
  }
  return xs;
}

std::vector<Rational> test_points(const PLMap& f, int level) {
  std::vector<Rational> xs = dyadic_grid(level);
  xs.insert(xs.end(), f.knots().begin(), f.knots().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool commutator_locality_check(const Letter& a, const Letter& b, const Letter& a_ext,
                               const Letter& b_ext, const OpenArc& inner, const OpenArc& middle,
                               const OpenArc& outer, Domain domain,
                               std::span<const Rational> points) {
  auto violated = [](const std::string& why) { fail(ErrorKind::PreconditionViolated, why); };
  if (!nested(domain, inner, middle) || !nested(domain, middle, outer)) violated("balls are not nested");
  if (!support_of(a).inside(inner)) violated("supp(a) not inside the inner ball");
  if (!support_of(b).inside(inner)) violated("supp(b) not inside the inner ball");
  if (!support_of(a_ext).inside(middle)) violated("supp(a') not inside the middle ball");
  if (!support_of(b_ext).inside(outer)) violated("supp(b') not inside the outer ball");
  if (!agree_on_arc(a, a_ext, inner, domain, points)) violated("a' does not agree with a on the inner ball");
  if (!agree_on_arc(b, b_ext, middle, domain, points)) violated("b' does not agree with b on the middle ball");
  Word lhs = commutator(a, b);
  Word rhs = commutator(a_ext, b_ext);
  for (const Rational& x : points) {
    Rational u = lhs(x);
    Rational v = rhs(x);
    if (domain == Domain::Circle ? frac(u - v) != 0 : u != v) return false;
  }
  return true;
}

}  // namespace homeo
