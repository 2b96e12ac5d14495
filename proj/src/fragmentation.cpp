#include "homeo/fragmentation.hpp"

#include "homeo/error.hpp"

#include <algorithm>
#include <utility>

namespace homeo {

namespace {

struct IndexedArc {
  std::size_t element;
  OpenArc arc;
};

bool covered(const OpenCover1D& cover, const Rational& x) {
  for (const auto& e : cover.elements) {
    for (const OpenArc& a : e) {
      if (arc_contains_point(cover.domain, a, x)) return true;
    }
  }
  return false;
}

std::vector<IndexedArc> all_arcs(const OpenCover1D& cover) {
  std::vector<IndexedArc> arcs;
  for (std::size_t i = 0; i < cover.elements.size(); ++i) {
    for (const OpenArc& a : cover.elements[i]) arcs.push_back({i, a});
  }
  return arcs;
}

// Greedy step: among arcs (shifted by integers on the circle) starting before
// `reach` and ending after it, the one reaching furthest right.
std::optional<IndexedArc> furthest(const OpenCover1D& cover, const std::vector<IndexedArc>& arcs,
                                   const Rational& reach) {
  std::optional<IndexedArc> best;
  for (const IndexedArc& ia : arcs) {
    OpenArc a = ia.arc;
    if (cover.domain == Domain::Circle) {
      // the shift with a.lo < reach <= a.lo + 1
      Rational k = ceil(reach - a.lo) - 1;
      a.lo += k;
      a.hi += k;
    }
    if (a.lo < reach && a.hi > reach && (!best || a.hi > best->arc.hi)) best = IndexedArc{ia.element, a};
  }
  return best;
}

}  // namespace

void validate(const OpenCover1D& cover) {
  if (cover.elements.empty()) fail(ErrorKind::InvariantViolation, "cover has no elements");
  std::vector<Rational> probes{0};
  if (cover.domain == Domain::Interval) probes.push_back(1);
  for (std::size_t i = 0; i < cover.elements.size(); ++i) {
    const auto& e = cover.elements[i];
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (!(e[a].lo < e[a].hi)) {
        fail(ErrorKind::InvariantViolation, "empty arc in element " + std::to_string(i + 1));
      }
      for (std::size_t b = a + 1; b < e.size(); ++b) {
        // open arcs are disjoint iff neither contains the other's left end
        // and they are not identical in position
        bool meet = arc_contains_point(cover.domain, e[a], e[b].lo) ||
                    arc_contains_point(cover.domain, e[b], e[a].lo) ||
                    arc_is_whole(cover.domain, e[a]) || arc_is_whole(cover.domain, e[b]) ||
                    (cover.domain == Domain::Circle ? frac(e[a].lo) == frac(e[b].lo) : e[a].lo == e[b].lo);
        if (meet) {
          fail(ErrorKind::InvariantViolation,
               "arcs of element " + std::to_string(i + 1) + " are not disjoint");
        }
      }
      for (const Rational& end : {e[a].lo, e[a].hi}) {
        Rational x = cover.domain == Domain::Circle ? frac(end) : end;
        if (x >= 0 && x <= 1) probes.push_back(x);
      }
    }
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  std::size_t n = probes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!covered(cover, probes[i])) {
      fail(ErrorKind::NoOverlap, "point " + to_string(probes[i]) + " is not covered");
    }
    Rational next = i + 1 < n ? probes[i + 1] : Rational(probes[0] + 1);
    if (cover.domain == Domain::Interval && i + 1 == n) break;
    Rational mid = (probes[i] + next) / 2;
    if (!covered(cover, mid)) fail(ErrorKind::NoOverlap, "point " + to_string(mid) + " is not covered");
  }
}

CutSchedule plan_cuts(const OpenCover1D& cover) {
  validate(cover);
  CutSchedule plan;
  std::vector<IndexedArc> arcs = all_arcs(cover);
  for (const IndexedArc& ia : arcs) {
    if (arc_is_whole(cover.domain, ia.arc)) {
      plan.whole_element = ia.element;
      return plan;
    }
  }
  std::vector<IndexedArc> chain;
  if (cover.domain == Domain::Interval) {
    // the arc containing 0 must start left of it
    std::optional<IndexedArc> start;
    for (const IndexedArc& ia : arcs) {
      if (ia.arc.lo < 0 && (!start || ia.arc.hi > start->arc.hi)) start = ia;
    }
    if (!start) fail(ErrorKind::NoOverlap, "no arc contains 0");
    chain.push_back(*start);
    while (!(chain.back().arc.hi > 1)) {
      auto next = furthest(cover, arcs, chain.back().arc.hi);
      if (!next) fail(ErrorKind::NoOverlap, "chain stalls at " + to_string(chain.back().arc.hi));
      chain.push_back(*next);
    }
  } else {
    IndexedArc start = arcs.front();
    start.arc.hi -= floor(start.arc.lo);
    start.arc.lo -= floor(start.arc.lo);
    chain.push_back(start);
    const Rational closing = start.arc.lo + 1;
    while (!(chain.back().arc.hi > closing)) {
      auto next = furthest(cover, arcs, chain.back().arc.hi);
      if (!next) fail(ErrorKind::NoOverlap, "chain stalls at " + to_string(chain.back().arc.hi));
      chain.push_back(*next);
      if (chain.size() > arcs.size() + 2) fail(ErrorKind::NoOverlap, "chain does not close");
    }
  }

  const std::size_t k = chain.size();
  // overlap between chain[i] and chain[i+1] (and the closing one on the circle)
  std::vector<std::pair<Rational, Rational>> overlaps;
  for (std::size_t i = 0; i + 1 < k; ++i) overlaps.emplace_back(chain[i + 1].arc.lo, chain[i].arc.hi);
  if (cover.domain == Domain::Circle) {
    Rational lo = chain.front().arc.lo + 1;
    Rational hi = min(chain.back().arc.hi, chain[1 % k].arc.lo + 1);
    overlaps.emplace_back(lo, hi);
  }
  for (const auto& [lo, hi] : overlaps) {
    if (!(lo < hi)) fail(ErrorKind::NoOverlap, "consecutive arcs meet in at most a point");
  }

  std::vector<Rational> points;
  for (const auto& [lo, hi] : overlaps) points.push_back((lo + hi) / 2);
  if (cover.domain == Domain::Interval) {
    for (std::size_t i = 0; i < k; ++i) {
      Rational lo = i == 0 ? Rational(0) : points[i - 1];
      Rational hi = i + 1 == k ? Rational(1) : points[i];
      plan.segments.push_back({chain[i].element, lo, hi});
    }
    for (std::size_t i = 0; i + 1 < k; ++i) {
      plan.cuts.push_back({points[i], (overlaps[i].second - overlaps[i].first) / 4, i, i + 1});
    }
  } else {
    // segment 0 wraps: from the closing cut (shifted down by 1) to the first cut
    plan.segments.push_back({chain[0].element, points.back() - 1, points[0]});
    for (std::size_t i = 1; i < k; ++i) plan.segments.push_back({chain[i].element, points[i - 1], points[i]});
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t left = i;
      std::size_t right = (i + 1) % k;
      plan.cuts.push_back({points[i], (overlaps[i].second - overlaps[i].first) / 4, left, right});
    }
  }
  return plan;
}

std::optional<Rational> fragmentation_threshold(const OpenCover1D& cover) {
  CutSchedule plan = plan_cuts(cover);
  if (plan.whole_element) return std::nullopt;
  Rational best = plan.cuts.front().half_width;
  for (const auto& c : plan.cuts) best = min(best, c.half_width);
  return best;
}

namespace {

[[noreturn]] void not_fragmentable(const std::string& why) { fail(ErrorKind::NotFragmentable, why); }

// Value of the continuous lift of a near-identity map.
Rational lift_at(const PLMap& r, const Rational& x) { return r.near_lift(x); }

}  // namespace

std::vector<PLMap> fragment(const PLMap& f, const OpenCover1D& cover) {
  if (f.domain() != cover.domain) fail(ErrorKind::DomainMismatch, "map and cover on different domains");
  CutSchedule plan = plan_cuts(cover);
  const std::size_t m = cover.elements.size();
  std::vector<PLMap> pieces(m, PLMap::identity(f.domain()));
  if (plan.whole_element) {
    pieces[*plan.whole_element] = f;
    return pieces;
  }
  if (f.domain() == Domain::Circle && !(displacement(f) < Rational(1, 2))) {
    not_fragmentable("displacement at least 1/2");
  }

  // cut index at the left/right end of each segment
  const std::size_t nseg = plan.segments.size();
  std::vector<std::optional<std::size_t>> left_cut(nseg), right_cut(nseg);
  for (std::size_t c = 0; c < plan.cuts.size(); ++c) {
    right_cut[plan.cuts[c].left] = c;
    left_cut[plan.cuts[c].right] = c;
  }

  PLMap remainder = f;
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<std::pair<Rational, Rational>> pts;
    bool owns = false;
    for (std::size_t s = 0; s < nseg; ++s) {
      const auto& seg = plan.segments[s];
      if (seg.element != e) continue;
      owns = true;
      Rational lo = seg.lo;
      Rational hi = seg.hi;
      if (left_cut[s]) {
        const auto& cut = plan.cuts[*left_cut[s]];
        // the point may be stored one period up on the circle
        Rational p = cut.point - (cut.point > seg.hi ? 1 : 0);
        const auto& w = cut.half_width;
        std::size_t other = plan.segments[cut.left].element;
        if (other < e) {
          lo = p - w;
          if (lift_at(remainder, lo) != lo) not_fragmentable("left end not yet corrected");
        } else {
          lo = p;
          Rational v = lift_at(remainder, p);
          if (!(p - w < v && v < p + w)) not_fragmentable("cut at " + to_string(p) + " cannot be matched");
          pts.emplace_back(p - w, p - w);
        }
      }
      Rational hi_pad;
      bool pad = false;
      if (right_cut[s]) {
        const auto& cut = plan.cuts[*right_cut[s]];
        Rational p = cut.point;
        const auto& w = cut.half_width;
        std::size_t other = plan.segments[cut.right].element;
        if (other < e) {
          hi = p + w;
          if (lift_at(remainder, hi) != hi) not_fragmentable("right end not yet corrected");
        } else {
          hi = p;
          Rational v = lift_at(remainder, p);
          if (!(p - w < v && v < p + w)) not_fragmentable("cut at " + to_string(p) + " cannot be matched");
          hi_pad = p + w;
          pad = true;
        }
      }
      pts.emplace_back(lo, lift_at(remainder, lo));
      const auto& ks = remainder.knots();
      if (f.domain() == Domain::Interval) {
        for (const Rational& k : ks) {
          if (lo < k && k < hi) pts.emplace_back(k, lift_at(remainder, k));
        }
      } else {
        for (Rational j = floor(lo); j <= floor(hi); j += 1) {
          for (const Rational& k : ks) {
            Rational x = k + j;
            if (lo < x && x < hi) pts.emplace_back(x, lift_at(remainder, x));
          }
        }
      }
      pts.emplace_back(hi, lift_at(remainder, hi));
      if (pad) pts.emplace_back(hi_pad, hi_pad);
    }
    if (!owns) continue;
    try {
      PLMap g = f.domain() == Domain::Interval ? PLMap::interval_from_points(std::move(pts))
                                               : PLMap::circle(std::move(pts));
      remainder = compose(g.inverse(), remainder);
      pieces[e] = std::move(g);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::InvariantViolation) throw;
      not_fragmentable(std::string("piece ") + std::to_string(e + 1) + " is not a homeomorphism");
    }
  }
  if (!remainder.is_identity()) not_fragmentable("remainder is not the identity");
  if (compose_all(pieces) != f) not_fragmentable("product of pieces differs from f");
  for (std::size_t e = 0; e < m; ++e) {
    if (!support(pieces[e]).inside(cover.elements[e])) {
      not_fragmentable("piece " + std::to_string(e + 1) + " leaves its cover element");
    }
  }
  return pieces;
}

}  // namespace homeo
