#include "homeo/certify.hpp"

#include "homeo/commutator.hpp"
#include "homeo/error.hpp"

#include <algorithm>
#include <optional>

namespace homeo {

std::string_view to_string(LetterRole r) {
  return r == LetterRole::ShrinkConjugator ? "ShrinkConjugator" : "CommutatorLetter";
}

std::size_t FactorizationCertificate::ledger_total() const {
  std::size_t total = 0;
  for (std::size_t c : ledger) total += c;
  return total;
}

namespace {

// Lift of c lying inside the arc, if any.
std::optional<ClosedArc> lift_into(Domain domain, const ClosedArc& c, const OpenArc& arc) {
  Rational k = domain == Domain::Circle ? ceil(arc.lo - c.lo) : Rational(0);
  ClosedArc placed{c.lo + k, c.hi + k};
  if (arc.lo < placed.lo && placed.hi < arc.hi) return placed;
  return std::nullopt;
}

// Gap between the closures of two disjoint arcs, measured outside both.
Rational arc_gap(Domain domain, const OpenArc& a, const OpenArc& b) {
  if (domain == Domain::Interval) return a.hi <= b.lo ? b.lo - a.hi : a.lo - b.hi;
  Rational right = frac(b.lo - a.hi);
  Rational left = frac(a.lo - b.hi);
  return min(right, left);
}

}  // namespace

std::vector<OpenArc> class_arcs(const FactorizationCertificate& cert, std::size_t color) {
  std::vector<OpenArc> arcs;
  for (std::size_t i = 0; i < cert.centers.size(); ++i) {
    if (cert.colors[i] == color) arcs.push_back({cert.centers[i] - cert.epsilon, cert.centers[i] + cert.epsilon});
  }
  return arcs;
}

OpenCover1D cover_from_classes(const std::vector<Rational>& centers, const std::vector<std::size_t>& colors,
                               std::size_t m, const Rational& eps) {
  OpenCover1D cover{Domain::Circle, std::vector<std::vector<OpenArc>>(m)};
  for (std::size_t i = 0; i < centers.size(); ++i) cover.elements[colors[i]].push_back({centers[i] - eps, centers[i] + eps});
  return cover;
}

PLMap shrink_conjugator(Domain domain, const std::vector<OpenArc>& balls, const std::vector<OpenArc>& cores,
                        const Rational& eps) {
  if (balls.size() != cores.size()) fail(ErrorKind::PreconditionViolated, "one core per ball required");
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const OpenArc& b = balls[i];
    const OpenArc& c = cores[i];
    if (!(b.lo <= c.lo && c.lo < c.hi && c.hi <= b.hi)) {
      fail(ErrorKind::PreconditionViolated, "core " + std::to_string(i) + " is not inside its ball");
    }
    if (domain == Domain::Interval && (b.lo <= 0 || b.hi >= 1)) {
      fail(ErrorKind::PreconditionViolated, "interval balls must avoid the endpoints");
    }
    if (domain == Domain::Circle && b.hi - b.lo >= 1) fail(ErrorKind::PreconditionViolated, "ball wraps the circle");
  }
  std::vector<std::pair<Rational, Rational>> pts;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const OpenArc& b = balls[i];
    const OpenArc& c = cores[i];
    if (b == c) continue;
    // room on either side, shared fairly with the neighbours
    Rational room = domain == Domain::Circle ? Rational(1 - (b.hi - b.lo)) : min(b.lo, Rational(1 - b.hi));
    for (std::size_t j = 0; j < balls.size(); ++j) {
      if (j == i) continue;
      Rational gap = arc_gap(domain, b, balls[j]);
      if (gap <= 0) {
        fail(ErrorKind::BallsNotDisjoint, "balls " + std::to_string(i) + " and " + std::to_string(j) + " are not separated");
      }
      room = min(room, gap);
    }
    Rational eta = room / 3;
    pts.emplace_back(b.lo - eta, b.lo - eta);
    pts.emplace_back(b.lo, c.lo);
    pts.emplace_back(b.hi, c.hi);
    pts.emplace_back(b.hi + eta, b.hi + eta);
  }
  if (pts.empty()) return PLMap::identity(domain);
  PLMap w = domain == Domain::Circle ? PLMap::circle(std::move(pts)) : PLMap::interval_from_points(std::move(pts));
  if (!(displacement(w) < 2 * eps)) fail(ErrorKind::CoresTooLarge, "compression moves points by 2 eps or more");
  return w;
}

FactorizationCertificate certify_small_word(const PLMap& f, const SampledSpace& space, const Rational& eps) {
  if (space.kind() != ModelKind::Circle || space.length() != 1) {
    fail(ErrorKind::PreconditionViolated, "certificates are built over the circle R/Z");
  }
  if (f.domain() != Domain::Circle) fail(ErrorKind::DomainMismatch, "target must be a circle map");
  SampledSpace sampled = space.for_epsilon(eps);
  ColoredCover cover = efficient_cover(sampled, eps);

  FactorizationCertificate cert{f, eps, {}, cover.color_of, cover.colors, {}, {}, kSlotsPerColor * cover.colors};
  for (std::size_t c : cover.net.centers) cert.centers.push_back(sampled.coordinates(c).front());
  cert.ledger.assign(cert.m, 0);

  OpenCover1D cover1d = cover_from_classes(cert.centers, cert.colors, cert.m, eps);
  auto threshold = fragmentation_threshold(cover1d);
  Rational bound = threshold ? min(*threshold, eps) : eps;
  if (!(displacement(f) < bound)) {
    fail(ErrorKind::NotFragmentable, "displacement " + to_string(displacement(f)) + " is not below " + to_string(bound));
  }
  std::vector<PLMap> pieces = fragment(f, cover1d);

  for (std::size_t color = 0; color < pieces.size(); ++color) {
    const PLMap& g = pieces[color];
    if (g.is_identity()) continue;
    SupportSet sg = support(g);
    std::vector<OpenArc> working;
    std::vector<OpenArc> cores;
    for (const OpenArc& ball : cover1d.elements[color]) {
      Rational centre = (ball.lo + ball.hi) / 2;
      std::optional<Rational> reach;
      for (const ClosedArc& comp : sg.components()) {
        auto placed = lift_into(Domain::Circle, comp, ball);
        if (!placed) continue;
        Rational r = max(centre - placed->lo, placed->hi - centre);
        reach = reach ? max(*reach, r) : r;
      }
      if (!reach) continue;
      // a ball strictly inside the eps-ball that still contains the piece's support
      Rational radius = (*reach + eps) / 2;
      working.push_back({centre - radius, centre + radius});
      cores.push_back({centre - radius / 3, centre + radius / 3});
    }
    PLMap w = shrink_conjugator(Domain::Circle, working, cores, eps);
    PLMap winv = invert(w);
    PLMap shrunk = compose(w, compose(g, winv));
    MultiAnderson ab = multi_anderson(shrunk, cores);
    std::vector<ClosedArc> core_hulls;
    for (const OpenArc& c : cores) core_hulls.push_back({c.lo, c.hi});
    SupportSet core_region(Domain::Circle, std::move(core_hulls));
    SupportSet w_region = support(w);
    // g = w^-1 [a, b] w
    cert.letters.push_back({winv, LetterRole::ShrinkConjugator, w_region, color});
    cert.letters.push_back({ab.a, LetterRole::CommutatorLetter, core_region, color});
    cert.letters.push_back({ab.b, LetterRole::CommutatorLetter, core_region, color});
    cert.letters.push_back({ab.a.inverse(), LetterRole::CommutatorLetter, core_region, color});
    cert.letters.push_back({invert(ab.b), LetterRole::CommutatorLetter, core_region, color});
    cert.letters.push_back({w, LetterRole::ShrinkConjugator, w_region, color});
    cert.ledger[color] += 6 * kSlotsPerLetter;
  }
  Verdict v = verify_certificate(cert);
  if (!v.ok()) fail(ErrorKind::InvariantViolation, "constructed certificate does not verify");
  return cert;
}

bool Verdict::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

bool Verdict::passed(const std::string& name) const {
  for (const auto& [n, ok] : checks) {
    if (n == name) return ok;
  }
  return false;
}

std::vector<Rational> certificate_test_points(const FactorizationCertificate& cert) {
  std::vector<Rational> xs = test_points(cert.target, 12);
  const auto& ls = cert.letters;
  std::vector<Letter> inverses;
  for (const auto& l : ls) inverses.push_back(invert(l.map));
  for (std::size_t j = 0; j < ls.size(); ++j) {
    const auto* p = std::get_if<PLMap>(&ls[j].map);
    if (!p) continue;
    for (const Rational& k : p->knots()) {
      Rational x = k;
      for (std::size_t i = j + 1; i < ls.size(); ++i) x = evaluate(inverses[i], x);
      xs.push_back(cert.target.domain() == Domain::Circle ? frac(x) : x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

Verdict verify_certificate(const FactorizationCertificate& cert) {
  auto malformed = [](const std::string& why) { fail(ErrorKind::MalformedCertificate, why); };
  if (cert.target.domain() != Domain::Circle) malformed("target is not a circle map");
  if (cert.epsilon <= 0) malformed("epsilon must be positive");
  if (cert.centers.empty()) malformed("no cover centers");
  if (cert.colors.size() != cert.centers.size()) malformed("one color per center required");
  if (cert.ledger.size() != cert.m) malformed("one ledger entry per color required");
  for (std::size_t c : cert.colors) {
    if (c >= cert.m) malformed("color index out of range");
  }
  for (const auto& l : cert.letters) {
    if (l.color >= cert.m) malformed("letter color out of range");
    if (l.role == LetterRole::ShrinkConjugator && !std::holds_alternative<PLMap>(l.map)) {
      malformed("shrink conjugators must be PL maps");
    }
    if (const auto* p = std::get_if<PLMap>(&l.map); p && p->domain() != Domain::Circle) malformed("letter not on the circle");
    if (std::holds_alternative<GermMap>(l.map)) malformed("germ letters have no place in a circle certificate");
  }

  Verdict v;
  const Rational& eps = cert.epsilon;
  const std::size_t n = cert.centers.size();

  // ε-net: separation, continuum covering (consecutive gaps < 2 eps), and
  // same-color disjointness
  bool separated = true;
  bool disjoint = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational d = circle_norm(cert.centers[i] - cert.centers[j]);
      if (d < eps) separated = false;
      if (cert.colors[i] == cert.colors[j] && d < 2 * eps) disjoint = false;
    }
  }
  std::vector<Rational> sorted;
  for (const Rational& c : cert.centers) sorted.push_back(frac(c));
  std::sort(sorted.begin(), sorted.end());
  bool covers = true;
  for (std::size_t i = 0; i < n; ++i) {
    Rational next = i + 1 < n ? sorted[i + 1] : Rational(sorted.front() + 1);
    if (!(next - sorted[i] < 2 * eps)) covers = false;
  }
  v.checks.emplace_back("net_separated", separated);
  v.checks.emplace_back("net_covers", covers);
  v.checks.emplace_back("same_color_disjoint", disjoint);

  // product
  bool product = true;
  try {
    for (const Rational& x : certificate_test_points(cert)) {
      Rational y = x;
      for (auto it = cert.letters.rbegin(); it != cert.letters.rend(); ++it) y = evaluate(it->map, y);
      if (frac(y - cert.target(x)) != 0) {
        product = false;
        break;
      }
    }
  } catch (const Error&) {
    product = false;
  }
  v.checks.emplace_back("product", product);

  bool small = true;
  bool local = true;
  for (const auto& l : cert.letters) {
    if (l.role == LetterRole::ShrinkConjugator) {
      if (!(displacement(std::get<PLMap>(l.map)) < 2 * eps)) small = false;
    } else {
      try {
        if (!support_of(l.map).inside(class_arcs(cert, l.color))) local = false;
      } catch (const Error&) {
        local = false;
      }
    }
  }
  v.checks.emplace_back("shrink_small", small);
  v.checks.emplace_back("commutator_local", local);

  std::vector<std::size_t> counted(cert.m, 0);
  for (const auto& l : cert.letters) counted[l.color] += kSlotsPerLetter;
  bool ledger = counted == cert.ledger && cert.total_bound == kSlotsPerColor * cert.m;
  std::size_t total = 0;
  for (std::size_t c : counted) {
    if (c > kSlotsPerColor) ledger = false;
    total += c;
  }
  if (total > kSlotsPerColor * cert.m) ledger = false;
  v.checks.emplace_back("ledger", ledger);
  return v;
}

}  // namespace homeo
