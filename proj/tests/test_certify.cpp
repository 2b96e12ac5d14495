#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"
#include "oracles.hpp"

#include "homeo/certify.hpp"
#include "homeo/commutator.hpp"
#include "homeo/error.hpp"

using namespace homeo;
using namespace homeo::testing;

namespace {
Rational q(long p, long d) { return ratio(p, d); }

const SampledSpace& unit_circle() {
  static const SampledSpace s = SampledSpace::circle(1, q(1, 1024));
  return s;
}

// Quarter of the narrowest overlap between cyclically adjacent eps-balls.
Rational oracle_threshold(std::vector<Rational> centers, const Rational& eps) {
  std::sort(centers.begin(), centers.end());
  Rational worst = 2 * eps;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    Rational next = i + 1 < centers.size() ? centers[i + 1] : centers.front() + 1;
    worst = min(worst, 2 * eps - (next - centers[i]));
  }
  return worst / 4;
}

Rational precondition_bound(const Rational& eps) {
  auto s = unit_circle().for_epsilon(eps);
  auto cover = efficient_cover(s, eps);
  std::vector<Rational> cs;
  for (std::size_t c : cover.net.centers) cs.push_back(s.coordinates(c)[0]);
  return min(oracle_threshold(cs, eps), eps);
}

// Product of the letters against the stored target, evaluated by the oracle.
bool product_matches(const FactorizationCertificate& c, const std::vector<Rational>& xs) {
  for (const Rational& x : xs) {
    Rational y = x;
    for (auto it = c.letters.rbegin(); it != c.letters.rend(); ++it) y = evaluate(it->map, y);
    if (frac(y - circle_eval(c.target, x)) != 0) return false;
  }
  return true;
}

std::vector<Rational> probe_points(Rng& rng) {
  std::vector<Rational> xs = grid(10);
  for (int i = 0; i < 64; ++i) xs.push_back(random_rational(rng, 0, 1, 100003));
  return xs;
}

bool is_identity_letter(const Letter& l) {
  if (const auto* p = std::get_if<PLMap>(&l)) return p->is_identity();
  return false;
}
}  // namespace

TEST_CASE("threshold oracle agrees with the fragmentation threshold") {
  for (Rational eps : {q(3, 10), q(1, 10), q(3, 100)}) {
    auto s = unit_circle().for_epsilon(eps);
    auto cover = efficient_cover(s, eps);
    std::vector<Rational> cs;
    for (std::size_t c : cover.net.centers) cs.push_back(s.coordinates(c)[0]);
    auto t = fragmentation_threshold(cover_from_classes(cs, cover.color_of, cover.colors, eps));
    REQUIRE(t.has_value());
    CHECK(*t == oracle_threshold(cs, eps));
  }
}

TEST_CASE("small rotation at eps = 3/10") {
  auto cert = certify_small_word(PLMap::rotation(q(1, 100)), unit_circle(), q(3, 10));
  CHECK(cert.m == 3);
  CHECK(cert.centers == std::vector<Rational>{0, q(1, 3), q(2, 3)});
  CHECK(cert.letters.size() == 18);
  CHECK(cert.ledger_total() == 36);
  CHECK(cert.total_bound == 36);
  for (std::size_t c = 0; c < 3; ++c) CHECK(cert.ledger[c] == 12);
  Verdict v = verify_certificate(cert);
  CHECK(v.ok());
  for (const char* name : {"net_separated", "net_covers", "same_color_disjoint", "product", "shrink_small",
                           "commutator_local", "ledger"})
    CHECK(v.passed(name));
  Rng rng(1);
  CHECK(product_matches(cert, probe_points(rng)));
}

TEST_CASE("identity and out-of-range targets") {
  auto id = certify_small_word(PLMap::identity(Domain::Circle), unit_circle(), q(3, 10));
  CHECK(id.letters.empty());
  CHECK(id.ledger_total() == 0);
  CHECK(verify_certificate(id).ok());

  try {
    certify_small_word(PLMap::rotation(q(1, 5)), unit_circle(), q(3, 10));
    FAIL("rotation by 1/5 should not fragment");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFragmentable);
  }
  CHECK_THROWS_AS(certify_small_word(PLMap::identity(Domain::Interval), unit_circle(), q(3, 10)), Error);
  CHECK_THROWS_AS(certify_small_word(PLMap::rotation(q(1, 100)), SampledSpace::circle(2, q(1, 64)), q(3, 10)),
                  Error);
}

TEST_CASE("shrink conjugator moves balls onto cores") {
  std::vector<OpenArc> balls{{q(1, 10), q(3, 10)}, {q(6, 10), q(8, 10)}};
  std::vector<OpenArc> cores{{q(5, 30), q(7, 30)}, {q(20, 30), q(22, 30)}};
  PLMap w = shrink_conjugator(Domain::Circle, balls, cores, q(1, 10));
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(oracle_eval(w, balls[i].lo) == cores[i].lo);
    CHECK(oracle_eval(w, balls[i].hi) == cores[i].hi);
  }
  CHECK(displacement(w) < q(2, 10));
  CHECK_FALSE(support(w).contains(q(9, 20)));
  CHECK_THROWS_AS(shrink_conjugator(Domain::Circle, {{0, q(1, 2)}, {q(1, 4), q(3, 4)}},
                                    {{q(1, 8), q(1, 4)}, {q(1, 2), q(5, 8)}}, q(1, 2)),
                  Error);
  try {
    shrink_conjugator(Domain::Circle, {{0, q(4, 10)}}, {{q(1, 100), q(2, 100)}}, q(1, 10));
    FAIL("compression beyond 2 eps accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoresTooLarge);
  }
}

TEST_CASE("soundness on random small maps") {
  Rng rng(424242);
  const std::vector<Rational> eps_list{q(3, 10), q(1, 10), q(3, 100)};
  std::vector<int> counts(eps_list.size(), 0);
  auto probes = probe_points(rng);
  for (int run = 0; run < 500; ++run) {
    std::size_t k = static_cast<std::size_t>(run) % eps_list.size();
    const Rational& eps = eps_list[k];
    Rational bound = precondition_bound(eps);
    PLMap f = random_near_identity(rng, Domain::Circle, bound * q(99, 100), 2 + rng() % 5);
    REQUIRE(displacement(f) < bound);
    auto cert = certify_small_word(f, unit_circle(), eps);
    Verdict v = verify_certificate(cert);
    CHECK(v.ok());
    CHECK(cert.ledger_total() <= 12 * cert.m);
    CHECK(cert.letters.size() * kSlotsPerLetter == cert.ledger_total());
    CHECK(cert.m <= 5);
    CHECK(product_matches(cert, probes));
    // each commutator letter stays inside the balls of its color
    for (const auto& l : cert.letters) {
      if (l.role == LetterRole::CommutatorLetter) CHECK(support_of(l.map).inside(class_arcs(cert, l.color)));
    }
    ++counts[k];
  }
  for (int c : counts) CHECK(c >= 166);
}

TEST_CASE("tampering with a single letter is detected") {
  Rng rng(99);
  Rational eps = q(3, 10);
  Rational bound = precondition_bound(eps);
  int tampered = 0;
  int detected = 0;
  for (int run = 0; run < 6; ++run) {
    PLMap f = random_near_identity(rng, Domain::Circle, bound * q(9, 10), 4);
    if (f.is_identity()) continue;
    auto cert = certify_small_word(f, unit_circle(), eps);
    for (std::size_t i = 0; i < cert.letters.size(); ++i) {
      // identity replacement
      if (!is_identity_letter(cert.letters[i].map)) {
        auto t = cert;
        t.letters[i].map = PLMap::identity(Domain::Circle);
        ++tampered;
        detected += !verify_certificate(t).ok();
      }
      // composition with a small bump somewhere on the circle
      if (const auto* p = std::get_if<PLMap>(&cert.letters[i].map)) {
        Rational lo = random_rational(rng, 0, q(9, 10), 1000);
        PLMap beta = bump(Domain::Circle, lo, lo + q(1, 20), q(1, 3));
        auto t = cert;
        t.letters[i].map = compose(*p, beta);
        ++tampered;
        detected += !verify_certificate(t).ok();
      }
      // a shrink letter with large displacement
      if (cert.letters[i].role == LetterRole::ShrinkConjugator) {
        auto t = cert;
        t.letters[i].map = compose(std::get<PLMap>(cert.letters[i].map), PLMap::rotation(q(2, 5)));
        ++tampered;
        detected += !verify_certificate(t).ok();
      }
    }
  }
  CHECK(tampered > 100);
  CHECK(detected == tampered);
}

TEST_CASE("a shrink letter moving points by 2 eps fails shrink_small") {
  // at eps = 3/10 every circle map moves points less than 2 eps, so use 1/10
  Rational eps = q(1, 10);
  auto cert = certify_small_word(PLMap::rotation(q(1, 200)), unit_circle(), eps);
  bool found = false;
  for (auto& l : cert.letters) {
    if (l.role != LetterRole::ShrinkConjugator) continue;
    auto t = cert;
    auto& target = t.letters[static_cast<std::size_t>(&l - cert.letters.data())];
    target.map = compose(std::get<PLMap>(l.map), PLMap::rotation(q(2, 5)));
    Verdict v = verify_certificate(t);
    CHECK_FALSE(v.passed("shrink_small"));
    CHECK_FALSE(v.ok());
    found = true;
  }
  CHECK(found);
}

TEST_CASE("structural problems are malformed certificates") {
  auto cert = certify_small_word(PLMap::rotation(q(1, 100)), unit_circle(), q(3, 10));
  auto bad_color = cert;
  bad_color.colors[0] = 7;
  auto bad_ledger = cert;
  bad_ledger.ledger.pop_back();
  auto bad_letter = cert;
  bad_letter.letters[0].map = PLMap::identity(Domain::Interval);
  for (const auto& c : {bad_color, bad_ledger, bad_letter}) {
    try {
      verify_certificate(c);
      FAIL("accepted a malformed certificate");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedCertificate);
    }
  }
  // a ledger that understates its letters fails, but is well formed
  auto short_ledger = cert;
  short_ledger.ledger[0] = 10;
  CHECK_FALSE(verify_certificate(short_ledger).passed("ledger"));
  auto moved = cert;
  moved.centers[1] = q(1, 2);
  CHECK_FALSE(verify_certificate(moved).passed("net_separated"));
}
