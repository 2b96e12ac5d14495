#include "homeo/germs.hpp"

#include "homeo/error.hpp"

#include <algorithm>

namespace homeo {

std::optional<Rational> is_local_contraction(const GermMap& g) {
  const auto& ks = g.rep().knots();
  std::optional<Rational> t;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (!(g(ks[i]) < ks[i])) break;
    t = ks[i];
  }
  return t;
}

Rational contraction_ratio(const GermMap& g, const Rational& t) {
  Rational worst = g(t) / t;
  for (const Rational& k : g.rep().knots()) {
    if (k > 0 && k <= t) worst = max(worst, g(k) / k);
  }
  return worst;
}

namespace {

// Descent steps needed to cross 64 halvings at the worst contraction ratio.
int depth_for(const GermMap& g, const Rational& t) {
  Rational rho = contraction_ratio(g, t);
  if (rho >= 1) fail(ErrorKind::NotAContraction, "g(x) >= x somewhere on (0, t]");
  Rational acc = 1;
  int k = 0;
  while (acc > Rational(1, 2)) {
    acc *= rho;
    ++k;
    if (k > 4096) fail(ErrorKind::NotAContraction, "contraction too weak to straighten");
  }
  return kDefaultDepthBound * k;
}

Rational require_contraction(const GermMap& g) {
  auto t = is_local_contraction(g);
  if (!t) fail(ErrorKind::NotAContraction, "g does not satisfy g(x) < x near 0");
  return *t;
}

Rational dyadic_floor(const Rational& x) {
  Rational p = 1;
  while (p > x) p /= 2;
  return p;
}

}  // namespace

SelfSimilarMap straighten_contraction(const GermMap& g, const Rational& t) {
  if (t <= 0 || t > g.hi()) fail(ErrorKind::NotAContraction, "window must lie in (0, hi]");
  int depth = depth_for(g, t);
  PLFunction base = PLFunction::linear(g(t), t, t / 2, t);
  return SelfSimilarMap(EquivariantTower(g, t, std::move(base), false, depth));
}

SelfSimilarMap straighten_contraction(const GermMap& g) { return straighten_contraction(g, require_contraction(g)); }

std::vector<Rational> germ_grid(const Rational& window, int scales) {
  std::vector<Rational> xs{window};
  Rational shell = window / 2;
  for (int m = 0; m < scales; ++m, shell /= 2) {
    for (int j = 31; j >= 0; --j) xs.push_back(shell * ratio(32 + j, 32));
  }
  return xs;
}

bool conjugates_on(const Word& h, const GermMap& g1, const GermMap& g2, const Rational& window, int scales) {
  Word hinv = h.inverse();
  try {
    for (const Rational& x : germ_grid(window, scales)) {
      if (h(g1(hinv(x))) != g2(x)) return false;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainError || e.kind() == ErrorKind::DepthExceeded) return false;
    throw;
  }
  return true;
}

Conjugacy conjugate_contractions(const GermMap& g1, const GermMap& g2) {
  Rational t1 = require_contraction(g1);
  Rational t2 = require_contraction(g2);
  SelfSimilarMap s1 = straighten_contraction(g1, t1);
  SelfSimilarMap s2 = straighten_contraction(g2, t2);
  SelfSimilarMap s2inv = s2.inverse();
  // S1 g1 S1^-1 = x/2 on (0, t1] and S2 g2 S2^-1 = x/2 on (0, t2], so the
  // conjugacy holds wherever S2(x) <= min(t1, t2).
  Rational window = dyadic_floor(s2inv(min(t1, t2)));
  Word h(std::vector<Letter>{s2inv, s1});
  if (!conjugates_on(h, g1, g2, window)) {
    fail(ErrorKind::InvariantViolation, "straightened conjugacy failed on its window");
  }
  return Conjugacy{std::move(h), window};
}

BasisContraction basis_to_contraction(const GermMap& f, int depth) {
  if (f.hi() < 1) fail(ErrorKind::NotBasisContracting, "f must be defined on [0, 1]");
  std::vector<Rational> radii;
  for (int n = 0; n <= depth; ++n) {
    Rational p = pow2(-n);
    Rational fp = f(p);
    if (!(fp < p)) fail(ErrorKind::NotBasisContracting, "f(2^-" + std::to_string(n) + ") >= 2^-" + std::to_string(n));
    radii.push_back(max(fp, 3 * pow2(-n - 2)));
  }
  // lambda(2^-n) = r_n, lambda(r_n) = 2^-n-1, slope 3/4 below 2^-depth-1
  std::vector<Rational> xs{0};
  std::vector<Rational> ys{0};
  xs.push_back(pow2(-depth - 1));
  ys.push_back(3 * pow2(-depth - 3));
  for (int n = depth; n >= 0; --n) {
    xs.push_back(radii[static_cast<std::size_t>(n)]);
    ys.push_back(pow2(-n - 1));
    xs.push_back(pow2(-n));
    ys.push_back(radii[static_cast<std::size_t>(n)]);
  }
  GermMap b(std::move(xs), std::move(ys));
  GermMap composite = compose(b, compose(f, compose(b.inverse(), f)));
  return BasisContraction{std::move(b), std::move(composite), std::move(radii)};
}

bool nests_basis(const GermMap& composite, int depth) {
  for (int n = 0; n <= depth; ++n) {
    Rational p = pow2(-n);
    if (p > composite.hi() || composite(p) > p / 2) return false;
  }
  return true;
}

GermMap make_compatible_contraction(const GermMap& g_prime, int depth) {
  if (g_prime.hi() < 1) fail(ErrorKind::PreconditionViolated, "g' must be defined on [0, 1]");
  // go deep enough that g' is linear below 2^-D, so the linear tail of c is safe
  int d = depth;
  while (pow2(-d) > g_prime.linear_until()) ++d;
  std::vector<Rational> xs{0};
  std::vector<Rational> ys{0};
  Rational t0;
  for (int n = d; n >= 0; --n) {
    Rational r = g_prime(pow2(-n));
    Rational t = min(r, pow2(-n - 1)) / 2;
    xs.push_back(r);
    ys.push_back(t);
    t0 = t;
  }
  Rational top = max(Rational(1), g_prime.rep().image_hi());
  if (top > xs.back()) {
    xs.push_back(top);
    ys.push_back((top + t0) / 2);
  }
  return GermMap(std::move(xs), std::move(ys));
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Straightening: return "Straightening";
    case Provenance::BasisLemma2: return "BasisLemma2";
    case Provenance::CompatibleC: return "CompatibleC";
    case Provenance::AssumedDim2: return "AssumedDim>=2";
  }
  return "?";
}

Provenance parse_provenance(std::string_view s) {
  for (Provenance p : {Provenance::Straightening, Provenance::BasisLemma2, Provenance::CompatibleC,
                       Provenance::AssumedDim2}) {
    if (to_string(p) == s) return p;
  }
  fail(ErrorKind::ParseError, "unknown provenance tag '" + std::string(s) + "'");
}

Rational ConjugacyCertificate::operator()(const Rational& x) const {
  Rational y = x;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    y = it->conjugator.inverse()(y);
    y = it->exponent > 0 ? it->core(y) : it->core.inverse()(y);
    y = it->conjugator(y);
  }
  return y;
}

int ConjugacyCertificate::paper_conjugates() const {
  int total = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto it = std::find_if(ledger.begin(), ledger.end(), [&](const LedgerEntry& e) { return e.factor == i; });
    total += it == ledger.end() ? 1 : it->paper_conjugates;
  }
  return total;
}

bool verify_conjugacy_certificate(const ConjugacyCertificate& cert, const Rational& window, int scales) {
  struct Prepared {
    Word h;
    Word hinv;
    GermMap core;
  };
  std::vector<Prepared> fs;
  for (const ConjugacyFactor& f : cert.factors) {
    if (f.exponent != 1 && f.exponent != -1) return false;
    fs.push_back({f.conjugator, f.conjugator.inverse(), f.exponent > 0 ? f.core : f.core.inverse()});
  }
  try {
    for (const Rational& x : germ_grid(window, scales)) {
      Rational y = x;
      for (auto it = fs.rbegin(); it != fs.rend(); ++it) y = it->h(it->core(it->hinv(y)));
      if (y != cert.target(x)) return false;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainError || e.kind() == ErrorKind::DepthExceeded) return false;
    throw;
  }
  return true;
}

bool verify_conjugacy_certificate(const ConjugacyCertificate& cert) {
  return verify_conjugacy_certificate(cert, cert.verified_to, cert.scales);
}

ConjugacyCertificate decompose_via_contraction(const GermMap& g_prime, const GermMap& g) {
  require_contraction(g);
  ConjugacyCertificate cert{g_prime, {}, {}, 0, 20};
  if (germ_equal(g_prime, g)) {
    cert.factors.push_back({Word(), g, 1, Provenance::Straightening});
  } else {
    GermMap c = make_compatible_contraction(g_prime);
    GermMap cg = compose(c, g_prime);
    if (!is_local_contraction(c) || !is_local_contraction(cg)) {
      fail(ErrorKind::InvariantViolation, "compatible contraction construction failed");
    }
    // c = h1 g h1^-1 and c g' = h2 g h2^-1, hence g' = (h1 g^-1 h1^-1)(h2 g h2^-1)
    Conjugacy h1 = conjugate_contractions(g, c);
    Conjugacy h2 = conjugate_contractions(g, cg);
    cert.factors.push_back({h1.h, g, -1, Provenance::CompatibleC});
    cert.factors.push_back({h2.h, g, 1, Provenance::Straightening});
    cert.ledger.push_back({Provenance::AssumedDim2, 0, 4,
                           "c is a product of 4 conjugates of g^-1 by the ball-swap lemma; "
                           "the radial model uses one conjugate"});
    cert.ledger.push_back({Provenance::AssumedDim2, 1, 4,
                           "cg' is a product of 4 conjugates of g by the ball-swap lemma; "
                           "the radial model uses one conjugate"});
  }
  for (int k = 0; k <= 16; ++k) {
    if (verify_conjugacy_certificate(cert, pow2(-k), cert.scales)) {
      cert.verified_to = pow2(-k);
      return cert;
    }
  }
  fail(ErrorKind::InvariantViolation, "certificate does not verify on [0, 2^-16]");
}

}  // namespace homeo
