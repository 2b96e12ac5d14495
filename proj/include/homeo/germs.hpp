#pragma once

// Germs at 0 in the radial model: increasing maps of [0, r] fixing 0.

#include "homeo/germ_map.hpp"
#include "homeo/letter.hpp"
#include "homeo/self_similar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace homeo {

// Largest knot t with g(x) < x on (0, t], or nothing when g does not
// contract near 0.
std::optional<Rational> is_local_contraction(const GermMap& g);

// Worst contraction ratio max g(x)/x over (0, t].
Rational contraction_ratio(const GermMap& g, const Rational& t);

// h with h(g(x)) = h(x)/2 on (0, t], h(t) = t, identity beyond t.
SelfSimilarMap straighten_contraction(const GermMap& g, const Rational& t);
SelfSimilarMap straighten_contraction(const GermMap& g);

// Multi-scale sample of (0, window]: 32 points per dyadic shell, `scales`
// shells deep, plus the window itself. Sorted decreasing.
std::vector<Rational> germ_grid(const Rational& window, int scales = 20);

struct Conjugacy {
  Word h;           // h g1 h^-1 = g2 near 0
  Rational window;  // verified on germ_grid(window)
};
Conjugacy conjugate_contractions(const GermMap& g1, const GermMap& g2);

// h g1 h^-1 == g2 at every point of germ_grid(window, scales).
bool conjugates_on(const Word& h, const GermMap& g1, const GermMap& g2, const Rational& window, int scales = 20);

struct BasisContraction {
  GermMap b;
  GermMap composite;  // b f b^-1 f
  std::vector<Rational> radii;  // r_n, n = 0..depth
};
BasisContraction basis_to_contraction(const GermMap& f, int depth = 20);

// composite(2^-n) <= 2^-n-1 for n = 0..depth.
bool nests_basis(const GermMap& composite, int depth = 20);

GermMap make_compatible_contraction(const GermMap& g_prime, int depth = 20);

enum class Provenance { Straightening, BasisLemma2, CompatibleC, AssumedDim2 };
std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view s);

struct ConjugacyFactor {
  Word conjugator;
  GermMap core;
  int exponent = 1;
  Provenance provenance = Provenance::Straightening;
};

// Records how many of the paper's conjugates a constructed factor stands for.
struct LedgerEntry {
  Provenance tag;
  std::size_t factor;
  int paper_conjugates;
  std::string note;
};

struct ConjugacyCertificate {
  GermMap target;
  std::vector<ConjugacyFactor> factors;
  std::vector<LedgerEntry> ledger;
  Rational verified_to;
  int scales = 20;

  // Product of the factors, leftmost applied last.
  Rational operator()(const Rational& x) const;
  int paper_conjugates() const;
};

ConjugacyCertificate decompose_via_contraction(const GermMap& g_prime, const GermMap& g);

// Independent re-evaluation of the product on germ_grid(window, scales).
bool verify_conjugacy_certificate(const ConjugacyCertificate& cert, const Rational& window, int scales = 20);
bool verify_conjugacy_certificate(const ConjugacyCertificate& cert);

}  // namespace homeo
