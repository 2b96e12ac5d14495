#pragma once

#include "homeo/cover.hpp"
#include "homeo/fragmentation.hpp"
#include "homeo/letter.hpp"
#include "homeo/pl_map.hpp"
#include "homeo/support.hpp"

#include <string>
#include <utility>
#include <vector>

namespace homeo {

enum class LetterRole { ShrinkConjugator, CommutatorLetter };
std::string_view to_string(LetterRole r);

struct CertificateLetter {
  Letter map;
  LetterRole role;
  SupportSet support_region;
  std::size_t color;
};

// A word of small letters whose product is `target`, over an efficient cover
// of the circle R/Z by eps-balls.
struct FactorizationCertificate {
  PLMap target;
  Rational epsilon;
  std::vector<Rational> centers;       // ball centers on R/Z
  std::vector<std::size_t> colors;     // 0-based color of each center
  std::size_t m = 0;                   // number of color classes
  std::vector<CertificateLetter> letters;  // product letters[0] o letters[1] o ...
  std::vector<std::size_t> ledger;     // per-color W-exponent count
  std::size_t total_bound = 0;         // 12 m

  std::size_t ledger_total() const;
};

// Each letter accounts for two W-slots: w and w^-1 give 2 + 2, the four
// commutator letters give 8, so a color class costs 12.
inline constexpr std::size_t kSlotsPerLetter = 2;
inline constexpr std::size_t kSlotsPerColor = 12;

// Open balls of color class i.
std::vector<OpenArc> class_arcs(const FactorizationCertificate& cert, std::size_t color);
OpenCover1D cover_from_classes(const std::vector<Rational>& centers, const std::vector<std::size_t>& colors,
                               std::size_t m, const Rational& eps);

// PL map w with w(ball_i) = core_i, identity away from a neighbourhood of the
// balls, and sup displacement < 2 eps.
PLMap shrink_conjugator(Domain domain, const std::vector<OpenArc>& balls, const std::vector<OpenArc>& cores,
                        const Rational& eps);

FactorizationCertificate certify_small_word(const PLMap& f, const SampledSpace& space, const Rational& eps);

struct Verdict {
  std::vector<std::pair<std::string, bool>> checks;
  bool ok() const;
  bool passed(const std::string& name) const;
};

// Recomputes every invariant from the raw certificate data. Throws
// MalformedCertificate on structural problems.
Verdict verify_certificate(const FactorizationCertificate& cert);

// Sample points for the product check: knots of the target, the dyadic grid
// 2^-12, and every PL letter knot pulled back through the letters to its right.
std::vector<Rational> certificate_test_points(const FactorizationCertificate& cert);

}  // namespace homeo
