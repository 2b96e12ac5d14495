#pragma once

#include "homeo/letter.hpp"
#include "homeo/pl_map.hpp"
#include "homeo/self_similar.hpp"
#include "homeo/support.hpp"

#include <span>
#include <vector>

namespace homeo {

// PL map b supported compactly in `ball`, pushing points right, with
// b^n(s), n >= 0, pairwise disjoint. Points past s are squeezed toward the
// attracting end with ratio 1/2. Identity when s is empty.
// Throws SupportTooLarge unless closure(s) lies inside the ball.
PLMap build_translator(const OpenArc& ball, const SupportSet& s);

struct AndersonFactors {
  SelfSimilarMap a;  // AndersonTower(f, b)
  PLMap b;
};

// f = [a, b] = a b a^{-1} b^{-1} with supp(a), supp(b) inside the ball.
AndersonFactors anderson_factor(const PLMap& f, const OpenArc& ball);

struct MultiAnderson {
  SelfSimilarMap a;
  PLMap b;
  // One factor pair per ball that meets supp(f), in ball order.
  std::vector<AndersonFactors> per_ball;
};

// Simultaneous Anderson factorization over pairwise disjoint balls.
// Throws BallsNotDisjoint or SupportTooLarge.
MultiAnderson multi_anderson(const PLMap& f, const std::vector<OpenArc>& balls);

// Part of f on the given ball: f there, identity elsewhere.
PLMap restrict_to_ball(const PLMap& f, const OpenArc& ball);

// Knots of f together with the dyadic grid k / 2^level in [0, 1].
std::vector<Rational> test_points(const PLMap& f, int level = 12);
std::vector<Rational> dyadic_grid(int level);

// Checks [a, b] = [a', b'] at the test points, after verifying that
// supp(a), supp(b) lie in inner, a' agrees with a on inner with
// supp(a') in middle, b' agrees with b on middle with supp(b') in outer,
// and inner c middle c outer. Throws PreconditionViolated otherwise.
bool commutator_locality_check(const Letter& a, const Letter& b, const Letter& a_ext,
                               const Letter& b_ext, const OpenArc& inner, const OpenArc& middle,
                               const OpenArc& outer, Domain domain,
                               std::span<const Rational> points);

}  // namespace homeo
