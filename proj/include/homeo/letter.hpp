#pragma once

#include "homeo/germ_map.hpp"
#include "homeo/pl_map.hpp"
#include "homeo/self_similar.hpp"
#include "homeo/support.hpp"

#include <variant>
#include <vector>

namespace homeo {

// Any map the library can evaluate exactly at a rational point.
using Letter = std::variant<PLMap, GermMap, SelfSimilarMap>;

Rational evaluate(const Letter& m, const Rational& x);
Letter invert(const Letter& m);

// Closed set outside which the letter is the identity. Exact for PL maps,
// a hull for towers. Germ letters have no global support (PreconditionViolated).
SupportSet support_of(const Letter& m);

// Product m_1 m_2 ... m_k, i.e. x -> m_1(m_2(...m_k(x))).
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Rational operator()(const Rational& x) const;
  Word inverse() const;
  Word then(const Word& right) const;  // this * right

 private:
  std::vector<Letter> letters_;
};

// [a, b] = a b a^{-1} b^{-1}.
Word commutator(const Letter& a, const Letter& b);

}  // namespace homeo
