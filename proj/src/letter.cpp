#include "homeo/letter.hpp"

#include "homeo/error.hpp"

#include <algorithm>

namespace homeo {

Rational evaluate(const Letter& m, const Rational& x) {
  return std::visit([&](const auto& f) { return f(x); }, m);
}

Letter invert(const Letter& m) {
  return std::visit([](const auto& f) -> Letter { return f.inverse(); }, m);
}

SupportSet support_of(const Letter& m) {
  if (const auto* p = std::get_if<PLMap>(&m)) return support(*p);
  if (const auto* s = std::get_if<SelfSimilarMap>(&m)) {
    if (const auto* t = std::get_if<AndersonTower>(&s->variant())) return t->support_hull();
  }
  fail(ErrorKind::PreconditionViolated, "letter has no global support");
}

Rational Word::operator()(const Rational& x) const {
  Rational y = x;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) y = evaluate(*it, y);
  return y;
}

Word Word::inverse() const {
  std::vector<Letter> inv;
  inv.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.push_back(invert(*it));
  return Word(std::move(inv));
}

Word Word::then(const Word& right) const {
  std::vector<Letter> all = letters_;
  all.insert(all.end(), right.letters_.begin(), right.letters_.end());
  return Word(std::move(all));
}

Word commutator(const Letter& a, const Letter& b) {
  return Word({a, b, invert(a), invert(b)});
}

}  // namespace homeo
