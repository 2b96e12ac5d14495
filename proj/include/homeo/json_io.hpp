#pragma once

// JSON interchange. Rationals are [numerator, denominator] integer pairs;
// integers too large for int64 are written as decimal strings.

#include "homeo/certify.hpp"
#include "homeo/cover.hpp"
#include "homeo/fragmentation.hpp"
#include "homeo/germs.hpp"
#include "homeo/letter.hpp"
#include "homeo/pl_map.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace homeo {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFactorizationSchema = "homeo.factorization/1";
inline constexpr const char* kConjugacySchema = "homeo.conjugacy/1";

Json to_json(const Rational& q);
Json to_json(const PLMap& f);
Json to_json(const PLFunction& f);
Json to_json(const GermMap& g);
Json to_json(const SelfSimilarMap& s);
Json to_json(const Letter& l);
Json to_json(const Word& w);
Json to_json(const SupportSet& s);
Json to_json(const OpenCover1D& c);
Json to_json(const FactorizationCertificate& c);
Json to_json(const ConjugacyCertificate& c);
Json to_json(const Verdict& v);
Json to_json(const ScanReport& r);
Json space_to_json(const SampledSpace& s);
Json net_to_json(const SampledSpace& s, const NetCover& net);
Json cover_to_json(const SampledSpace& s, const ColoredCover& cover);

// All parsers throw ParseError on shape problems and InvariantViolation
// (with a field path) when a value breaks its type's invariants.
Rational rational_from_json(const Json& j, const std::string& where = "value");
PLMap pl_map_from_json(const Json& j);
PLFunction pl_function_from_json(const Json& j, const std::string& where = "value");
GermMap germ_from_json(const Json& j, const std::string& where = "value");
SelfSimilarMap self_similar_from_json(const Json& j, const std::string& where = "value");
Letter letter_from_json(const Json& j, const std::string& where = "value");
Word word_from_json(const Json& j, const std::string& where = "value");
OpenCover1D cover1d_from_json(const Json& j);
SampledSpace space_from_json(const Json& j);
FactorizationCertificate factorization_from_json(const Json& j);
ConjugacyCertificate conjugacy_from_json(const Json& j);

using Value = std::variant<PLMap, GermMap, OpenCover1D, SampledSpace, FactorizationCertificate, ConjugacyCertificate>;

Value value_from_json(const Json& j);
Json value_to_json(const Value& v);
Value parse_value_file(const std::string& path);
Json read_json_file(const std::string& path);

// Indented JSON that keeps short arrays and objects on one line.
std::string render(const Json& j);

}  // namespace homeo
