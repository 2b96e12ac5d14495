#include "homeo/json_io.hpp"

#include "homeo/error.hpp"

#include <fstream>
#include <sstream>

namespace homeo {

namespace {

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail(ErrorKind::ParseError, where + ": bad integer string");
    return z;
  }
  fail(ErrorKind::ParseError, where + ": expected an integer");
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::ParseError, where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::ParseError, where + ": missing field '" + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) fail(ErrorKind::ParseError, where + "." + key + ": expected an array");
  return a;
}

std::vector<Rational> rationals_from_json(const Json& a, const std::string& where) {
  if (!a.is_array()) fail(ErrorKind::ParseError, where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational_from_json(a[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Json rationals_json(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const Rational& x : xs) a.push_back(to_json(x));
  return a;
}

// Re-raise invariant failures with the field that caused them.
template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    std::string msg = e.what();
    std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    fail(e.kind(), where + ": " + msg);
  }
}

void check_increasing(const std::vector<Rational>& xs, const std::string& where) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i - 1] < xs[i])) {
      fail(ErrorKind::InvariantViolation, where + " not strictly increasing at index " + std::to_string(i));
    }
  }
}

Domain domain_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(ErrorKind::ParseError, where + ": domain must be a string");
  std::string s = j.get<std::string>();
  if (s == "interval") return Domain::Interval;
  if (s == "circle") return Domain::Circle;
  fail(ErrorKind::ParseError, where + ": unknown domain '" + s + "'");
}

Json arcs_json(const std::vector<OpenArc>& arcs) {
  Json a = Json::array();
  for (const OpenArc& arc : arcs) a.push_back(Json::array({to_json(arc.lo), to_json(arc.hi)}));
  return a;
}

std::vector<OpenArc> arcs_from_json(const Json& a, const std::string& where) {
  if (!a.is_array()) fail(ErrorKind::ParseError, where + ": expected a list of arcs");
  std::vector<OpenArc> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    if (!a[i].is_array() || a[i].size() != 2) fail(ErrorKind::ParseError, w + ": an arc is a pair of rationals");
    OpenArc arc{rational_from_json(a[i][0], w + "[0]"), rational_from_json(a[i][1], w + "[1]")};
    if (!(arc.lo < arc.hi)) fail(ErrorKind::InvariantViolation, w + ": arc endpoints out of order");
    out.push_back(arc);
  }
  return out;
}

SupportSet support_from_json(const Json& a, const std::string& where) {
  if (!a.is_array()) fail(ErrorKind::ParseError, where + ": expected a list of arcs");
  std::vector<ClosedArc> comps;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    if (!a[i].is_array() || a[i].size() != 2) fail(ErrorKind::ParseError, w + ": an arc is a pair of rationals");
    comps.push_back({rational_from_json(a[i][0], w + "[0]"), rational_from_json(a[i][1], w + "[1]")});
  }
  return SupportSet(Domain::Circle, std::move(comps));
}

std::size_t index_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(ErrorKind::ParseError, where + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

// JSON colors are 1-based, like the classes E_1..E_m.
std::size_t color_from_json(const Json& j, const std::string& where) {
  std::size_t c = index_from_json(j, where);
  if (c == 0) fail(ErrorKind::ParseError, where + ": colors are numbered from 1");
  return c - 1;
}

}  // namespace

Json to_json(const Rational& q) { return Json::array({integer_json(q.get_num()), integer_json(q.get_den())}); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::ParseError, where + ": a rational is [numerator, denominator]");
  Integer num = integer_from_json(j[0], where + "[0]");
  Integer den = integer_from_json(j[1], where + "[1]");
  if (den == 0) fail(ErrorKind::ParseError, where + ": zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Json to_json(const PLMap& f) {
  Json j;
  j["domain"] = std::string(to_string(f.domain()));
  j["knots"] = rationals_json(f.knots());
  j["values"] = rationals_json(f.values());
  return j;
}

PLMap pl_map_from_json(const Json& j) {
  const std::string where = "map";
  Domain d = domain_from_json(field(j, "domain", where), where + ".domain");
  auto ks = rationals_from_json(array_field(j, "knots", where), where + ".knots");
  auto vs = rationals_from_json(array_field(j, "values", where), where + ".values");
  if (ks.size() != vs.size()) fail(ErrorKind::InvariantViolation, where + ": knots and values differ in length");
  if (ks.empty()) fail(ErrorKind::InvariantViolation, where + ": no knots");
  check_increasing(ks, where + ".knots");
  check_increasing(vs, where + ".values");
  return located(where, [&] {
    if (d == Domain::Interval) return PLMap::interval(ks, vs);
    std::vector<std::pair<Rational, Rational>> pts;
    for (std::size_t i = 0; i < ks.size(); ++i) pts.emplace_back(ks[i], vs[i]);
    return PLMap::circle(std::move(pts));
  });
}

Json to_json(const PLFunction& f) {
  Json j;
  j["knots"] = rationals_json(f.knots());
  j["values"] = rationals_json(f.values());
  return j;
}

PLFunction pl_function_from_json(const Json& j, const std::string& where) {
  auto ks = rationals_from_json(array_field(j, "knots", where), where + ".knots");
  auto vs = rationals_from_json(array_field(j, "values", where), where + ".values");
  return located(where, [&] { return PLFunction(ks, vs); });
}

Json to_json(const GermMap& g) {
  Json j;
  j["kind"] = "germ";
  j["knots"] = rationals_json(g.rep().knots());
  j["values"] = rationals_json(g.rep().values());
  return j;
}

GermMap germ_from_json(const Json& j, const std::string& where) {
  PLFunction f = pl_function_from_json(j, where);
  return located(where, [&] { return GermMap(f); });
}

Json to_json(const SelfSimilarMap& s) {
  Json j;
  if (const auto* t = std::get_if<AndersonTower>(&s.variant())) {
    j["kind"] = "anderson";
    j["base"] = to_json(t->base());
    j["translator"] = to_json(t->translator());
    j["depth_bound"] = t->depth_bound();
  } else {
    const auto& e = std::get<EquivariantTower>(s.variant());
    j["kind"] = "equivariant";
    j["contraction"] = to_json(e.contraction());
    j["window"] = to_json(e.window());
    j["base"] = to_json(e.base());
    j["inverted"] = e.inverted();
    j["depth_bound"] = e.depth_bound();
  }
  return j;
}

SelfSimilarMap self_similar_from_json(const Json& j, const std::string& where) {
  std::string kind = field(j, "kind", where).get<std::string>();
  int depth = field(j, "depth_bound", where).get<int>();
  if (depth <= 0) fail(ErrorKind::InvariantViolation, where + ".depth_bound must be positive");
  if (kind == "anderson") {
    PLMap base = pl_map_from_json(field(j, "base", where));
    PLMap tr = pl_map_from_json(field(j, "translator", where));
    return located(where, [&] { return SelfSimilarMap(AndersonTower(base, tr, depth)); });
  }
  if (kind == "equivariant") {
    GermMap g = germ_from_json(field(j, "contraction", where), where + ".contraction");
    Rational w = rational_from_json(field(j, "window", where), where + ".window");
    PLFunction base = pl_function_from_json(field(j, "base", where), where + ".base");
    const Json& inv = field(j, "inverted", where);
    if (!inv.is_boolean()) fail(ErrorKind::ParseError, where + ".inverted must be a boolean");
    return located(where, [&] { return SelfSimilarMap(EquivariantTower(g, w, base, inv.get<bool>(), depth)); });
  }
  fail(ErrorKind::ParseError, where + ": unknown self-similar kind '" + kind + "'");
}

Json to_json(const Letter& l) {
  if (const auto* p = std::get_if<PLMap>(&l)) {
    Json j;
    j["kind"] = "pl";
    Json body = to_json(*p);
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
  }
  if (const auto* g = std::get_if<GermMap>(&l)) return to_json(*g);
  return to_json(std::get<SelfSimilarMap>(l));
}

Letter letter_from_json(const Json& j, const std::string& where) {
  const Json& k = field(j, "kind", where);
  if (!k.is_string()) fail(ErrorKind::ParseError, where + ".kind must be a string");
  std::string kind = k.get<std::string>();
  if (kind == "pl") return pl_map_from_json(j);
  if (kind == "germ") return germ_from_json(j, where);
  return self_similar_from_json(j, where);
}

Json to_json(const Word& w) {
  Json a = Json::array();
  for (const Letter& l : w.letters()) a.push_back(to_json(l));
  return a;
}

Word word_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::ParseError, where + ": a word is a list of letters");
  std::vector<Letter> ls;
  for (std::size_t i = 0; i < j.size(); ++i) ls.push_back(letter_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return Word(std::move(ls));
}

Json to_json(const SupportSet& s) {
  Json a = Json::array();
  for (const ClosedArc& c : s.components()) a.push_back(Json::array({to_json(c.lo), to_json(c.hi)}));
  return a;
}

Json to_json(const OpenCover1D& c) {
  Json j;
  j["domain"] = std::string(to_string(c.domain));
  Json els = Json::array();
  for (const auto& e : c.elements) els.push_back(arcs_json(e));
  j["elements"] = els;
  return j;
}

OpenCover1D cover1d_from_json(const Json& j) {
  const std::string where = "cover";
  OpenCover1D c{domain_from_json(field(j, "domain", where), where + ".domain"), {}};
  const Json& els = array_field(j, "elements", where);
  for (std::size_t i = 0; i < els.size(); ++i) {
    c.elements.push_back(arcs_from_json(els[i], where + ".elements[" + std::to_string(i) + "]"));
  }
  if (c.elements.empty()) fail(ErrorKind::InvariantViolation, where + ": at least one element required");
  located(where, [&] {
    validate(c);
    return 0;
  });
  return c;
}

Json space_to_json(const SampledSpace& s) {
  Json j;
  switch (s.kind()) {
    case ModelKind::Circle:
      j["space"] = "circle";
      j["length"] = to_json(s.length());
      j["resolution"] = to_json(s.resolution());
      break;
    case ModelKind::Torus:
      j["space"] = "torus";
      j["a"] = to_json(s.length());
      j["b"] = to_json(s.height());
      j["resolution"] = to_json(s.resolution());
      break;
    case ModelKind::Explicit: {
      j["space"] = "matrix";
      Json rows = Json::array();
      for (const auto& row : s.matrix()) rows.push_back(rationals_json(row));
      j["dist"] = rows;
      break;
    }
  }
  return j;
}

SampledSpace space_from_json(const Json& j) {
  const std::string where = "space";
  std::string kind = field(j, "space", where).get<std::string>();
  auto resolution = [&](const Rational& scale) {
    return j.contains("resolution") ? rational_from_json(j["resolution"], where + ".resolution") : scale / 1024;
  };
  if (kind == "circle") {
    Rational len = rational_from_json(field(j, "length", where), where + ".length");
    return located(where, [&] { return SampledSpace::circle(len, resolution(len)); });
  }
  if (kind == "torus") {
    Rational a = rational_from_json(field(j, "a", where), where + ".a");
    Rational b = rational_from_json(field(j, "b", where), where + ".b");
    return located(where, [&] { return SampledSpace::torus(a, b, resolution(min(a, b))); });
  }
  if (kind == "matrix") {
    const Json& rows = array_field(j, "dist", where);
    std::vector<std::vector<Rational>> dist;
    for (std::size_t i = 0; i < rows.size(); ++i) dist.push_back(rationals_from_json(rows[i], where + ".dist[" + std::to_string(i) + "]"));
    return located(where, [&] { return SampledSpace::explicit_metric(std::move(dist)); });
  }
  fail(ErrorKind::ParseError, where + ": unknown space kind '" + kind + "'");
}

Json net_to_json(const SampledSpace& s, const NetCover& net) {
  Json j;
  j["epsilon"] = to_json(net.epsilon);
  Json cs = Json::array();
  for (std::size_t c : net.centers) {
    auto xs = s.coordinates(c);
    if (s.kind() == ModelKind::Explicit) cs.push_back(c);
    else if (xs.size() == 1) cs.push_back(to_json(xs[0]));
    else cs.push_back(rationals_json(xs));
  }
  j["centers"] = cs;
  return j;
}

Json cover_to_json(const SampledSpace& s, const ColoredCover& cover) {
  Json j = net_to_json(s, cover.net);
  Json colors = Json::array();
  for (std::size_t c : cover.color_of) colors.push_back(c + 1);
  j["colors"] = colors;
  j["m"] = cover.colors;
  j["max_degree"] = cover.graph.max_degree();
  j["edges"] = cover.graph.edge_count();
  return j;
}

Json to_json(const ScanReport& r) {
  Json j;
  Json rows = Json::array();
  for (const ScanRow& row : r.rows) {
    Json o;
    o["epsilon"] = to_json(row.epsilon);
    o["resolution"] = to_json(row.resolution);
    o["samples"] = row.samples;
    o["centers"] = row.centers;
    o["max_degree"] = row.max_degree;
    o["colors"] = row.colors;
    o["volume_ratio"] = row.volume_ratio ? to_json(*row.volume_ratio) : Json(nullptr);
    o["checks_pass"] = row.checks_pass;
    rows.push_back(o);
  }
  j["rows"] = rows;
  j["packing_bound"] = r.packing_bound ? Json(*r.packing_bound) : Json(nullptr);
  j["degree_bounded"] = r.degree_bounded;
  j["degree_constant"] = r.degree_constant;
  j["colors_constant"] = r.colors_constant;
  j["covering_note"] = "covering checked on the sample grid; continuum radius is eps plus the grid spacing";
  return j;
}

Json to_json(const FactorizationCertificate& c) {
  Json j;
  j["schema"] = kFactorizationSchema;
  j["target"] = to_json(c.target);
  j["epsilon"] = to_json(c.epsilon);
  Json cover;
  cover["centers"] = rationals_json(c.centers);
  Json colors = Json::array();
  for (std::size_t k : c.colors) colors.push_back(k + 1);
  cover["colors"] = colors;
  cover["m"] = c.m;
  j["cover"] = cover;
  Json letters = Json::array();
  for (const auto& l : c.letters) {
    Json o;
    o["role"] = std::string(to_string(l.role));
    o["color"] = l.color + 1;
    o["support_region"] = to_json(l.support_region);
    o["map"] = to_json(l.map);
    letters.push_back(o);
  }
  j["letters"] = letters;
  j["ledger"] = c.ledger;
  j["total_bound"] = c.total_bound;
  return j;
}

FactorizationCertificate factorization_from_json(const Json& j) {
  const std::string where = "certificate";
  FactorizationCertificate c{pl_map_from_json(field(j, "target", where)),
                             rational_from_json(field(j, "epsilon", where), where + ".epsilon"),
                             {},
                             {},
                             0,
                             {},
                             {},
                             0};
  const Json& cover = field(j, "cover", where);
  c.centers = rationals_from_json(array_field(cover, "centers", where + ".cover"), where + ".cover.centers");
  const Json& colors = array_field(cover, "colors", where + ".cover");
  for (std::size_t i = 0; i < colors.size(); ++i) {
    c.colors.push_back(color_from_json(colors[i], where + ".cover.colors[" + std::to_string(i) + "]"));
  }
  c.m = index_from_json(field(cover, "m", where + ".cover"), where + ".cover.m");
  const Json& letters = array_field(j, "letters", where);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    std::string w = where + ".letters[" + std::to_string(i) + "]";
    const Json& o = letters[i];
    std::string role = field(o, "role", w).get<std::string>();
    LetterRole r;
    if (role == "ShrinkConjugator") r = LetterRole::ShrinkConjugator;
    else if (role == "CommutatorLetter") r = LetterRole::CommutatorLetter;
    else fail(ErrorKind::ParseError, w + ": unknown role '" + role + "'");
    c.letters.push_back({letter_from_json(field(o, "map", w), w + ".map"), r,
                         support_from_json(field(o, "support_region", w), w + ".support_region"),
                         color_from_json(field(o, "color", w), w + ".color")});
  }
  const Json& ledger = array_field(j, "ledger", where);
  for (std::size_t i = 0; i < ledger.size(); ++i) c.ledger.push_back(index_from_json(ledger[i], where + ".ledger"));
  c.total_bound = index_from_json(field(j, "total_bound", where), where + ".total_bound");
  return c;
}

Json to_json(const ConjugacyCertificate& c) {
  Json j;
  j["schema"] = kConjugacySchema;
  j["target"] = to_json(c.target);
  Json fs = Json::array();
  for (const auto& f : c.factors) {
    Json o;
    o["conjugator"] = to_json(f.conjugator);
    o["core"] = to_json(f.core);
    o["exponent"] = f.exponent;
    o["provenance"] = std::string(to_string(f.provenance));
    fs.push_back(o);
  }
  j["factors"] = fs;
  Json ledger = Json::array();
  for (const auto& e : c.ledger) {
    Json o;
    o["tag"] = std::string(to_string(e.tag));
    o["factor"] = e.factor;
    o["paper_conjugates"] = e.paper_conjugates;
    o["note"] = e.note;
    ledger.push_back(o);
  }
  j["ledger"] = ledger;
  j["paper_conjugates"] = c.paper_conjugates();
  j["verified_to"] = to_json(c.verified_to);
  j["scales"] = c.scales;
  return j;
}

ConjugacyCertificate conjugacy_from_json(const Json& j) {
  const std::string where = "certificate";
  ConjugacyCertificate c{germ_from_json(field(j, "target", where), where + ".target"), {}, {},
                         rational_from_json(field(j, "verified_to", where), where + ".verified_to"),
                         field(j, "scales", where).get<int>()};
  const Json& fs = array_field(j, "factors", where);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::string w = where + ".factors[" + std::to_string(i) + "]";
    int e = field(fs[i], "exponent", w).get<int>();
    c.factors.push_back({word_from_json(field(fs[i], "conjugator", w), w + ".conjugator"),
                         germ_from_json(field(fs[i], "core", w), w + ".core"), e,
                         parse_provenance(field(fs[i], "provenance", w).get<std::string>())});
  }
  const Json& ledger = array_field(j, "ledger", where);
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    std::string w = where + ".ledger[" + std::to_string(i) + "]";
    c.ledger.push_back({parse_provenance(field(ledger[i], "tag", w).get<std::string>()),
                        index_from_json(field(ledger[i], "factor", w), w + ".factor"),
                        field(ledger[i], "paper_conjugates", w).get<int>(),
                        field(ledger[i], "note", w).get<std::string>()});
  }
  return c;
}

Json to_json(const Verdict& v) {
  Json j;
  Json checks;
  for (const auto& [name, ok] : v.checks) checks[name] = ok;
  j["checks"] = checks;
  j["ok"] = v.ok();
  return j;
}

Value value_from_json(const Json& j) {
  try {
    if (!j.is_object()) fail(ErrorKind::ParseError, "top-level value must be an object");
    if (j.contains("schema")) {
      std::string s = j["schema"].get<std::string>();
      if (s == kFactorizationSchema) return factorization_from_json(j);
      if (s == kConjugacySchema) return conjugacy_from_json(j);
      fail(ErrorKind::ParseError, "unknown schema '" + s + "'");
    }
    if (j.contains("space")) return space_from_json(j);
    if (j.contains("elements")) return cover1d_from_json(j);
    if (j.contains("kind") && j["kind"] == "germ") return germ_from_json(j, "germ");
    if (j.contains("domain")) return pl_map_from_json(j);
    fail(ErrorKind::ParseError, "cannot tell what kind of value this is");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

Json value_to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SampledSpace>) return space_to_json(x);
        else return to_json(x);
      },
      v);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

Value parse_value_file(const std::string& path) {
  Json j = read_json_file(path);
  try {
    return value_from_json(j);
  } catch (const Error& e) {
    std::string msg = e.what();
    std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    fail(e.kind(), path + ": " + msg);
  }
}

namespace {

void render_into(const Json& j, int indent, std::string& out) {
  std::string flat = j.dump();
  if (flat.size() + static_cast<std::size_t>(indent) <= 100 || !j.is_structured() || j.empty()) {
    out += flat;
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  bool first = true;
  out += j.is_object() ? "{\n" : "[\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (j.is_object()) out += Json(it.key()).dump() + ": ";
    render_into(it.value(), indent + 2, out);
  }
  out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + (j.is_object() ? "}" : "]");
}

}  // namespace

std::string render(const Json& j) {
  std::string out;
  render_into(j, 0, out);
  return out + "\n";
}

}  // namespace homeo
