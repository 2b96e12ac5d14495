#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"

#include "homeo/cli.hpp"
#include "homeo/error.hpp"
#include "homeo/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace homeo;
using namespace homeo::testing;
namespace fs = std::filesystem;

namespace {
Rational q(long p, long d) { return ratio(p, d); }

std::string data(const std::string& name) { return std::string(HOMEO_TEST_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "homeo_json_cli";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const Json& j) {
  std::ofstream f(p);
  f << render(j);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::UsageError;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const std::vector<std::string> kValidCorpus = {
    "identity.json",    "bump.json",         "bump_small.json",  "rotation_small.json", "rotation_fifth.json",
    "circle_wiggle.json", "cover_interval.json", "cover_circle.json", "germ_half.json",    "germ_kink.json",
    "space_path.json",  "space_circle.json", "space_torus.json", "big_rational.json"};
}  // namespace

TEST_CASE("rationals serialize as integer pairs") {
  CHECK(to_json(q(3, 10)).dump() == "[3,10]");
  CHECK(to_json(Rational(-2)).dump() == "[-2,1]");
  CHECK(rational_from_json(Json::parse("[6,20]")) == q(3, 10));
  CHECK(rational_from_json(Json::parse("[-1,-4]")) == q(1, 4));
  Rational huge = Rational(Integer("123456789012345678901234567890"), Integer(7));
  huge.canonicalize();
  Json j = to_json(huge);
  CHECK(j[0].is_string());
  CHECK(rational_from_json(j) == huge);
  CHECK(kind_of([] { rational_from_json(Json::parse("[1,0]")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { rational_from_json(Json::parse("0.5")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { rational_from_json(Json::parse("[1,2,3]")); }) == ErrorKind::ParseError);
}

TEST_CASE("corpus round trips") {
  for (const auto& name : kValidCorpus) {
    CAPTURE(name);
    Json raw = read_json_file(data(name));
    Value v = parse_value_file(data(name));
    Json back = value_to_json(v);
    CHECK(back == raw);
    CHECK(value_to_json(value_from_json(back)) == back);
    CHECK(Json::parse(render(back)) == back);
  }
  auto id = parse_value_file(data("identity.json"));
  REQUIRE(std::holds_alternative<PLMap>(id));
  CHECK(std::get<PLMap>(id) == PLMap::identity(Domain::Interval));
  auto rot = parse_value_file(data("rotation_small.json"));
  CHECK(std::get<PLMap>(rot) == PLMap::rotation(q(1, 100)));
  CHECK(std::holds_alternative<GermMap>(parse_value_file(data("germ_kink.json"))));
  CHECK(std::holds_alternative<OpenCover1D>(parse_value_file(data("cover_circle.json"))));
  CHECK(std::holds_alternative<SampledSpace>(parse_value_file(data("space_torus.json"))));
}

TEST_CASE("invalid files are rejected with a field diagnostic") {
  std::string mono = message_of([] { parse_value_file(data("bad_monotone.json")); });
  CHECK(kind_of([] { parse_value_file(data("bad_monotone.json")); }) == ErrorKind::InvariantViolation);
  CHECK(mono.find("values") != std::string::npos);
  CHECK(mono.find("index 2") != std::string::npos);
  CHECK(message_of([] { parse_value_file(data("bad_shape.json")); }).find("'values'") != std::string::npos);
  CHECK(kind_of([] { parse_value_file(data("bad_shape.json")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_value_file(data("bad_syntax.json")); }) == ErrorKind::ParseError);
  CHECK(message_of([] { parse_value_file(data("bad_syntax.json")); }).find("line") != std::string::npos);
  CHECK(kind_of([] { parse_value_file(data("bad_rational.json")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_value_file(data("bad_kind.json")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_value_file(data("missing.json")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_value_file(data("bad_cover_gap.json")); }) == ErrorKind::NoOverlap);
  std::string metric = message_of([] { parse_value_file(data("bad_metric.json")); });
  CHECK(metric.find("triangle") != std::string::npos);
  // the file name leads every diagnostic
  CHECK(mono.find("bad_monotone.json") != std::string::npos);
}

TEST_CASE("generated values round trip") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    PLMap f = random_map(rng, i % 2 ? Domain::Circle : Domain::Interval, 1 + rng() % 6);
    CHECK(pl_map_from_json(to_json(f)) == f);
    GermMap g = random_germ(rng);
    CHECK(germ_from_json(to_json(g)) == g);
  }
  auto cert = certify_small_word(PLMap::rotation(q(1, 100)), SampledSpace::circle(1, q(1, 64)), q(3, 10));
  Json cj = to_json(cert);
  CHECK(cj["schema"] == kFactorizationSchema);
  auto back = factorization_from_json(cj);
  CHECK(to_json(back) == cj);
  CHECK(verify_certificate(back).ok());

  auto conj = decompose_via_contraction(random_germ(rng), GermMap::scaling(q(1, 2)));
  Json kj = to_json(conj);
  auto kback = conjugacy_from_json(kj);
  CHECK(to_json(kback) == kj);
  CHECK(verify_conjugacy_certificate(kback));
  CHECK(kback.paper_conjugates() == conj.paper_conjugates());
}

TEST_CASE("unknown subcommands and bad flags are usage errors") {
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"compose"}).code == 2);
  CHECK(run({"scan", "--space", "circle:1"}).code == 2);
  CHECK(run({"scan", "--space", "sphere:1", "--eps", "1/10"}).code == 2);
  CHECK(run({"net", "--space", "circle:1", "--eps", "x"}).code == 2);
  CHECK(run({"anderson", data("bump.json"), "--ball", "1/2"}).code == 2);
  CHECK(run({"compose", data("bump.json"), "--nope"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  // operation errors exit 1
  Run r = run({"compose", data("bad_monotone.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("index 2") != std::string::npos);
  CHECK(r.out.empty());
  CHECK(run({"certify", data("rotation_fifth.json"), "--eps", "3/10"}).code == 1);
}

TEST_CASE("map subcommands") {
  Run c = run({"compose", data("bump.json"), data("bump.json"), "--at", "1/2"});
  REQUIRE(c.code == 0);
  Json j = Json::parse(c.out);
  // bump sends 1/2 to 5/8, and 5/8 lies on the segment [1/2, 3/4] -> [5/8, 3/4]
  CHECK(rational_from_json(j["value"]) == q(11, 16));

  Run inv = run({"invert", data("circle_wiggle.json")});
  REQUIRE(inv.code == 0);
  PLMap w = std::get<PLMap>(parse_value_file(data("circle_wiggle.json")));
  CHECK(compose(pl_map_from_json(Json::parse(inv.out)), w).is_identity());

  Run d = run({"distance", data("bump.json"), data("identity.json")});
  CHECK(rational_from_json(Json::parse(d.out)["sup"]) == q(1, 8));

  Run s = run({"support", data("bump.json")});
  CHECK(Json::parse(s.out)["support"] == Json::parse("[[[1,4],[3,4]]]"));

  Run fr = run({"fragment", data("bump_small.json"), data("cover_interval.json")});
  CHECK(fr.code == 0);
  Json fj = Json::parse(fr.out);
  CHECK(fj["product_ok"] == true);
  CHECK(fj["pieces"].size() == 2);
  CHECK(rational_from_json(fj["threshold"]) == q(1, 12));
  CHECK(run({"fragment", data("bump.json"), data("cover_interval.json")}).code == 1);

  Run a = run({"anderson", data("bump.json"), "--ball", "1/8,7/8", "--grid", "2^-10"});
  CHECK(a.code == 0);
  Json aj = Json::parse(a.out);
  CHECK(aj["commutator_ok"] == true);
  CHECK(aj["locality_ok"] == true);
  CHECK(aj["test_points"] == 1025);
  Run a2 = run({"anderson", data("circle_wiggle.json"), "--ball", "-1/2,1/2", "--ball", "1/2,3/2"});
  CHECK(a2.code == 1);  // the wiggle's support is the whole circle
}

TEST_CASE("cover subcommands") {
  Run n = run({"net", "--space", "circle:1", "--eps", "3/10"});
  REQUIRE(n.code == 0);
  Json nj = Json::parse(n.out);
  CHECK(nj["centers"].size() == 3);
  CHECK(nj["separated"] == true);

  Run c = run({"cover", "--space", "torus:1,1", "--eps", "1/5"});
  REQUIRE(c.code == 0);
  Json cj = Json::parse(c.out);
  CHECK(cj["checks"]["proper"] == true);
  std::size_t m = cj["m"].get<std::size_t>();
  CHECK(m <= cj["max_degree"].get<std::size_t>() + 1);
  for (const auto& col : cj["colors"]) CHECK((col.get<std::size_t>() >= 1 && col.get<std::size_t>() <= m));

  Run s = run({"scan", "--space", "circle:1", "--eps", "3/10,1/10,3/100"});
  REQUIRE(s.code == 0);
  Json sj = Json::parse(s.out);
  REQUIRE(sj["rows"].size() == 3);
  std::set<std::size_t> degrees;
  for (const auto& row : sj["rows"]) degrees.insert(row["max_degree"].get<std::size_t>());
  CHECK(degrees.size() == 1);
  CHECK(*degrees.begin() <= 4);
  CHECK(sj["degree_constant"] == true);

  Run mtx = run({"net", "--space", "matrix:" + data("space_path.json"), "--eps", "3/2"});
  CHECK(mtx.code == 0);
  CHECK(Json::parse(mtx.out)["centers"] == Json::parse("[0,2]"));
  CHECK(run({"net", "--space", "matrix:" + data("bad_metric.json"), "--eps", "1"}).code == 1);
}

TEST_CASE("germ subcommands") {
  Run s = run({"germ-straighten", data("germ_kink.json")});
  REQUIRE(s.code == 0);
  Json sj = Json::parse(s.out);
  CHECK(sj["equivariance_ok"] == true);
  CHECK(sj["basis"]["nests_basis"] == true);
  CHECK(run({"germ-straighten", data("identity.json")}).code == 1);

  auto cert_path = scratch("conj.json");
  Run d = run({"germ-decompose", data("germ_kink.json"), data("germ_half.json"), "--out", cert_path.string()});
  REQUIRE(d.code == 0);
  CHECK(d.out.empty());
  Run v = run({"verify", cert_path.string()});
  CHECK(v.code == 0);
  CHECK(Json::parse(v.out)["paper_conjugates"] == 8);
}

TEST_CASE("certify and verify exit codes") {
  auto good = scratch("cert.json");
  Run c = run({"certify", data("rotation_small.json"), "--space", "circle:1", "--eps", "3/10", "--out", good.string()});
  REQUIRE(c.code == 0);
  Run v = run({"verify", good.string()});
  CHECK(v.code == 0);
  CHECK(Json::parse(v.out)["ok"] == true);

  // tampered: a shrink conjugator replaced by the identity
  Json j = read_json_file(good.string());
  j["letters"][0]["map"] = Json::parse(R"({"kind":"pl","domain":"circle","knots":[[0,1]],"values":[[0,1]]})");
  auto bad = scratch("tampered.json");
  write(bad, j);
  Run t = run({"verify", bad.string()});
  CHECK(t.code == 1);
  CHECK(Json::parse(t.out)["checks"]["product"] == false);

  // malformed: color out of range, missing fields, not a certificate
  Json k = read_json_file(good.string());
  k["cover"]["colors"][0] = 9;
  auto malformed = scratch("malformed.json");
  write(malformed, k);
  CHECK(run({"verify", malformed.string()}).code == 2);
  Json e = read_json_file(good.string());
  e.erase("letters");
  write(malformed, e);
  CHECK(run({"verify", malformed.string()}).code == 2);
  CHECK(run({"verify", data("bump.json")}).code == 2);
  CHECK(run({"verify", data("bad_syntax.json")}).code == 2);
}

TEST_CASE("reports are deterministic") {
  std::vector<std::vector<std::string>> invocations = {
      {"scan", "--space", "torus:1,1", "--eps", "1/5,1/10"},
      {"certify", data("circle_wiggle.json"), "--eps", "3/10"},
      {"germ-decompose", data("germ_kink.json"), data("germ_half.json")},
      {"anderson", data("bump.json"), "--ball", "1/8,7/8"},
  };
  for (const auto& args : invocations) {
    Run a = run(args);
    Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("every module operation is reachable from a subcommand") {
  const std::set<std::string> operations = {
      "evaluate",          "compose",          "invert",          "sup_distance",
      "complete_distance", "support",          "fragmentation_threshold", "fragment",
      "build_translator",  "anderson_factor",  "multi_anderson",  "commutator_locality_check",
      "build_epsilon_net", "dual_graph",       "greedy_color",    "efficient_cover",
      "degree_stability_scan", "is_local_contraction", "straighten_contraction", "conjugate_contractions",
      "basis_to_contraction", "make_compatible_contraction", "decompose_via_contraction", "shrink_conjugator",
      "certify_small_word", "verify_certificate", "parse_value_file"};
  std::set<std::string> reached;
  std::set<std::string> names;
  for (const auto& info : cli::dispatch_table()) {
    names.insert(info.name);
    reached.insert(info.operations.begin(), info.operations.end());
  }
  for (const auto& op : operations) {
    CAPTURE(op);
    CHECK(reached.count(op) == 1);
  }
  CHECK(names == std::set<std::string>{"compose", "invert", "distance", "support", "fragment", "anderson", "net",
                                       "cover", "scan", "germ-straighten", "germ-decompose", "certify", "verify"});
  // every listed subcommand is wired to a handler
  for (const auto& name : names) {
    CAPTURE(name);
    CHECK(run({name, "--help"}).code == 0);
  }
}
