#include "homeo/cli.hpp"

#include "homeo/certify.hpp"
#include "homeo/commutator.hpp"
#include "homeo/cover.hpp"
#include "homeo/error.hpp"
#include "homeo/fragmentation.hpp"
#include "homeo/germs.hpp"
#include "homeo/json_io.hpp"
#include "homeo/support.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

namespace homeo::cli {

const std::vector<SubcommandInfo>& dispatch_table() {
  static const std::vector<SubcommandInfo> table = {
      {"compose", "compose maps left to right as f1 o f2 o ...; --at evaluates",
       {"parse_value_file", "compose", "compose_all", "evaluate", "canonicalize"}},
      {"invert", "inverse of a map", {"parse_value_file", "invert"}},
      {"distance", "sup and complete distances between two maps",
       {"parse_value_file", "sup_distance", "complete_distance", "displacement"}},
      {"support", "support of a map as closed arcs", {"parse_value_file", "support"}},
      {"fragment", "factor a map over an open cover",
       {"parse_value_file", "validate_cover", "plan_cuts", "fragmentation_threshold", "fragment"}},
      {"anderson", "commutator factorization over disjoint balls",
       {"parse_value_file", "build_translator", "anderson_factor", "multi_anderson", "restrict_to_ball",
        "evaluate_self_similar", "commutator_locality_check"}},
      {"net", "greedy eps-net of a sampled space", {"build_epsilon_net", "check_net"}},
      {"cover", "greedy-colored eps-net cover",
       {"build_epsilon_net", "dual_graph", "greedy_color", "efficient_cover", "check_cover"}},
      {"scan", "degree stability over a decreasing eps list", {"degree_stability_scan"}},
      {"germ-straighten", "straighten a local contraction; basis lemma when applicable",
       {"parse_value_file", "is_local_contraction", "contraction_ratio", "straighten_contraction",
        "conjugate_contractions", "basis_to_contraction", "nests_basis"}},
      {"germ-decompose", "write g' as a product of conjugates of g^+-1",
       {"parse_value_file", "make_compatible_contraction", "decompose_via_contraction",
        "verify_conjugacy_certificate"}},
      {"certify", "word-length certificate for a small circle map",
       {"parse_value_file", "certify_small_word", "shrink_conjugator", "verify_certificate"}},
      {"verify", "re-check a certificate (exit 0 pass, 1 fail, 2 malformed)",
       {"parse_value_file", "verify_certificate", "verify_conjugacy_certificate"}},
  };
  return table;
}

namespace {

struct Options {
  std::vector<std::string> files;
  std::string at;
  std::string space;
  std::string eps;
  std::vector<std::string> balls;
  std::string grid;
  std::string out_path;
  int depth = 20;
};

[[noreturn]] void usage(const std::string& why) { fail(ErrorKind::UsageError, why); }

Rational parse_arg_rational(const std::string& s, const std::string& flag) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    usage(flag + ": '" + s + "' is not a rational p/q");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t k = s.find(sep, start);
    parts.push_back(s.substr(start, k - start));
    if (k == std::string::npos) return parts;
    start = k + 1;
  }
}

std::vector<Rational> eps_list(const Options& o) {
  if (o.eps.empty()) usage("--eps is required");
  std::vector<Rational> out;
  for (const std::string& s : split(o.eps, ',')) {
    Rational e = parse_arg_rational(s, "--eps");
    if (e <= 0) usage("--eps values must be positive");
    out.push_back(e);
  }
  return out;
}

Rational single_eps(const Options& o) {
  auto es = eps_list(o);
  if (es.size() != 1) usage("--eps takes a single value here");
  return es[0];
}

int grid_level(const Options& o) {
  if (o.grid.empty()) return 12;
  if (o.grid.rfind("2^-", 0) != 0) usage("--grid expects 2^-k");
  try {
    int k = std::stoi(o.grid.substr(3));
    if (k < 0 || k > 24) usage("--grid exponent must lie in 0..24");
    return k;
  } catch (const std::logic_error&) {
    usage("--grid expects 2^-k");
  }
}

SampledSpace parse_space(const Options& o) {
  if (o.space.empty()) usage("--space is required");
  auto colon = o.space.find(':');
  if (colon == std::string::npos) usage("--space expects circle:L, torus:a,b or matrix:path");
  std::string kind = o.space.substr(0, colon);
  std::string rest = o.space.substr(colon + 1);
  if (kind == "circle") {
    Rational len = parse_arg_rational(rest, "--space");
    if (len <= 0) usage("--space: length must be positive");
    return SampledSpace::circle(len, len / 1024);
  }
  if (kind == "torus") {
    auto ab = split(rest, ',');
    if (ab.size() != 2) usage("--space torus:a,b");
    Rational a = parse_arg_rational(ab[0], "--space");
    Rational b = parse_arg_rational(ab[1], "--space");
    if (a <= 0 || b <= 0) usage("--space: torus sides must be positive");
    return SampledSpace::torus(a, b, min(a, b) / 1024);
  }
  if (kind == "matrix") {
    Json j = read_json_file(rest);
    if (j.is_array()) {
      Json wrapped;
      wrapped["space"] = "matrix";
      wrapped["dist"] = j;
      j = wrapped;
    }
    return space_from_json(j);
  }
  usage("--space: unknown model '" + kind + "'");
}

OpenArc parse_ball(const std::string& s) {
  auto lh = split(s, ',');
  if (lh.size() != 2) usage("--ball expects lo,hi");
  OpenArc b{parse_arg_rational(lh[0], "--ball"), parse_arg_rational(lh[1], "--ball")};
  if (!(b.lo < b.hi)) usage("--ball: lo must be below hi");
  return b;
}

template <class T>
T load(const std::string& path, const char* what) {
  Value v = parse_value_file(path);
  if (auto* x = std::get_if<T>(&v)) return std::move(*x);
  fail(ErrorKind::ParseError, path + ": expected " + what);
}

void need_files(const Options& o, std::size_t n) {
  if (o.files.size() != n) usage("expected " + std::to_string(n) + " input file(s), got " + std::to_string(o.files.size()));
}

bool same_on(Domain d, const Rational& u, const Rational& v) { return d == Domain::Circle ? frac(u - v) == 0 : u == v; }

Json map_list(const std::vector<PLMap>& ms) {
  Json a = Json::array();
  for (const PLMap& m : ms) a.push_back(to_json(m));
  return a;
}

struct Outcome {
  Json report;
  int code = 0;
};

Outcome cmd_compose(const Options& o) {
  if (o.files.empty()) usage("compose needs at least one map");
  std::vector<PLMap> ms;
  for (const auto& f : o.files) ms.push_back(load<PLMap>(f, "a map"));
  PLMap h = compose_all(ms);
  if (o.at.empty()) return {to_json(h)};
  Rational x = parse_arg_rational(o.at, "--at");
  if (h.domain() == Domain::Interval && (x < 0 || x > 1)) usage("--at must lie in [0, 1]");
  Json j;
  j["x"] = to_json(x);
  j["value"] = to_json(h(x));
  return {j};
}

Outcome cmd_invert(const Options& o) {
  need_files(o, 1);
  return {to_json(invert(load<PLMap>(o.files[0], "a map")))};
}

Outcome cmd_distance(const Options& o) {
  need_files(o, 2);
  PLMap f = load<PLMap>(o.files[0], "a map");
  PLMap g = load<PLMap>(o.files[1], "a map");
  Json j;
  j["sup"] = to_json(sup_distance(f, g));
  j["complete"] = to_json(complete_distance(f, g));
  j["displacement"] = Json::array({to_json(displacement(f)), to_json(displacement(g))});
  return {j};
}

Outcome cmd_support(const Options& o) {
  need_files(o, 1);
  PLMap f = load<PLMap>(o.files[0], "a map");
  Json j;
  j["domain"] = std::string(to_string(f.domain()));
  j["support"] = to_json(support(f));
  return {j};
}

Outcome cmd_fragment(const Options& o) {
  need_files(o, 2);
  PLMap f = load<PLMap>(o.files[0], "a map");
  OpenCover1D cover = load<OpenCover1D>(o.files[1], "an open cover");
  auto delta = fragmentation_threshold(cover);
  auto pieces = fragment(f, cover);
  bool product = compose_all(pieces) == f;
  bool supports = true;
  for (std::size_t i = 0; i < pieces.size(); ++i) supports = supports && support(pieces[i]).inside(cover.elements[i]);
  Json j;
  j["threshold"] = delta ? to_json(*delta) : Json("infinity");
  j["displacement"] = to_json(displacement(f));
  j["pieces"] = map_list(pieces);
  j["product_ok"] = product;
  j["supports_ok"] = supports;
  return {j, product && supports ? 0 : 1};
}

Outcome cmd_anderson(const Options& o) {
  need_files(o, 1);
  if (o.balls.empty()) usage("anderson needs at least one --ball lo,hi");
  PLMap f = load<PLMap>(o.files[0], "a map");
  std::vector<OpenArc> balls;
  for (const auto& s : o.balls) balls.push_back(parse_ball(s));
  Letter a = PLMap::identity(f.domain());
  Letter b = PLMap::identity(f.domain());
  Json j;
  if (balls.size() == 1) {
    AndersonFactors af = anderson_factor(f, balls[0]);
    a = af.a;
    b = af.b;
    j["a"] = to_json(af.a);
    j["b"] = to_json(af.b);
  } else {
    MultiAnderson ma = multi_anderson(f, balls);
    a = ma.a;
    b = ma.b;
    j["a"] = to_json(ma.a);
    j["b"] = to_json(ma.b);
    Json parts = Json::array();
    for (const auto& p : ma.per_ball) parts.push_back(Json{{"a", to_json(p.a)}, {"b", to_json(p.b)}});
    j["per_ball"] = parts;
  }
  auto pts = test_points(f, grid_level(o));
  Word w = commutator(a, b);
  bool ok = std::all_of(pts.begin(), pts.end(), [&](const Rational& x) { return same_on(f.domain(), w(x), f(x)); });
  bool inside = support_of(a).inside(balls) && support_of(b).inside(balls);
  j["commutator_ok"] = ok;
  j["supports_ok"] = inside;
  j["test_points"] = pts.size();
  // Trivial locality instance: the extensions equal the factors themselves.
  if (balls.size() == 1) {
    try {
      j["locality_ok"] = commutator_locality_check(a, b, a, b, balls[0], balls[0], balls[0], f.domain(), pts);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PreconditionViolated) throw;
      j["locality_ok"] = nullptr;
    }
  }
  return {j, ok && inside ? 0 : 1};
}

Outcome cmd_net(const Options& o) {
  SampledSpace s = parse_space(o).for_epsilon(single_eps(o));
  NetCover net = build_epsilon_net(s, single_eps(o));
  NetCheck c = check_net(s, net);
  Json j = net_to_json(s, net);
  j["resolution"] = to_json(s.resolution());
  j["separated"] = c.separated;
  j["covering"] = c.covering;
  return {j, c.separated && c.covering ? 0 : 1};
}

Outcome cmd_cover(const Options& o) {
  Rational eps = single_eps(o);
  SampledSpace s = parse_space(o).for_epsilon(eps);
  ColoredCover cover = efficient_cover(s, eps);
  CoverCheck c = check_cover(s, cover);
  Json j = cover_to_json(s, cover);
  j["resolution"] = to_json(s.resolution());
  j["checks"] = Json{{"separated", c.net.separated}, {"covering", c.net.covering},
                     {"graph_matches", c.graph_matches}, {"proper", c.proper},
                     {"same_color_disjoint", c.same_color_disjoint}, {"color_bound", c.color_bound}};
  return {j, c.ok() ? 0 : 1};
}

Outcome cmd_scan(const Options& o) {
  ScanReport r = degree_stability_scan(parse_space(o), eps_list(o));
  bool ok = r.degree_bounded && std::all_of(r.rows.begin(), r.rows.end(), [](const ScanRow& x) { return x.checks_pass; });
  return {to_json(r), ok ? 0 : 1};
}

Outcome cmd_germ_straighten(const Options& o) {
  need_files(o, 1);
  GermMap g = load<GermMap>(o.files[0], "a germ");
  Json j;
  auto t = is_local_contraction(g);
  if (!t) fail(ErrorKind::NotAContraction, "g(x) < x fails at the first knot");
  SelfSimilarMap h = straighten_contraction(g, *t);
  auto xs = germ_grid(*t, o.depth);
  bool eq = std::all_of(xs.begin(), xs.end(), [&](const Rational& x) { return h(g(x)) == h(x) / 2; });
  j["window"] = to_json(*t);
  j["ratio"] = to_json(contraction_ratio(g, *t));
  j["straightening"] = to_json(h);
  j["equivariance_ok"] = eq;
  j["grid_points"] = xs.size();
  Json basis;
  try {
    BasisContraction bc = basis_to_contraction(g, o.depth);
    basis["b"] = to_json(bc.b);
    basis["composite"] = to_json(bc.composite);
    basis["nests_basis"] = nests_basis(bc.composite, o.depth);
    basis["composite_contracts"] = is_local_contraction(bc.composite).has_value();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotBasisContracting) throw;
    basis["skipped"] = e.what();
  }
  j["basis"] = basis;
  return {j, eq ? 0 : 1};
}

Outcome cmd_germ_decompose(const Options& o) {
  need_files(o, 2);
  GermMap gp = load<GermMap>(o.files[0], "a germ");
  GermMap g = load<GermMap>(o.files[1], "a germ");
  ConjugacyCertificate cert = decompose_via_contraction(gp, g);
  return {to_json(cert), verify_conjugacy_certificate(cert) ? 0 : 1};
}

Outcome cmd_certify(const Options& o) {
  need_files(o, 1);
  PLMap f = load<PLMap>(o.files[0], "a circle map");
  SampledSpace s = o.space.empty() ? SampledSpace::circle(1, ratio(1, 1024)) : parse_space(o);
  return {to_json(certify_small_word(f, s, single_eps(o)))};
}

Outcome cmd_verify(const Options& o) {
  need_files(o, 1);
  try {
    Value v = parse_value_file(o.files[0]);
    if (auto* fc = std::get_if<FactorizationCertificate>(&v)) {
      Verdict verdict = verify_certificate(*fc);
      return {to_json(verdict), verdict.ok() ? 0 : 1};
    }
    if (auto* cc = std::get_if<ConjugacyCertificate>(&v)) {
      bool ok = verify_conjugacy_certificate(*cc);
      Json j;
      j["checks"] = Json{{"product", ok}};
      j["ok"] = ok;
      j["paper_conjugates"] = cc->paper_conjugates();
      return {j, ok ? 0 : 1};
    }
    fail(ErrorKind::MalformedCertificate, o.files[0] + ": not a certificate");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedCertificate || e.kind() == ErrorKind::ParseError ||
        e.kind() == ErrorKind::InvariantViolation) {
      fail(ErrorKind::UsageError, std::string("malformed certificate: ") + e.what());
    }
    throw;
  }
}

using Handler = std::function<Outcome(const Options&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"compose", cmd_compose},           {"invert", cmd_invert},
      {"distance", cmd_distance},         {"support", cmd_support},
      {"fragment", cmd_fragment},         {"anderson", cmd_anderson},
      {"net", cmd_net},                   {"cover", cmd_cover},
      {"scan", cmd_scan},                 {"germ-straighten", cmd_germ_straighten},
      {"germ-decompose", cmd_germ_decompose}, {"certify", cmd_certify},
      {"verify", cmd_verify},
  };
  return h;
}

void add_flags(CLI::App* sub, Options& o, const std::string& name) {
  sub->add_option("files", o.files, "input value files");
  sub->add_option("--out", o.out_path, "write the report here instead of stdout");
  if (name == "compose") sub->add_option("--at", o.at, "evaluate the composite at x");
  if (name == "net" || name == "cover" || name == "scan" || name == "certify") {
    sub->add_option("--space", o.space, "circle:L | torus:a,b | matrix:path");
    sub->add_option("--eps", o.eps, "p/q[,p/q...]");
  }
  if (name == "anderson") {
    sub->add_option("--ball", o.balls, "open ball lo,hi (repeatable)");
    sub->add_option("--grid", o.grid, "check grid 2^-k");
  }
  if (name == "germ-straighten") sub->add_option("--depth", o.depth, "basis depth and grid shells")->check(CLI::Range(1, 40));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact PL homeomorphism toolkit", "homeo"};
  app.require_subcommand(1);
  Options opts;
  for (const auto& info : dispatch_table()) add_flags(app.add_subcommand(info.name, info.summary), opts, info.name);
  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      std::none_of(dispatch_table().begin(), dispatch_table().end(),
                   [&](const SubcommandInfo& s) { return s.name == args[0]; })) {
    err << "error: unknown subcommand '" << args[0] << "'\n";
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Outcome r = handlers().at(name)(opts);
    std::string text = render(r.report);
    if (opts.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(opts.out_path);
      if (!f) fail(ErrorKind::UsageError, "cannot write " + opts.out_path);
      f << text;
    }
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::UsageError ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return name == "verify" ? 2 : 1;
  }
}

}  // namespace homeo::cli
