#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "generators.hpp"

#include "homeo/cover.hpp"
#include "homeo/error.hpp"

#include <set>

using namespace homeo;
using namespace homeo::testing;

namespace {
Rational q(long p, long d) { return ratio(p, d); }

// Independent metric on coordinates, squared so the torus stays rational.
Rational oracle_d2(const SampledSpace& s, std::size_t i, std::size_t j) {
  auto a = s.coordinates(i);
  auto b = s.coordinates(j);
  if (s.kind() == ModelKind::Explicit) {
    Rational d = s.matrix()[i][j];
    return d * d;
  }
  Rational total = 0;
  std::vector<Rational> sides{s.length(), s.height()};
  for (std::size_t k = 0; k < a.size(); ++k) {
    Rational t = abs(a[k] - b[k]);
    t = min(t, sides[k] - t);
    total += t * t;
  }
  return total;
}

std::vector<std::size_t> oracle_net(const SampledSpace& s, const Rational& eps) {
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool far = true;
    for (std::size_t c : centers) far = far && oracle_d2(s, i, c) >= eps * eps;
    if (far) centers.push_back(i);
  }
  return centers;
}

std::vector<std::size_t> oracle_coloring(const SampledSpace& s, const std::vector<std::size_t>& centers,
                                         const Rational& eps) {
  std::vector<std::size_t> color(centers.size());
  for (std::size_t v = 0; v < centers.size(); ++v) {
    std::set<std::size_t> used;
    for (std::size_t u = 0; u < v; ++u) {
      if (oracle_d2(s, centers[u], centers[v]) < 4 * eps * eps) used.insert(color[u]);
    }
    std::size_t c = 0;
    while (used.count(c)) ++c;
    color[v] = c;
  }
  return color;
}

Graph graph_of(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  Graph g;
  g.adj.resize(n);
  for (auto [a, b] : edges) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  return g;
}

// Random points on a line give a valid explicit metric.
SampledSpace random_line_space(Rng& rng, std::size_t n) {
  auto xs = sorted_points(rng, n, 0, 1, 97);
  std::shuffle(xs.begin(), xs.end(), rng);
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = abs(xs[i] - xs[j]);
  return SampledSpace::explicit_metric(std::move(d));
}
}  // namespace

TEST_CASE("greedy net on the fine circle grid") {
  auto s = SampledSpace::circle(1, q(1, 10000));
  auto net = build_epsilon_net(s, q(3, 10));
  std::vector<Rational> xs;
  for (std::size_t c : net.centers) xs.push_back(s.coordinates(c)[0]);
  CHECK(xs == std::vector<Rational>{0, q(3, 10), q(3, 5)});
  CHECK(net.centers == oracle_net(s, q(3, 10)));
  CHECK(oracle_d2(s, net.centers[0], net.centers[1]) == q(9, 100));
  CHECK(oracle_d2(s, net.centers[1], net.centers[2]) == q(9, 100));
  CHECK(oracle_d2(s, net.centers[0], net.centers[2]) == q(4, 25));
  auto c = check_net(s, net);
  CHECK(c.separated);
  CHECK(c.covering);
  // dual graph: all distances < 3/5, so K_3
  Graph g = dual_graph(s, net);
  CHECK(g.edge_count() == 3);
  CHECK(g.max_degree() == 2);
}

TEST_CASE("degenerate nets") {
  auto s = SampledSpace::circle(1, q(1, 64));
  auto net = build_epsilon_net(s, 2);
  CHECK(net.centers == std::vector<std::size_t>{0});
  CHECK(dual_graph(s, net).edge_count() == 0);

  auto one = SampledSpace::explicit_metric({{0}});
  for (Rational e : {q(1, 100), Rational(1), Rational(50)}) CHECK(build_epsilon_net(one, e).centers.size() == 1);

  // two centers at exactly 2 eps: tangent balls do not meet
  auto two = SampledSpace::explicit_metric({{0, 2}, {2, 0}});
  auto n2 = build_epsilon_net(two, 1);
  CHECK(n2.centers.size() == 2);
  CHECK(dual_graph(two, n2).edge_count() == 0);
}

TEST_CASE("resolution and metric validation") {
  auto coarse = SampledSpace::circle(1, q(1, 10));
  CHECK_THROWS_WITH_AS(build_epsilon_net(coarse, q(1, 10)), doctest::Contains("ResolutionTooCoarse"), Error);
  CHECK(build_epsilon_net(coarse.for_epsilon(q(1, 10)), q(1, 10)).centers.size() == 10);
  CHECK_THROWS_AS(SampledSpace::explicit_metric({{0, 1}, {2, 0}}), Error);
  CHECK_THROWS_AS(SampledSpace::explicit_metric({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), Error);
  CHECK_THROWS_AS(SampledSpace::explicit_metric({{1}}), Error);
  try {
    SampledSpace::explicit_metric({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
    CHECK(std::string(e.what()).find("triangle") != std::string::npos);
  }
}

TEST_CASE("greedy coloring examples") {
  auto k3 = greedy_color(graph_of(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(std::set<std::size_t>(k3.begin(), k3.end()).size() == 3);
  auto path = greedy_color(graph_of(3, {{0, 1}, {1, 2}}));
  CHECK(path == std::vector<std::size_t>{0, 1, 0});
  CHECK(greedy_color(graph_of(1, {})) == std::vector<std::size_t>{0});

  auto s = SampledSpace::circle(1, q(1, 80));
  auto net = build_epsilon_net(s, q(1, 10));
  Graph g = dual_graph(s, net);
  auto colors = greedy_color(g);
  std::size_t m = *std::max_element(colors.begin(), colors.end()) + 1;
  CHECK(m <= 5);
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t u : g.adj[v]) CHECK(colors[u] != colors[v]);
}

TEST_CASE("efficient covers on the circle") {
  auto base = SampledSpace::circle(1, q(1, 1024));
  auto c3 = efficient_cover(base.for_epsilon(q(3, 10)), q(3, 10));
  CHECK(c3.colors == 3);
  for (const auto& cls : c3.classes()) CHECK(cls.size() == 1);
  CHECK(check_cover(base.for_epsilon(q(3, 10)), c3).ok());

  auto s1 = base.for_epsilon(q(1, 10));
  auto c1 = efficient_cover(s1, q(1, 10));
  CHECK(c1.colors <= 5);
  for (std::size_t i = 0; i < c1.net.centers.size(); ++i)
    for (std::size_t j = i + 1; j < c1.net.centers.size(); ++j)
      if (c1.color_of[i] == c1.color_of[j]) CHECK(oracle_d2(s1, c1.net.centers[i], c1.net.centers[j]) >= q(4, 100));
}

TEST_CASE("efficient cover on the flat torus matches the oracle") {
  auto s = SampledSpace::torus(1, 1, q(1, 40));
  Rational eps = q(1, 5);
  auto cover = efficient_cover(s, eps);
  CHECK(cover.net.centers == oracle_net(s, eps));
  CHECK(cover.color_of == oracle_coloring(s, cover.net.centers, eps));
  CHECK(cover.colors <= cover.graph.max_degree() + 1);
  for (std::size_t i = 0; i < cover.net.centers.size(); ++i)
    for (std::size_t j = i + 1; j < cover.net.centers.size(); ++j)
      if (cover.color_of[i] == cover.color_of[j])
        CHECK(oracle_d2(s, cover.net.centers[i], cover.net.centers[j]) >= 4 * eps * eps);
  // every sample covered, by brute force
  for (std::size_t p = 0; p < s.size(); p += 7) {
    bool hit = false;
    for (std::size_t c : cover.net.centers) hit = hit || oracle_d2(s, p, c) < eps * eps;
    CHECK(hit);
  }
}

TEST_CASE("degree stability scans") {
  auto circle = degree_stability_scan(SampledSpace::circle(1, q(1, 1024)),
                                      {q(3, 10), q(1, 10), q(3, 100), q(1, 100)});
  CHECK(circle.packing_bound == std::optional<std::size_t>(4));
  CHECK(circle.degree_constant);
  CHECK(circle.degree_bounded);
  for (const auto& r : circle.rows) {
    CHECK(r.max_degree <= 4);
    CHECK(r.colors <= 5);
    CHECK(r.checks_pass);
    CHECK(r.resolution <= r.epsilon / 8);
  }

  auto torus = degree_stability_scan(SampledSpace::torus(1, 1, q(1, 40)), {q(1, 5), q(1, 10), q(1, 20)});
  CHECK(torus.packing_bound == std::optional<std::size_t>(24));
  CHECK(torus.degree_constant);
  for (const auto& r : torus.rows) {
    CHECK(r.max_degree <= 24);
    CHECK(r.colors <= r.max_degree + 1);
  }

  auto point = degree_stability_scan(SampledSpace::explicit_metric({{0}}), {1, q(1, 2), q(1, 4)});
  for (const auto& r : point.rows) CHECK(r.max_degree == 0);

  CHECK_THROWS_AS(degree_stability_scan(SampledSpace::circle(1, q(1, 64)), {q(1, 10), q(3, 10)}), Error);
}

TEST_CASE("random explicit metrics agree with the brute-force oracles") {
  Rng rng(20261019);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 25;
    SampledSpace s = random_line_space(rng, n);
    Rational eps = random_rational(rng, q(1, 50), q(1, 2), 50);
    auto cover = efficient_cover(s, eps);
    CHECK(cover.net.centers == oracle_net(s, eps));
    CHECK(cover.color_of == oracle_coloring(s, cover.net.centers, eps));
    auto check = check_cover(s, cover);
    CHECK(check.ok());
    // dual graph edges are exactly the pairs at distance < 2 eps
    std::size_t edges = 0;
    for (std::size_t i = 0; i < cover.net.centers.size(); ++i)
      for (std::size_t j = i + 1; j < cover.net.centers.size(); ++j)
        edges += s.matrix()[cover.net.centers[i]][cover.net.centers[j]] < 2 * eps;
    CHECK(cover.graph.edge_count() == edges);
  }
}

TEST_CASE("circle nets agree with the oracle across eps") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Rational eps = random_rational(rng, q(1, 40), q(1, 2), 40);
    auto s = SampledSpace::circle(1, q(1, 64)).for_epsilon(eps);
    auto cover = efficient_cover(s, eps);
    CHECK(cover.net.centers == oracle_net(s, eps));
    CHECK(cover.color_of == oracle_coloring(s, cover.net.centers, eps));
    CHECK(cover.graph.max_degree() <= 4);
  }
}
