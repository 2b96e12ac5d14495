#include "homeo/cover.hpp"

#include "homeo/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace homeo {

namespace {

std::int64_t to_i64(const Rational& q) {
  Integer n = q.get_num();
  if (q.get_den() != 1 || !n.fits_slong_p()) fail(ErrorKind::InvariantViolation, "grid size out of range");
  return n.get_si();
}

std::int64_t ceil_i64(const Rational& q) { return to_i64(ceil(q)); }

std::int64_t wrap_gap(std::int64_t d, std::int64_t n) {
  d = std::llabs(d);
  return std::min(d, n - d);
}

void require_positive(const Rational& x, const char* what) {
  if (x <= 0) fail(ErrorKind::PreconditionViolated, std::string(what) + " must be positive");
}

}  // namespace

SampledSpace SampledSpace::circle(const Rational& length, const Rational& resolution) {
  require_positive(length, "circle length");
  require_positive(resolution, "resolution");
  SampledSpace s;
  s.kind_ = ModelKind::Circle;
  s.a_ = length;
  s.nx_ = ceil_i64(length / resolution);
  s.unit_ = length / Rational(s.nx_);
  return s;
}

SampledSpace SampledSpace::torus(const Rational& a, const Rational& b, const Rational& resolution) {
  require_positive(a, "torus width");
  require_positive(b, "torus height");
  require_positive(resolution, "resolution");
  SampledSpace s;
  s.kind_ = ModelKind::Torus;
  s.a_ = a;
  s.b_ = b;
  Rational g = rational_gcd({a, b});
  s.unit_ = g / Rational(ceil_i64(g / resolution));
  s.nx_ = to_i64(a / s.unit_);
  s.ny_ = to_i64(b / s.unit_);
  return s;
}

SampledSpace SampledSpace::explicit_metric(std::vector<std::vector<Rational>> dist) {
  const std::size_t n = dist.size();
  if (n == 0) fail(ErrorKind::InvariantViolation, "distance matrix is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) fail(ErrorKind::InvariantViolation, "distance matrix row " + std::to_string(i) + " has wrong length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0) fail(ErrorKind::InvariantViolation, "nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (dist[i][j] != dist[j][i]) {
        fail(ErrorKind::InvariantViolation, "asymmetric entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (i != j && dist[i][j] <= 0) {
        fail(ErrorKind::InvariantViolation, "non-positive distance at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k]) {
          fail(ErrorKind::InvariantViolation, "triangle inequality fails for (" + std::to_string(i) + ", " +
                                                  std::to_string(j) + ", " + std::to_string(k) + ")");
        }
      }
    }
  }
  SampledSpace s;
  s.kind_ = ModelKind::Explicit;
  s.unit_ = 0;
  s.dist_ = std::move(dist);
  return s;
}

SampledSpace SampledSpace::for_epsilon(const Rational& eps) const {
  require_positive(eps, "epsilon");
  switch (kind_) {
    case ModelKind::Circle: return circle(a_, eps / 8);
    case ModelKind::Torus: return torus(a_, b_, eps / 8);
    case ModelKind::Explicit: break;
  }
  return *this;
}

std::size_t SampledSpace::size() const {
  switch (kind_) {
    case ModelKind::Circle: return static_cast<std::size_t>(nx_);
    case ModelKind::Torus: return static_cast<std::size_t>(nx_ * ny_);
    case ModelKind::Explicit: break;
  }
  return dist_.size();
}

std::vector<Rational> SampledSpace::coordinates(std::size_t i) const {
  auto k = static_cast<std::int64_t>(i);
  switch (kind_) {
    case ModelKind::Circle: return {unit_ * Rational(k)};
    case ModelKind::Torus: return {unit_ * Rational(k / ny_), unit_ * Rational(k % ny_)};
    case ModelKind::Explicit: break;
  }
  return {Rational(k)};
}

std::optional<std::size_t> SampledSpace::index_of(const std::vector<Rational>& coords) const {
  auto grid_index = [&](const Rational& x, std::int64_t n) -> std::optional<std::int64_t> {
    Rational u = x / unit_;
    if (u.get_den() != 1 || u < 0 || u >= Rational(n)) return std::nullopt;
    return u.get_num().get_si();
  };
  switch (kind_) {
    case ModelKind::Circle: {
      if (coords.size() != 1) return std::nullopt;
      auto i = grid_index(coords[0], nx_);
      if (!i) return std::nullopt;
      return static_cast<std::size_t>(*i);
    }
    case ModelKind::Torus: {
      if (coords.size() != 2) return std::nullopt;
      auto i = grid_index(coords[0], nx_);
      auto j = grid_index(coords[1], ny_);
      if (!i || !j) return std::nullopt;
      return static_cast<std::size_t>(*i * ny_ + *j);
    }
    case ModelKind::Explicit: break;
  }
  if (coords.size() != 1 || coords[0].get_den() != 1 || coords[0] < 0 || coords[0] >= Rational(dist_.size())) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(coords[0].get_num().get_ui());
}

Rational SampledSpace::distance_squared(std::size_t i, std::size_t j) const {
  auto si = static_cast<std::int64_t>(i);
  auto sj = static_cast<std::int64_t>(j);
  switch (kind_) {
    case ModelKind::Circle: {
      Rational d = unit_ * Rational(wrap_gap(si - sj, nx_));
      return d * d;
    }
    case ModelKind::Torus: {
      std::int64_t dx = wrap_gap(si / ny_ - sj / ny_, nx_);
      std::int64_t dy = wrap_gap(si % ny_ - sj % ny_, ny_);
      return unit_ * unit_ * Rational(dx * dx + dy * dy);
    }
    case ModelKind::Explicit: break;
  }
  return dist_[i][j] * dist_[i][j];
}

SampledSpace::Within::Within(const SampledSpace& s, const Rational& r) : space_(&s), r_(r) {
  if (s.kind_ == ModelKind::Circle) {
    cutoff_ = ceil_i64(r / s.unit_);
  } else if (s.kind_ == ModelKind::Torus) {
    Rational q = r / s.unit_;
    cutoff_ = ceil_i64(q * q);
  }
}

bool SampledSpace::Within::operator()(std::size_t i, std::size_t j) const {
  const SampledSpace& s = *space_;
  auto si = static_cast<std::int64_t>(i);
  auto sj = static_cast<std::int64_t>(j);
  switch (s.kind_) {
    case ModelKind::Circle: return wrap_gap(si - sj, s.nx_) < cutoff_;
    case ModelKind::Torus: {
      std::int64_t dx = wrap_gap(si / s.ny_ - sj / s.ny_, s.nx_);
      std::int64_t dy = wrap_gap(si % s.ny_ - sj % s.ny_, s.ny_);
      return dx * dx + dy * dy < cutoff_;
    }
    case ModelKind::Explicit: break;
  }
  return s.dist_[i][j] < r_;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& a : adj) best = std::max(best, a.size());
  return best;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adj) total += a.size();
  return total / 2;
}

std::vector<std::vector<std::size_t>> ColoredCover::classes() const {
  std::vector<std::vector<std::size_t>> out(colors);
  for (std::size_t i = 0; i < color_of.size(); ++i) out[color_of[i]].push_back(i);
  return out;
}

NetCover build_epsilon_net(const SampledSpace& space, const Rational& eps) {
  require_positive(eps, "epsilon");
  if (space.analytic() && space.resolution() > eps / 8) {
    fail(ErrorKind::ResolutionTooCoarse,
         "sample spacing " + to_string(space.resolution()) + " exceeds eps/8 = " + to_string(eps / 8));
  }
  auto near = space.within(eps);
  NetCover net{eps, {}};
  for (std::size_t p = 0; p < space.size(); ++p) {
    bool covered = std::any_of(net.centers.begin(), net.centers.end(), [&](std::size_t c) { return near(p, c); });
    if (!covered) net.centers.push_back(p);
  }
  return net;
}

Graph dual_graph(const SampledSpace& space, const NetCover& net) {
  auto meets = space.within(2 * net.epsilon);
  Graph g;
  g.adj.resize(net.centers.size());
  for (std::size_t i = 0; i < net.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < net.centers.size(); ++j) {
      if (meets(net.centers[i], net.centers[j])) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
    }
  }
  return g;
}

std::vector<std::size_t> greedy_color(const Graph& g) {
  constexpr std::size_t kUncolored = static_cast<std::size_t>(-1);
  std::vector<std::size_t> color(g.size(), kUncolored);
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::vector<bool> used(g.adj[v].size() + 1, false);
    for (std::size_t u : g.adj[v]) {
      if (color[u] != kUncolored && color[u] < used.size()) used[color[u]] = true;
    }
    color[v] = static_cast<std::size_t>(std::find(used.begin(), used.end(), false) - used.begin());
  }
  return color;
}

ColoredCover efficient_cover(const SampledSpace& space, const Rational& eps) {
  ColoredCover cover;
  cover.net = build_epsilon_net(space, eps);
  cover.graph = dual_graph(space, cover.net);
  cover.color_of = greedy_color(cover.graph);
  for (std::size_t c : cover.color_of) cover.colors = std::max(cover.colors, c + 1);
  return cover;
}

NetCheck check_net(const SampledSpace& space, const NetCover& net) {
  NetCheck out;
  auto near = space.within(net.epsilon);
  const auto& cs = net.centers;
  for (std::size_t i = 0; i < cs.size() && out.separated; ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      if (near(cs[i], cs[j])) {
        out.separated = false;
        break;
      }
    }
  }
  for (std::size_t p = 0; p < space.size(); ++p) {
    if (std::none_of(cs.begin(), cs.end(), [&](std::size_t c) { return near(p, c); })) {
      out.covering = false;
      break;
    }
  }
  return out;
}

CoverCheck check_cover(const SampledSpace& space, const ColoredCover& cover) {
  CoverCheck out;
  out.net = check_net(space, cover.net);
  const auto& cs = cover.net.centers;
  const std::size_t n = cs.size();
  if (cover.graph.size() != n || cover.color_of.size() != n) {
    out.graph_matches = out.proper = out.same_color_disjoint = out.color_bound = false;
    return out;
  }
  auto meets = space.within(2 * cover.net.epsilon);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nb = cover.graph.adj[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool edge = std::find(nb.begin(), nb.end(), j) != nb.end();
      bool close = meets(cs[i], cs[j]);
      if (edge != close) out.graph_matches = false;
      if (cover.color_of[i] == cover.color_of[j]) {
        if (edge) out.proper = false;
        if (close) out.same_color_disjoint = false;
      }
    }
  }
  std::size_t used = 0;
  for (std::size_t c : cover.color_of) used = std::max(used, c + 1);
  out.color_bound = used == cover.colors && cover.colors <= cover.graph.max_degree() + 1;
  return out;
}

namespace {

std::optional<Rational> volume_ratio(const SampledSpace& s, const Rational& eps) {
  switch (s.kind()) {
    case ModelKind::Circle: return min(4 * eps, s.length()) / min(eps, s.length());
    case ModelKind::Torus:
      // balls of radius 2 eps are euclidean disks as long as they do not wrap
      if (4 * eps <= min(s.length(), s.height())) return Rational(16);
      return std::nullopt;
    case ModelKind::Explicit: break;
  }
  return std::nullopt;
}

}  // namespace

ScanReport degree_stability_scan(const SampledSpace& space, const std::vector<Rational>& eps_list) {
  if (eps_list.empty()) fail(ErrorKind::PreconditionViolated, "empty epsilon list");
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) fail(ErrorKind::PreconditionViolated, "epsilon list must be decreasing");
  }
  ScanReport report;
  if (space.analytic()) report.packing_bound = space.dimension() == 2 ? 24 : 4;
  for (const Rational& eps : eps_list) {
    SampledSpace s = space.for_epsilon(eps);
    ColoredCover cover = efficient_cover(s, eps);
    ScanRow row;
    row.epsilon = eps;
    row.resolution = s.resolution();
    row.samples = s.size();
    row.centers = cover.net.centers.size();
    row.max_degree = cover.graph.max_degree();
    row.colors = cover.colors;
    row.volume_ratio = volume_ratio(s, eps);
    row.checks_pass = check_cover(s, cover).ok();
    if (report.packing_bound && row.max_degree > *report.packing_bound) report.degree_bounded = false;
    if (!report.rows.empty()) {
      if (row.max_degree != report.rows.front().max_degree) report.degree_constant = false;
      if (row.colors != report.rows.front().colors) report.colors_constant = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace homeo
