#pragma once

#include "homeo/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace homeo {

enum class ModelKind { Circle, Torus, Explicit };

// A compact metric space together with a finite sample of it.
//
// Analytic models (circle of length L, flat torus a x b) are sampled on a
// square grid of spacing h with L/h (resp. a/h, b/h) integral, so every
// distance comparison reduces to integer arithmetic in grid units. The torus
// metric is irrational in general; only squared distances are ever formed.
class SampledSpace {
 public:
  static SampledSpace circle(const Rational& length, const Rational& resolution);
  static SampledSpace torus(const Rational& a, const Rational& b, const Rational& resolution);
  // Validates symmetry, zero diagonal, positivity and the triangle inequality.
  static SampledSpace explicit_metric(std::vector<std::vector<Rational>> dist);

  // Same model sampled at spacing <= eps/8. Explicit metrics are returned as is.
  SampledSpace for_epsilon(const Rational& eps) const;

  ModelKind kind() const { return kind_; }
  bool analytic() const { return kind_ != ModelKind::Explicit; }
  std::size_t size() const;
  // Grid spacing for analytic models, 0 for explicit ones.
  const Rational& resolution() const { return unit_; }
  const Rational& length() const { return a_; }        // circle length or torus width
  const Rational& height() const { return b_; }        // torus height
  const std::vector<std::vector<Rational>>& matrix() const { return dist_; }
  int dimension() const { return kind_ == ModelKind::Torus ? 2 : 1; }

  // Coordinates of sample i: {x} on the circle, {x, y} on the torus, {i} otherwise.
  std::vector<Rational> coordinates(std::size_t i) const;
  // Index of the sample point with the given coordinates, if it is one.
  std::optional<std::size_t> index_of(const std::vector<Rational>& coords) const;

  // d(i, j)^2, exact.
  Rational distance_squared(std::size_t i, std::size_t j) const;

  // Reusable strict-ball membership test d(i, j) < r.
  class Within {
   public:
    bool operator()(std::size_t i, std::size_t j) const;

   private:
    friend class SampledSpace;
    Within(const SampledSpace& s, const Rational& r);
    const SampledSpace* space_;
    Rational r_;
    std::int64_t cutoff_ = 0;  // grid units (circle) or squared grid units (torus)
  };
  Within within(const Rational& r) const { return Within(*this, r); }

 private:
  SampledSpace() = default;
  ModelKind kind_ = ModelKind::Explicit;
  Rational a_;
  Rational b_;
  Rational unit_;
  std::int64_t nx_ = 0;
  std::int64_t ny_ = 0;
  std::vector<std::vector<Rational>> dist_;
};

struct NetCover {
  Rational epsilon;
  std::vector<std::size_t> centers;  // sample indices, in admission order
};

struct Graph {
  std::vector<std::vector<std::size_t>> adj;
  std::size_t size() const { return adj.size(); }
  std::size_t max_degree() const;
  std::size_t edge_count() const;
};

struct ColoredCover {
  NetCover net;
  Graph graph;
  std::vector<std::size_t> color_of;  // 0-based, indexed like net.centers
  std::size_t colors = 0;
  // Center positions (into net.centers) grouped by color.
  std::vector<std::vector<std::size_t>> classes() const;
};

NetCover build_epsilon_net(const SampledSpace& space, const Rational& eps);
Graph dual_graph(const SampledSpace& space, const NetCover& net);
std::vector<std::size_t> greedy_color(const Graph& g);
ColoredCover efficient_cover(const SampledSpace& space, const Rational& eps);

struct NetCheck {
  bool separated = true;  // pairwise center distance >= eps
  bool covering = true;   // every sample within < eps of a center
};
NetCheck check_net(const SampledSpace& space, const NetCover& net);

struct CoverCheck {
  NetCheck net;
  bool graph_matches = true;        // edges exactly the pairs at distance < 2 eps
  bool proper = true;               // no edge inside a color class
  bool same_color_disjoint = true;  // same-colored centers at distance >= 2 eps
  bool color_bound = true;          // colors <= max degree + 1
  bool ok() const {
    return net.separated && net.covering && graph_matches && proper && same_color_disjoint && color_bound;
  }
};
CoverCheck check_cover(const SampledSpace& space, const ColoredCover& cover);

struct ScanRow {
  Rational epsilon;
  Rational resolution;
  std::size_t samples = 0;
  std::size_t centers = 0;
  std::size_t max_degree = 0;
  std::size_t colors = 0;
  std::optional<Rational> volume_ratio;  // vol B(2 eps) / vol B(eps/2), when rational
  bool checks_pass = false;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::optional<std::size_t> packing_bound;  // 5^dim - 1 on analytic models
  bool degree_bounded = true;
  bool degree_constant = true;
  bool colors_constant = true;
};

// Analytic models are resampled at eps/8 for each entry of the sweep.
ScanReport degree_stability_scan(const SampledSpace& space, const std::vector<Rational>& eps_list);

}  // namespace homeo
