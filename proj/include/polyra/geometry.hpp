#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polyra/fit_config.hpp"

namespace polyra {

using Point = std::span<const double>;

double dot(std::span<const double> a, std::span<const double> b);

// One linear constraint normal·x <= bound. Boundary points are inside.
class Halfspace {
 public:
  Halfspace(std::vector<double> normal, double bound);

  std::size_t dim() const { return normal_.size(); }
  const std::vector<double>& normal() const { return normal_; }
  double bound() const { return bound_; }

  double project(Point x) const { return dot(normal_, x); }
  bool contains(Point x) const { return project(x) <= bound_; }

  friend bool operator==(const Halfspace&, const Halfspace&) = default;

 private:
  std::vector<double> normal_;
  double bound_;
};

// Conjunction of halfspaces. An empty constraint list is all of R^dim.
class Polytope {
 public:
  explicit Polytope(std::size_t dim, std::vector<Halfspace> constraints = {});

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& constraints() const { return constraints_; }
  std::size_t size() const { return constraints_.size(); }
  bool empty() const { return constraints_.empty(); }

  bool contains(Point x) const;

  friend bool operator==(const Polytope&, const Polytope&) = default;

 private:
  std::size_t dim_;
  std::vector<Halfspace> constraints_;
};

// x in condition => x in consequent.
class BaseShape {
 public:
  BaseShape(Polytope condition, Polytope consequent);

  std::size_t dim() const { return condition_.dim(); }
  const Polytope& condition() const { return condition_; }
  const Polytope& consequent() const { return consequent_; }

  bool contains(Point x) const;

  friend bool operator==(const BaseShape&, const BaseShape&) = default;

 private:
  Polytope condition_;
  Polytope consequent_;
};

struct FeatureRange {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

using BoundingBox = std::vector<FeatureRange>;

// Per-feature min/max of a row-major point matrix.
BoundingBox bounds_of(std::span<const double> rows, std::size_t dim);

// Widens every side by `fraction` of the feature's extent. Zero-width
// features are widened by `fraction` in absolute terms.
BoundingBox widen(const BoundingBox& box, double fraction);

bool box_contains(const BoundingBox& box, Point x);

// Conjunction of base shapes.
class Swarm {
 public:
  Swarm(std::size_t dim, std::vector<BaseShape> base_shapes, BoundingBox data_bounds,
        std::optional<FitConfig> fit_config = std::nullopt,
        std::optional<std::vector<double>> start_point = std::nullopt);

  std::size_t dim() const { return dim_; }
  const std::vector<BaseShape>& base_shapes() const { return base_shapes_; }
  std::size_t size() const { return base_shapes_.size(); }
  const BoundingBox& data_bounds() const { return data_bounds_; }
  const std::optional<FitConfig>& fit_config() const { return fit_config_; }
  // A known member point (the first training point for fitted swarms).
  const std::optional<std::vector<double>>& start_point() const { return start_point_; }

  bool contains(Point x) const;

  friend bool operator==(const Swarm&, const Swarm&) = default;

 private:
  std::size_t dim_;
  std::vector<BaseShape> base_shapes_;
  BoundingBox data_bounds_;
  std::optional<FitConfig> fit_config_;
  std::optional<std::vector<double>> start_point_;
};

void require_dim(std::size_t expected, std::size_t actual);

bool polytope_contains(const Polytope& p, Point x);
bool base_shape_eval(const BaseShape& f, Point x);
bool swarm_contains(const Swarm& s, Point x);

// Conjunction of two swarms: base shapes are concatenated, data bounds united.
Swarm swarm_merge(const Swarm& s1, const Swarm& s2);

}  // namespace polyra
