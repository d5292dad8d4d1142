#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polyra/fit_config.hpp"
#include "polyra/geometry.hpp"

namespace polyra {

// Row-major point matrix with uniform dimension.
class Dataset {
 public:
  Dataset(std::vector<double> values, std::size_t dim);
  static Dataset from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return values_.size() / dim_; }
  Point point(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
  std::size_t dim_;
};

struct FitStats {
  std::size_t accepted_draws = 0;
  std::size_t base_shapes = 0;
  std::size_t rejections = 0;
  // Accepted draws whose mirrored side held too few points and was dropped.
  std::size_t one_sided_draws = 0;
};

// Upper consequent bound for one direction: the (1 - quantile) empirical
// quantile of `projections` (linear interpolation between order statistics),
// pushed outward by extend/2 of the trimmed range.
double compute_consequent_bound(std::vector<double> projections, double quantile, double extend);

// Draws config.n_models random condition polytopes (each paired with its
// mirror image) and fits consequent bounds over the training points each
// condition covers. With quantile == 0 and subsample == 0 every training
// point is a member of the result.
Swarm fit(const Dataset& data, const FitConfig& config, FitStats* stats = nullptr);

}  // namespace polyra
