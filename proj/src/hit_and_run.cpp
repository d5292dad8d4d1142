#include "polyra/hit_and_run.hpp"

#include <algorithm>
#include <cmath>

#include "polyra/error.hpp"

namespace polyra {

std::vector<double> random_unit_vector(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> d(dim);
  double norm = 0.0;
  while (norm < 1e-12) {
    for (auto& v : d) v = normal(rng);
    norm = std::sqrt(dot(d, d));
  }
  for (auto& v : d) v /= norm;
  return d;
}

void sample_box(const BoundingBox& box, Rng& rng, std::span<double> out) {
  require_dim(box.size(), out.size());
  for (std::size_t j = 0; j < box.size(); ++j)
    out[j] = std::uniform_real_distribution<double>(box[j].lo, box[j].hi)(rng);
}

ConvexWalker::ConvexWalker(std::vector<Halfspace> constraints, BoundingBox box,
                           std::vector<double> start, Rng rng)
    : constraints_(std::move(constraints)), box_(std::move(box)), x_(std::move(start)), rng_(rng) {
  require_dim(box_.size(), x_.size());
  for (const auto& r : box_)
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi))
      throw NumericError("hit-and-run needs a bounded region");
}

Point ConvexWalker::step() {
  const std::size_t dim = box_.size();
  const std::vector<double> d = random_unit_vector(rng_, dim);
  double lo = -INFINITY;
  double hi = INFINITY;
  auto clip = [&](double coef, double slack) {
    // coef * t <= slack
    if (coef > 1e-15) {
      hi = std::min(hi, slack / coef);
    } else if (coef < -1e-15) {
      lo = std::max(lo, slack / coef);
    }
  };
  for (const auto& h : constraints_) clip(h.project(d), h.bound() - h.project(x_));
  for (std::size_t j = 0; j < dim; ++j) {
    clip(d[j], box_[j].hi - x_[j]);
    clip(-d[j], x_[j] - box_[j].lo);
  }
  if (lo < hi) {
    const double t = std::uniform_real_distribution<double>(std::min(lo, 0.0), std::max(hi, 0.0))(rng_);
    for (std::size_t j = 0; j < dim; ++j) x_[j] += t * d[j];
  }
  return x_;
}

std::vector<double> hit_and_run_convex(const std::vector<Halfspace>& constraints,
                                       const BoundingBox& box, std::vector<double> start,
                                       std::size_t n, std::size_t burn_in, Rng& rng) {
  ConvexWalker walker(constraints, box, std::move(start), Rng(rng()));
  for (std::size_t i = 0; i < burn_in; ++i) walker.step();
  std::vector<double> out;
  out.reserve(n * box.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = walker.step();
    out.insert(out.end(), x.begin(), x.end());
  }
  return out;
}

}  // namespace polyra
