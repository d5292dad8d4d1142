#pragma once

#include <vector>

#include "polyra/geometry.hpp"
#include "polyra/random.hpp"

namespace polyra {

std::vector<double> random_unit_vector(Rng& rng, std::size_t dim);

// Uniform point in box.
void sample_box(const BoundingBox& box, Rng& rng, std::span<double> out);

// Hit-and-run chain over the convex region constraints ∩ box.
class ConvexWalker {
 public:
  // `start` must lie inside the region; box must be bounded.
  ConvexWalker(std::vector<Halfspace> constraints, BoundingBox box, std::vector<double> start,
               Rng rng);

  // Moves to a uniform point on a random chord through the current point.
  Point step();
  Point current() const { return x_; }

 private:
  std::vector<Halfspace> constraints_;
  BoundingBox box_;
  std::vector<double> x_;
  Rng rng_;
};

// n points (row-major) from a chain after `burn_in` discarded steps.
std::vector<double> hit_and_run_convex(const std::vector<Halfspace>& constraints,
                                       const BoundingBox& box, std::vector<double> start,
                                       std::size_t n, std::size_t burn_in, Rng& rng);

}  // namespace polyra
