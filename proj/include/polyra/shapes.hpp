#pragma once

#include <string>
#include <vector>

#include "polyra/geometry.hpp"
#include "polyra/random.hpp"

namespace polyra {

// Analytic reference regions for vIOU checks and synthetic data.
class TruthShape {
 public:
  enum class Kind { Box, Diamond, Disc, Annulus };

  // box:lo0,hi0,lo1,hi1,...   diamond:cx,cy,r (|dx|+|dy| <= r)
  // disc:cx,cy,r              annulus:cx,cy,r_inner,r_outer
  static TruthShape parse(const std::string& text);
  static TruthShape box(BoundingBox extent);
  static TruthShape diamond(double cx, double cy, double radius);
  static TruthShape disc(double cx, double cy, double radius);
  static TruthShape annulus(double cx, double cy, double inner, double outer);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return extent_.size(); }
  bool contains(Point x) const;
  // Tight axis-aligned box around the shape.
  const BoundingBox& extent() const { return extent_; }
  double volume() const;

  // n uniform points (row-major) by rejection from the extent.
  std::vector<double> sample(std::size_t n, Rng& rng) const;

 private:
  TruthShape(Kind kind, std::vector<double> params, BoundingBox extent);

  Kind kind_;
  std::vector<double> params_;
  BoundingBox extent_;
};

}  // namespace polyra
