#pragma once

#include <optional>
#include <vector>

#include "polyra/geometry.hpp"

namespace polyra {

// maximize objective·x  subject to  rows·x <= rhs  and  lower <= x <= upper.
// All variable bounds must be finite.
struct LinearProgram {
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct LpSolution {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  std::vector<double> x;
  double value = 0.0;

  bool feasible() const { return status == Status::Optimal; }
};

// Dense two-phase simplex with Bland's rule.
LpSolution solve(const LinearProgram& lp);

// Whether the constraints have a common point inside box.
bool is_feasible(const std::vector<Halfspace>& constraints, const BoundingBox& box);

struct ChebyshevBall {
  std::vector<double> center;
  double radius = 0.0;
};

// Largest ball inside constraints ∩ box; nullopt when the region is empty.
std::optional<ChebyshevBall> chebyshev_center(const std::vector<Halfspace>& constraints,
                                              const BoundingBox& box);

}  // namespace polyra
