#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyra/geometry.hpp"
#include "polyra/interval_set.hpp"
#include "polyra/logic.hpp"

namespace polyra {

enum class SegmentWeighting {
  InverseLength,       // each segment chosen with weight 1/length
  ProportionalLength,  // weight proportional to length (uniform over the chord set)
};

struct GenConfig {
  std::size_t n_samples = 1000;
  std::size_t burn_in = 100;
  std::uint64_t seed = 0;
  SegmentWeighting segment_weighting = SegmentWeighting::InverseLength;
  std::optional<std::vector<double>> start_point;
};

// Member sections of the line origin + t·direction, as t-intervals, clipped
// to the data bounding box widened by 10% (grown to include origin).
IntervalSet ray_sections(const Swarm& s, Point origin, Point direction);

// Reuses the swarm's logic tree across many ray queries.
class RaySlicer {
 public:
  explicit RaySlicer(const Swarm& s);
  IntervalSet sections(Point origin, Point direction) const;

 private:
  const Swarm& swarm_;
  LogicNode tree_;
  BoundingBox clip_box_;
};

// Non-convex hit-and-run. Returns cfg.n_samples points (row-major), every
// one a member of s.
std::vector<double> generate(const Swarm& s, const GenConfig& cfg);

}  // namespace polyra
