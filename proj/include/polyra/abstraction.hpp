#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "polyra/geometry.hpp"
#include "polyra/interval_set.hpp"
#include "polyra/logic.hpp"
#include "polyra/training.hpp"

namespace polyra {

// ---- exact one-dimensional abstraction ----------------------------------

// Interval algebra over a simplified tree whose leaves are all 1D:
// leaves become half-lines, And intersects, Or unites and merges.
IntervalSet rangefinder(const LogicNode& t);

// Coefficients whose magnitude is below this are treated as zero when a
// leaf is reduced to fewer coordinates.
inline constexpr double kCoefficientTolerance = 1e-12;

// Fixes the given coordinates to values. Leaves keep only the free
// coordinates (in increasing index order); leaves left without a free
// coefficient become constants. The result is simplified.
LogicNode substitute(const LogicNode& t, std::size_t dim,
                     const std::map<std::size_t, double>& fixed);

// Restricts t to the line origin + s·direction; leaves become 1D in s.
// Leaves are not re-simplified so constants may appear anywhere.
LogicNode substitute_ray(const LogicNode& t, Point origin, Point direction);

// ---- Monte-Carlo volume ---------------------------------------------------

using Membership = std::function<bool(Point)>;

// Box volume times the fraction of n uniform draws in the box that satisfy member.
double estimate_volume(const Membership& member, const BoundingBox& box, std::size_t n,
                       std::uint64_t seed);

// Vol(A ∩ B) / Vol(A ∪ B) estimated from n uniform draws in box. Returns 0
// when neither shape is hit.
double estimate_viou(const Membership& a, const Membership& b, const BoundingBox& box,
                     std::size_t n, std::uint64_t seed);

// ---- n-dimensional abstraction -----------------------------------------

enum class AbstractBackend { Sampling, LP };

struct AbstractConfig {
  double delta_v = 0.05;
  std::size_t n_feasibility_samples = 10000;
  std::size_t n_volume_samples = 10000;
  // Region used for feasibility and volume decisions. When absent the
  // training bounds widened by 10% per side are used.
  std::optional<BoundingBox> bounding_box;
  std::uint64_t seed = 0;
  AbstractBackend backend = AbstractBackend::Sampling;
  double epsilon = kFlipEpsilon;
  std::size_t term_ceiling = 10000;
  std::size_t max_merge_passes = 50;

  void validate() const;
};

BoundingBox resolve_box(const AbstractConfig& cfg, const Dataset& training);

// One abstraction pass to a fixed point: drop empty terms and redundant
// constraints, drop terms whose training points are covered by other terms,
// then merge term pairs whose hull grows the volume by at most delta_v.
DnfForm abstract_sampling(const DnfForm& d, const Dataset& training, const AbstractConfig& cfg);
DnfForm abstract_lp(const DnfForm& d, const Dataset& training, const AbstractConfig& cfg);

// Stateful abstraction step for abstract_iteratively. Reuses its random
// draws and cached constraint evaluations across calls.
AbstractFn make_abstractor(const Dataset& training, const AbstractConfig& cfg);

struct AbstractionReport {
  DnfForm dnf;
  std::size_t complexity_before = 0;  // nodes in the raw swarm tree
  std::size_t complexity_after = 0;   // nodes in the DNF tree
  std::vector<std::size_t> term_counts;  // after every iterative step

  double reduction_factor() const {
    return static_cast<double>(complexity_before) / static_cast<double>(complexity_after);
  }
};

// Simplification and iterative abstraction of an And-of-groups tree.
AbstractionReport abstract_tree(const LogicNode& t, std::size_t dim, const Dataset& training,
                                const AbstractConfig& cfg);

// Tree conversion, simplification and iterative abstraction of a swarm.
AbstractionReport abstract_swarm(const Swarm& s, const Dataset& training,
                                 const AbstractConfig& cfg);

// One more abstraction pass over an existing DNF.
AbstractionReport abstract_dnf(const DnfForm& d, const Dataset& training,
                               const AbstractConfig& cfg);

}  // namespace polyra
