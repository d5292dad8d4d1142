#include "polyra/abstraction.hpp"

#include <cmath>
#include <vector>

#include "polyra/error.hpp"
#include "polyra/hit_and_run.hpp"
#include "polyra/random.hpp"

namespace polyra {
namespace {

void require_box(const BoundingBox& box) {
  if (box.empty()) throw DataError("bounding box has no dimensions");
  for (const auto& r : box)
    if (!(r.hi > r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
      throw DataError("bounding box is degenerate or unbounded");
}

double box_volume(const BoundingBox& box) {
  double v = 1.0;
  for (const auto& r : box) v *= r.hi - r.lo;
  return v;
}

}  // namespace

double estimate_volume(const Membership& member, const BoundingBox& box, std::size_t n,
                       std::uint64_t seed) {
  require_box(box);
  if (n == 0) throw UsageError("volume estimate needs at least one sample");
  Rng rng = make_stream(seed, 0);
  std::vector<double> x(box.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sample_box(box, rng, x);
    hits += member(x) ? 1 : 0;
  }
  return box_volume(box) * static_cast<double>(hits) / static_cast<double>(n);
}

double estimate_viou(const Membership& a, const Membership& b, const BoundingBox& box,
                     std::size_t n, std::uint64_t seed) {
  require_box(box);
  if (n == 0) throw UsageError("vIOU estimate needs at least one sample");
  Rng rng = make_stream(seed, 0);
  std::vector<double> x(box.size());
  std::size_t both = 0;
  std::size_t either = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sample_box(box, rng, x);
    const bool in_a = a(x);
    const bool in_b = b(x);
    both += (in_a && in_b) ? 1 : 0;
    either += (in_a || in_b) ? 1 : 0;
  }
  return either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
}

void AbstractConfig::validate() const {
  if (!(delta_v >= 0.0)) throw UsageError("delta_v must be >= 0");
  if (n_feasibility_samples == 0) throw UsageError("n_feasibility_samples must be positive");
  if (n_volume_samples == 0) throw UsageError("n_volume_samples must be positive");
  if (bounding_box) require_box(*bounding_box);
}

BoundingBox resolve_box(const AbstractConfig& cfg, const Dataset& training) {
  BoundingBox box = cfg.bounding_box ? *cfg.bounding_box
                                     : widen(bounds_of(training.values(), training.dim()), 0.1);
  require_dim(training.dim(), box.size());
  require_box(box);
  return box;
}

}  // namespace polyra
