#include "polyra/generator.hpp"

#include <algorithm>
#include <cmath>

#include "polyra/abstraction.hpp"
#include "polyra/error.hpp"
#include "polyra/hit_and_run.hpp"
#include "polyra/random.hpp"

namespace polyra {
namespace {

constexpr int kMembershipRetries = 20;

IntervalSet clip_range(const BoundingBox& box, Point origin, Point direction) {
  double lo = -INFINITY;
  double hi = INFINITY;
  for (std::size_t j = 0; j < box.size(); ++j) {
    const double d = direction[j];
    const double a = std::min(box[j].lo, origin[j]) - origin[j];
    const double b = std::max(box[j].hi, origin[j]) - origin[j];
    if (d > 0.0) {
      lo = std::max(lo, a / d);
      hi = std::min(hi, b / d);
    } else if (d < 0.0) {
      lo = std::max(lo, b / d);
      hi = std::min(hi, a / d);
    }
  }
  return IntervalSet({{std::min(lo, 0.0), std::max(hi, 0.0)}});
}

}  // namespace

RaySlicer::RaySlicer(const Swarm& s)
    // Negated halfspaces are flipped without the epsilon shift so that every
    // member point lies in some section.
    : swarm_(s), tree_(simplify(swarm_to_tree(s), 0.0)), clip_box_(widen(s.data_bounds(), 0.1)) {}

IntervalSet RaySlicer::sections(Point origin, Point direction) const {
  require_dim(swarm_.dim(), origin.size());
  require_dim(swarm_.dim(), direction.size());
  if (dot(direction, direction) == 0.0) throw DataError("ray direction must be non-zero");
  if (!swarm_.contains(origin)) throw DataError("ray origin is not a member of the swarm");
  return rangefinder(substitute_ray(tree_, origin, direction))
      .intersect(clip_range(clip_box_, origin, direction));
}

IntervalSet ray_sections(const Swarm& s, Point origin, Point direction) {
  return RaySlicer(s).sections(origin, direction);
}

std::vector<double> generate(const Swarm& s, const GenConfig& cfg) {
  std::vector<double> x;
  if (cfg.start_point) {
    require_dim(s.dim(), cfg.start_point->size());
    if (!s.contains(*cfg.start_point)) throw DataError("start point is not a member of the swarm");
    x = *cfg.start_point;
  } else if (s.start_point() && s.contains(*s.start_point())) {
    x = *s.start_point();
  } else {
    throw DataError("no valid start point: the model stores none that is a member; pass one");
  }

  const RaySlicer slicer(s);
  Rng rng = make_stream(cfg.seed, 0);
  const std::size_t dim = s.dim();
  std::vector<double> out;
  out.reserve(cfg.n_samples * dim);
  std::vector<double> candidate(dim);

  for (std::size_t step = 0; step < cfg.burn_in + cfg.n_samples; ++step) {
    const std::vector<double> d = random_unit_vector(rng, dim);
    const IntervalSet sections = slicer.sections(x, d);
    std::vector<double> weights;
    for (const auto& seg : sections.intervals()) {
      const double len = seg.hi - seg.lo;
      if (len <= 0.0 || !std::isfinite(len)) {
        weights.push_back(0.0);
      } else {
        weights.push_back(cfg.segment_weighting == SegmentWeighting::InverseLength ? 1.0 / len
                                                                                   : len);
      }
    }
    if (std::any_of(weights.begin(), weights.end(), [](double w) { return w > 0.0; })) {
      std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
      const Interval seg = sections.intervals()[pick(rng)];
      std::uniform_real_distribution<double> along(seg.lo, seg.hi);
      for (int attempt = 0; attempt < kMembershipRetries; ++attempt) {
        const double t = along(rng);
        for (std::size_t j = 0; j < dim; ++j) candidate[j] = x[j] + t * d[j];
        // Section endpoints are exact only up to rounding.
        if (s.contains(candidate)) {
          x = candidate;
          break;
        }
      }
    }
    if (step >= cfg.burn_in) out.insert(out.end(), x.begin(), x.end());
  }
  return out;
}

}  // namespace polyra
