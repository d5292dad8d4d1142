#include "polyra/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyra/error.hpp"

namespace polyra {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void require_dim(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

Halfspace::Halfspace(std::vector<double> normal, double bound)
    : normal_(std::move(normal)), bound_(bound) {
  if (normal_.empty()) throw DataError("halfspace needs dim >= 1");
  if (!std::isfinite(bound_) ||
      !std::all_of(normal_.begin(), normal_.end(), [](double v) { return std::isfinite(v); }))
    throw DataError("halfspace entries must be finite");
}

Polytope::Polytope(std::size_t dim, std::vector<Halfspace> constraints)
    : dim_(dim), constraints_(std::move(constraints)) {
  if (dim_ == 0) throw DataError("polytope needs dim >= 1");
  for (const auto& h : constraints_) require_dim(dim_, h.dim());
}

bool Polytope::contains(Point x) const {
  require_dim(dim_, x.size());
  for (const auto& h : constraints_)
    if (!h.contains(x)) return false;
  return true;
}

BaseShape::BaseShape(Polytope condition, Polytope consequent)
    : condition_(std::move(condition)), consequent_(std::move(consequent)) {
  require_dim(condition_.dim(), consequent_.dim());
}

bool BaseShape::contains(Point x) const {
  return !condition_.contains(x) || consequent_.contains(x);
}

BoundingBox bounds_of(std::span<const double> rows, std::size_t dim) {
  if (dim == 0 || rows.empty() || rows.size() % dim != 0)
    throw DataError("cannot take bounds of an empty point set");
  BoundingBox box(dim, FeatureRange{rows[0], rows[0]});
  for (std::size_t j = 0; j < dim; ++j) box[j] = {rows[j], rows[j]};
  for (std::size_t r = 0; r < rows.size(); r += dim) {
    for (std::size_t j = 0; j < dim; ++j) {
      box[j].lo = std::min(box[j].lo, rows[r + j]);
      box[j].hi = std::max(box[j].hi, rows[r + j]);
    }
  }
  return box;
}

BoundingBox widen(const BoundingBox& box, double fraction) {
  BoundingBox out = box;
  for (auto& r : out) {
    const double width = r.hi - r.lo;
    const double pad = width > 0.0 ? fraction * width : fraction;
    r.lo -= pad;
    r.hi += pad;
  }
  return out;
}

bool box_contains(const BoundingBox& box, Point x) {
  require_dim(box.size(), x.size());
  for (std::size_t j = 0; j < box.size(); ++j)
    if (x[j] < box[j].lo || x[j] > box[j].hi) return false;
  return true;
}

Swarm::Swarm(std::size_t dim, std::vector<BaseShape> base_shapes, BoundingBox data_bounds,
             std::optional<FitConfig> fit_config, std::optional<std::vector<double>> start_point)
    : dim_(dim),
      base_shapes_(std::move(base_shapes)),
      data_bounds_(std::move(data_bounds)),
      fit_config_(std::move(fit_config)),
      start_point_(std::move(start_point)) {
  if (dim_ == 0) throw DataError("swarm needs dim >= 1");
  for (const auto& f : base_shapes_) require_dim(dim_, f.dim());
  require_dim(dim_, data_bounds_.size());
  for (const auto& r : data_bounds_)
    if (!(r.lo <= r.hi)) throw DataError("data bounds need min <= max");
  if (start_point_) require_dim(dim_, start_point_->size());
}

bool Swarm::contains(Point x) const {
  require_dim(dim_, x.size());
  for (const auto& f : base_shapes_)
    if (!f.contains(x)) return false;
  return true;
}

bool polytope_contains(const Polytope& p, Point x) { return p.contains(x); }
bool base_shape_eval(const BaseShape& f, Point x) { return f.contains(x); }
bool swarm_contains(const Swarm& s, Point x) { return s.contains(x); }

Swarm swarm_merge(const Swarm& s1, const Swarm& s2) {
  require_dim(s1.dim(), s2.dim());
  std::vector<BaseShape> shapes = s1.base_shapes();
  shapes.insert(shapes.end(), s2.base_shapes().begin(), s2.base_shapes().end());

  BoundingBox bounds(s1.dim());
  for (std::size_t j = 0; j < s1.dim(); ++j)
    bounds[j] = {std::min(s1.data_bounds()[j].lo, s2.data_bounds()[j].lo),
                 std::max(s1.data_bounds()[j].hi, s2.data_bounds()[j].hi)};

  std::optional<FitConfig> config;
  if (s1.fit_config() == s2.fit_config()) config = s1.fit_config();

  // Keep a start point only if it is still a member of the conjunction.
  std::optional<std::vector<double>> start;
  for (const auto* s : {&s1, &s2}) {
    if (s->start_point() && s1.contains(*s->start_point()) && s2.contains(*s->start_point())) {
      start = s->start_point();
      break;
    }
  }
  return Swarm(s1.dim(), std::move(shapes), std::move(bounds), std::move(config),
               std::move(start));
}

}  // namespace polyra
