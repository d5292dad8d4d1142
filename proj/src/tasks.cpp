#include "polyra/tasks.hpp"

#include <string>

#include "polyra/error.hpp"

namespace polyra {

RangeQuery RangeQuery::with_fixed(std::size_t dim, std::map<std::size_t, double> fixed) {
  RangeQuery q;
  q.fixed = std::move(fixed);
  if (q.fixed.size() + 1 != dim)
    throw UsageError("a range query fixes all but exactly one coordinate (" +
                     std::to_string(dim - 1) + " of " + std::to_string(dim) + ")");
  for (std::size_t j = 0; j < dim; ++j)
    if (!q.fixed.contains(j)) q.free_index = j;
  q.validate(dim);
  return q;
}

void RangeQuery::validate(std::size_t dim) const {
  if (free_index >= dim) throw UsageError("free coordinate index out of range");
  if (fixed.contains(free_index)) throw UsageError("the free coordinate cannot also be fixed");
  if (fixed.size() + 1 != dim)
    throw UsageError("a range query must fix every coordinate except the free one");
  for (const auto& [index, value] : fixed)
    if (index >= dim) throw UsageError("fixed coordinate " + std::to_string(index) + " out of range");
}

IntervalSet range_query(const Swarm& s, const RangeQuery& q) {
  q.validate(s.dim());
  return rangefinder(substitute(simplify(swarm_to_tree(s)), s.dim(), q.fixed));
}

Clustering cluster(const Dataset& data, const FitConfig& fit_cfg, const AbstractConfig& abs_cfg) {
  const Swarm swarm = fit(data, fit_cfg);
  Clustering out;
  out.abstraction = abstract_swarm(swarm, data, abs_cfg);
  out.clusters = out.abstraction.dnf.terms;
  out.assignment.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t c = 0; c < out.clusters.size(); ++c)
      if (out.clusters[c].contains(data.point(i))) out.assignment[i].push_back(c);
    if (out.assignment[i].empty()) ++out.unassigned;
  }
  return out;
}

}  // namespace polyra
