#pragma once

#include <map>
#include <vector>

#include "polyra/abstraction.hpp"
#include "polyra/geometry.hpp"
#include "polyra/interval_set.hpp"
#include "polyra/training.hpp"

namespace polyra {

// Fixes every coordinate but one; the answer is the member range of the
// free coordinate.
struct RangeQuery {
  std::map<std::size_t, double> fixed;
  std::size_t free_index = 0;

  // Builds a query from fixed values; the free coordinate is the one left out.
  static RangeQuery with_fixed(std::size_t dim, std::map<std::size_t, double> fixed);
  void validate(std::size_t dim) const;
};

IntervalSet range_query(const Swarm& s, const RangeQuery& q);

struct Clustering {
  std::vector<Polytope> clusters;
  // Per training point, the indices of every cluster containing it.
  std::vector<std::vector<std::size_t>> assignment;
  std::size_t unassigned = 0;
  AbstractionReport abstraction;
};

// Fits a swarm, abstracts it, and reads each DNF term as one cluster.
Clustering cluster(const Dataset& data, const FitConfig& fit_cfg, const AbstractConfig& abs_cfg);

}  // namespace polyra
