#include "polyra/abstraction.hpp"

#include <cmath>
#include <string>

#include "polyra/error.hpp"

namespace polyra {

IntervalSet rangefinder(const LogicNode& t) {
  using Kind = LogicNode::Kind;
  switch (t.kind()) {
    case Kind::True:
      return IntervalSet::everything();
    case Kind::False:
      return {};
    case Kind::Leaf: {
      const Halfspace& h = t.halfspace();
      if (h.dim() != 1)
        throw DataError("rangefinder needs 1D leaves, got a " + std::to_string(h.dim()) +
                        "D leaf");
      const double m = h.normal()[0];
      if (m > 0.0) return IntervalSet::at_most(h.bound() / m);
      if (m < 0.0) return IntervalSet::at_least(h.bound() / m);
      return h.bound() >= 0.0 ? IntervalSet::everything() : IntervalSet();
    }
    case Kind::Not:
      throw DataError("rangefinder needs a simplified tree (found a Not node)");
    case Kind::And: {
      IntervalSet acc = IntervalSet::everything();
      for (const auto& c : t.children()) {
        acc = acc.intersect(rangefinder(c));
        if (acc.empty()) break;
      }
      return acc;
    }
    case Kind::Or: {
      IntervalSet acc;
      for (const auto& c : t.children()) acc = acc.unite(rangefinder(c));
      return acc;
    }
  }
  return {};
}

namespace {

template <typename Reduce>
LogicNode map_leaves(const LogicNode& t, const Reduce& reduce) {
  using Kind = LogicNode::Kind;
  switch (t.kind()) {
    case Kind::True:
    case Kind::False:
      return t;
    case Kind::Leaf:
      return reduce(t.halfspace());
    case Kind::Not:
      return LogicNode::negation(map_leaves(t.children().front(), reduce));
    case Kind::And:
    case Kind::Or: {
      std::vector<LogicNode> children;
      children.reserve(t.children().size());
      for (const auto& c : t.children()) children.push_back(map_leaves(c, reduce));
      return t.kind() == Kind::And ? LogicNode::conjunction(std::move(children))
                                   : LogicNode::disjunction(std::move(children));
    }
  }
  return t;
}

LogicNode reduced_leaf(std::vector<double> coefficients, double residual) {
  bool any = false;
  for (double c : coefficients) any = any || std::abs(c) >= kCoefficientTolerance;
  if (!any) return LogicNode::constant(0.0 <= residual);
  return LogicNode::leaf(Halfspace(std::move(coefficients), residual));
}

}  // namespace

LogicNode substitute(const LogicNode& t, std::size_t dim,
                     const std::map<std::size_t, double>& fixed) {
  for (const auto& [index, value] : fixed) {
    if (index >= dim)
      throw DataError("cannot fix coordinate " + std::to_string(index) + " of a " +
                      std::to_string(dim) + "D model");
    if (!std::isfinite(value)) throw DataError("fixed coordinate values must be finite");
  }
  if (fixed.size() >= dim) throw DataError("substitution must leave at least one coordinate free");
  auto reduce = [&](const Halfspace& h) {
    require_dim(dim, h.dim());
    std::vector<double> free;
    double residual = h.bound();
    for (std::size_t j = 0; j < dim; ++j) {
      auto it = fixed.find(j);
      if (it == fixed.end()) {
        free.push_back(h.normal()[j]);
      } else {
        residual -= h.normal()[j] * it->second;
      }
    }
    return reduced_leaf(std::move(free), residual);
  };
  return simplify(map_leaves(t, reduce));
}

LogicNode substitute_ray(const LogicNode& t, Point origin, Point direction) {
  require_dim(origin.size(), direction.size());
  auto reduce = [&](const Halfspace& h) {
    return reduced_leaf({h.project(direction)}, h.bound() - h.project(origin));
  };
  return map_leaves(t, reduce);
}

}  // namespace polyra
