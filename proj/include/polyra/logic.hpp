#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "polyra/geometry.hpp"

namespace polyra {

// Shift applied when a negated halfspace m·x <= b is rewritten as
// -m·x <= -b - epsilon.
inline constexpr double kFlipEpsilon = 1e-6;

class LogicNode {
 public:
  enum class Kind { True, False, Leaf, Not, And, Or };

  static LogicNode constant(bool value);
  static LogicNode leaf(Halfspace h);
  static LogicNode negation(LogicNode child);
  static LogicNode conjunction(std::vector<LogicNode> children);
  static LogicNode disjunction(std::vector<LogicNode> children);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::True || kind_ == Kind::False; }
  const Halfspace& halfspace() const { return *leaf_; }
  const std::vector<LogicNode>& children() const { return children_; }

  // Total number of nodes, the complexity measure used for abstraction reports.
  std::size_t node_count() const;

  friend bool operator==(const LogicNode&, const LogicNode&) = default;

 private:
  LogicNode(Kind kind, std::optional<Halfspace> leaf, std::vector<LogicNode> children);

  Kind kind_;
  std::optional<Halfspace> leaf_;
  std::vector<LogicNode> children_;
};

// Union of polytopes. No terms means FALSE; an unconstrained term means TRUE.
struct DnfForm {
  std::size_t dim = 1;
  std::vector<Polytope> terms;

  static DnfForm universal(std::size_t dim);

  bool contains(Point x) const;
  // Node count of the equivalent Or/And/Leaf tree.
  std::size_t node_count() const;
  LogicNode to_tree() const;

  friend bool operator==(const DnfForm&, const DnfForm&) = default;
};

// And over base shapes of Or(Not(And(condition)), And(consequent)).
LogicNode swarm_to_tree(const Swarm& s);

// Pushes negations onto the leaves, folds constants and flattens nested
// And/Or until nothing changes.
LogicNode simplify(const LogicNode& t, double epsilon = kFlipEpsilon);

// True when t has no Not nodes, no constants below the root, no childless
// And/Or and no And directly under And (or Or under Or).
bool is_simplified(const LogicNode& t);

bool eval_tree(const LogicNode& t, Point x);

// Each existing term conjoined with each new polytope.
DnfForm distribute_to_dnf(const DnfForm& conjunct, const std::vector<Polytope>& new_or_term);

// Splits a simplified swarm tree into its top-level Or groups; each group is
// the list of polytopes it ORs together.
std::vector<std::vector<Polytope>> tree_to_groups(const LogicNode& t, std::size_t dim);

using AbstractFn = std::function<DnfForm(const DnfForm&)>;

struct IterativeOptions {
  std::size_t term_ceiling = 10000;
  // Called after every step with (step index, term count).
  std::function<void(std::size_t, std::size_t)> on_step;
};

// q_1 = group 1; q_i = abstract_fn(distribute_to_dnf(q_{i-1}, group i)).
DnfForm abstract_iteratively(const LogicNode& t, std::size_t dim, const AbstractFn& abstract_fn,
                             const IterativeOptions& options = {});

}  // namespace polyra
