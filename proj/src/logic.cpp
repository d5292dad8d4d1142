#include "polyra/logic.hpp"

#include <string>

#include "polyra/error.hpp"

namespace polyra {

LogicNode::LogicNode(Kind kind, std::optional<Halfspace> leaf, std::vector<LogicNode> children)
    : kind_(kind), leaf_(std::move(leaf)), children_(std::move(children)) {}

LogicNode LogicNode::constant(bool value) {
  return LogicNode(value ? Kind::True : Kind::False, std::nullopt, {});
}

LogicNode LogicNode::leaf(Halfspace h) { return LogicNode(Kind::Leaf, std::move(h), {}); }

LogicNode LogicNode::negation(LogicNode child) {
  std::vector<LogicNode> children;
  children.push_back(std::move(child));
  return LogicNode(Kind::Not, std::nullopt, std::move(children));
}

LogicNode LogicNode::conjunction(std::vector<LogicNode> children) {
  return LogicNode(Kind::And, std::nullopt, std::move(children));
}

LogicNode LogicNode::disjunction(std::vector<LogicNode> children) {
  return LogicNode(Kind::Or, std::nullopt, std::move(children));
}

std::size_t LogicNode::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.node_count();
  return n;
}

DnfForm DnfForm::universal(std::size_t dim) { return DnfForm{dim, {Polytope(dim)}}; }

bool DnfForm::contains(Point x) const {
  require_dim(dim, x.size());
  for (const auto& t : terms)
    if (t.contains(x)) return true;
  return false;
}

std::size_t DnfForm::node_count() const {
  if (terms.empty()) return 1;
  std::size_t n = terms.size() > 1 ? 1 : 0;
  for (const auto& t : terms) n += t.size() > 1 ? t.size() + 1 : 1;
  return n;
}

namespace {

LogicNode polytope_tree(const Polytope& p) {
  std::vector<LogicNode> leaves;
  for (const auto& h : p.constraints()) leaves.push_back(LogicNode::leaf(h));
  return LogicNode::conjunction(std::move(leaves));
}

}  // namespace

LogicNode DnfForm::to_tree() const {
  std::vector<LogicNode> children;
  for (const auto& t : terms) children.push_back(polytope_tree(t));
  return simplify(LogicNode::disjunction(std::move(children)));
}

LogicNode swarm_to_tree(const Swarm& s) {
  std::vector<LogicNode> shapes;
  shapes.reserve(s.size());
  for (const auto& f : s.base_shapes()) {
    std::vector<LogicNode> parts;
    parts.push_back(LogicNode::negation(polytope_tree(f.condition())));
    parts.push_back(polytope_tree(f.consequent()));
    shapes.push_back(LogicNode::disjunction(std::move(parts)));
  }
  if (shapes.empty()) return LogicNode::constant(true);
  return LogicNode::conjunction(std::move(shapes));
}

namespace {

Halfspace flip(const Halfspace& h, double epsilon) {
  std::vector<double> normal = h.normal();
  for (auto& v : normal) v = -v;
  return Halfspace(std::move(normal), -h.bound() - epsilon);
}

// Negation normal form with constants folded and same-kind nesting flattened.
LogicNode normalize(const LogicNode& t, bool negated, double epsilon) {
  using Kind = LogicNode::Kind;
  switch (t.kind()) {
    case Kind::True:
    case Kind::False:
      return LogicNode::constant((t.kind() == Kind::True) != negated);
    case Kind::Leaf:
      return negated ? LogicNode::leaf(flip(t.halfspace(), epsilon)) : t;
    case Kind::Not:
      return normalize(t.children().front(), !negated, epsilon);
    case Kind::And:
    case Kind::Or: {
      // De Morgan: a negated And becomes an Or of negated children.
      const bool is_and = (t.kind() == Kind::And) != negated;
      const Kind self = is_and ? Kind::And : Kind::Or;
      std::vector<LogicNode> kept;
      for (const auto& c : t.children()) {
        LogicNode n = normalize(c, negated, epsilon);
        if (n.is_constant()) {
          const bool value = n.kind() == Kind::True;
          // TRUE absorbs an Or, FALSE absorbs an And; the identity is dropped.
          if (value != is_and) return LogicNode::constant(value);
          continue;
        }
        if (n.kind() == self) {
          for (const auto& g : n.children()) kept.push_back(g);
        } else {
          kept.push_back(std::move(n));
        }
      }
      if (kept.empty()) return LogicNode::constant(is_and);
      if (kept.size() == 1) return std::move(kept.front());
      return is_and ? LogicNode::conjunction(std::move(kept))
                    : LogicNode::disjunction(std::move(kept));
    }
  }
  return t;
}

bool simplified_below(const LogicNode& t, LogicNode::Kind parent) {
  using Kind = LogicNode::Kind;
  switch (t.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Not:
      return false;
    case Kind::Leaf:
      return true;
    case Kind::And:
    case Kind::Or:
      if (t.kind() == parent || t.children().size() < 2) return false;
      for (const auto& c : t.children())
        if (!simplified_below(c, t.kind())) return false;
      return true;
  }
  return false;
}

}  // namespace

LogicNode simplify(const LogicNode& t, double epsilon) {
  constexpr int kMaxPasses = 100;
  LogicNode current = normalize(t, false, epsilon);
  for (int pass = 1; pass < kMaxPasses; ++pass) {
    LogicNode next = normalize(current, false, epsilon);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

bool is_simplified(const LogicNode& t) {
  if (t.is_constant()) return true;
  return simplified_below(t, LogicNode::Kind::Not);
}

bool eval_tree(const LogicNode& t, Point x) {
  using Kind = LogicNode::Kind;
  switch (t.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Leaf:
      require_dim(t.halfspace().dim(), x.size());
      return t.halfspace().contains(x);
    case Kind::Not:
      return !eval_tree(t.children().front(), x);
    case Kind::And:
      for (const auto& c : t.children())
        if (!eval_tree(c, x)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : t.children())
        if (eval_tree(c, x)) return true;
      return false;
  }
  return false;
}

DnfForm distribute_to_dnf(const DnfForm& conjunct, const std::vector<Polytope>& new_or_term) {
  DnfForm out{conjunct.dim, {}};
  out.terms.reserve(conjunct.terms.size() * new_or_term.size());
  for (const auto& a : conjunct.terms) {
    for (const auto& b : new_or_term) {
      require_dim(conjunct.dim, b.dim());
      std::vector<Halfspace> merged = a.constraints();
      merged.insert(merged.end(), b.constraints().begin(), b.constraints().end());
      out.terms.emplace_back(conjunct.dim, std::move(merged));
    }
  }
  return out;
}

namespace {

Polytope term_of(const LogicNode& t, std::size_t dim) {
  using Kind = LogicNode::Kind;
  if (t.kind() == Kind::Leaf) return Polytope(dim, {t.halfspace()});
  if (t.kind() == Kind::And) {
    std::vector<Halfspace> hs;
    for (const auto& c : t.children()) {
      if (c.kind() != Kind::Leaf)
        throw DataError("abstraction expects And nodes whose children are all leaves");
      hs.push_back(c.halfspace());
    }
    return Polytope(dim, std::move(hs));
  }
  throw DataError("abstraction expects an And of Or-of-And-of-leaf groups");
}

std::vector<Polytope> group_of(const LogicNode& t, std::size_t dim) {
  if (t.kind() != LogicNode::Kind::Or) return {term_of(t, dim)};
  std::vector<Polytope> terms;
  for (const auto& c : t.children()) terms.push_back(term_of(c, dim));
  return terms;
}

}  // namespace

std::vector<std::vector<Polytope>> tree_to_groups(const LogicNode& t, std::size_t dim) {
  using Kind = LogicNode::Kind;
  if (t.kind() == Kind::True) return {};
  if (t.kind() == Kind::False) return {{}};
  if (t.kind() == Kind::Not) throw DataError("tree must be simplified before abstraction");
  std::vector<std::vector<Polytope>> groups;
  if (t.kind() == Kind::And) {
    for (const auto& c : t.children()) {
      if (c.kind() == Kind::Leaf) {
        groups.push_back({Polytope(dim, {c.halfspace()})});
      } else {
        groups.push_back(group_of(c, dim));
      }
    }
  } else {
    groups.push_back(group_of(t, dim));
  }
  return groups;
}

DnfForm abstract_iteratively(const LogicNode& t, std::size_t dim, const AbstractFn& abstract_fn,
                             const IterativeOptions& options) {
  const auto groups = tree_to_groups(t, dim);
  if (groups.empty()) return DnfForm::universal(dim);
  DnfForm q{dim, groups.front()};
  if (options.on_step) options.on_step(0, q.terms.size());
  for (std::size_t i = 1; i < groups.size(); ++i) {
    q = abstract_fn(distribute_to_dnf(q, groups[i]));
    if (options.on_step) options.on_step(i, q.terms.size());
    if (q.terms.size() > options.term_ceiling)
      throw NumericError("abstraction produced " + std::to_string(q.terms.size()) +
                         " terms at step " + std::to_string(i) + " (ceiling " +
                         std::to_string(options.term_ceiling) +
                         "); use a stronger abstraction setting such as a larger delta-v");
  }
  return q;
}

}  // namespace polyra
