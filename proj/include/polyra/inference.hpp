#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polyra/geometry.hpp"

namespace polyra {

// Fraction of base shapes satisfied by x. 1 means "normal"; anomaly = 1 - value.
double score_mean(const Swarm& s, Point x);

struct ConditionalScore {
  double value = 1.0;
  // Set when x lies in no condition polytope; value is then 1.0 by convention.
  bool no_coverage = false;
};

// Among base shapes whose condition contains x, the fraction whose consequent
// also contains x.
ConditionalScore score_conditional(const Swarm& s, Point x);

class ClassifierBundle {
 public:
  explicit ClassifierBundle(std::vector<std::pair<std::string, Swarm>> classes);

  const std::vector<std::pair<std::string, Swarm>>& classes() const { return classes_; }
  std::size_t dim() const { return classes_.front().second.dim(); }

 private:
  std::vector<std::pair<std::string, Swarm>> classes_;
};

struct ClassOutcome {
  enum class Kind { Assigned, Reject, Overlap };
  Kind kind = Kind::Reject;
  std::vector<std::string> member_labels;

  // Only meaningful for Assigned.
  const std::string& label() const { return member_labels.front(); }
};

ClassOutcome classify(const ClassifierBundle& bundle, Point x);

// Never rejects: unassigned points go to the class with the highest
// conditional score, ties resolved by class order.
std::string classify_with_score_fallback(const ClassifierBundle& bundle, Point x);

}  // namespace polyra
