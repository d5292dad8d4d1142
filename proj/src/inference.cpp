#include "polyra/inference.hpp"

#include <set>

#include "polyra/error.hpp"

namespace polyra {

double score_mean(const Swarm& s, Point x) {
  require_dim(s.dim(), x.size());
  if (s.size() == 0) throw DataError("score_mean needs a non-empty swarm");
  std::size_t satisfied = 0;
  for (const auto& f : s.base_shapes()) satisfied += f.contains(x) ? 1 : 0;
  return static_cast<double>(satisfied) / static_cast<double>(s.size());
}

ConditionalScore score_conditional(const Swarm& s, Point x) {
  require_dim(s.dim(), x.size());
  std::size_t covered = 0;
  std::size_t satisfied = 0;
  for (const auto& f : s.base_shapes()) {
    if (!f.condition().contains(x)) continue;
    ++covered;
    satisfied += f.consequent().contains(x) ? 1 : 0;
  }
  if (covered == 0) return {1.0, true};
  return {static_cast<double>(satisfied) / static_cast<double>(covered), false};
}

ClassifierBundle::ClassifierBundle(std::vector<std::pair<std::string, Swarm>> classes)
    : classes_(std::move(classes)) {
  if (classes_.empty()) throw DataError("classifier needs at least one class");
  std::set<std::string> seen;
  for (const auto& [label, swarm] : classes_) {
    if (!seen.insert(label).second) throw DataError("duplicate class label '" + label + "'");
    require_dim(classes_.front().second.dim(), swarm.dim());
  }
}

ClassOutcome classify(const ClassifierBundle& bundle, Point x) {
  require_dim(bundle.dim(), x.size());
  ClassOutcome out;
  for (const auto& [label, swarm] : bundle.classes())
    if (swarm.contains(x)) out.member_labels.push_back(label);
  if (out.member_labels.size() == 1)
    out.kind = ClassOutcome::Kind::Assigned;
  else if (out.member_labels.empty())
    out.kind = ClassOutcome::Kind::Reject;
  else
    out.kind = ClassOutcome::Kind::Overlap;
  return out;
}

std::string classify_with_score_fallback(const ClassifierBundle& bundle, Point x) {
  const ClassOutcome outcome = classify(bundle, x);
  if (outcome.kind == ClassOutcome::Kind::Assigned) return outcome.label();
  const std::string* best = nullptr;
  double best_score = -1.0;
  for (const auto& [label, swarm] : bundle.classes()) {
    const double score = score_conditional(swarm, x).value;
    if (score > best_score) {
      best_score = score;
      best = &label;
    }
  }
  return *best;
}

}  // namespace polyra
