#include <cmath>
#include <memory>

#include "abstraction_common.hpp"
#include "polyra/error.hpp"
#include "polyra/hit_and_run.hpp"
#include "polyra/linear_program.hpp"
#include "polyra/random.hpp"

namespace polyra {
namespace {

using detail::ConstraintCache;
using detail::Terms;

constexpr std::size_t kBurnIn = 50;

class LpAbstractor {
 public:
  LpAbstractor(const Dataset& training, const AbstractConfig& cfg)
      : cfg_(cfg),
        box_(resolve_box(cfg, training)),
        training_(std::vector<double>(training.values().begin(), training.values().end()),
                  training.dim()) {}

  DnfForm operator()(const DnfForm& input) {
    require_dim(box_.size(), input.dim);
    Terms terms = detail::terms_of(input);
    for (std::size_t pass = 0; pass < cfg_.max_merge_passes; ++pass) {
      prune_terms(terms);
      detail::drop_covered_terms(terms, training_);
      bool merged = false;
      while (merge_one(terms)) merged = true;
      if (!merged) break;
    }
    training_.retain(terms);
    return detail::dnf_of(input.dim, std::move(terms));
  }

 private:
  void prune_terms(Terms& terms) {
    Terms kept;
    kept.reserve(terms.size());
    for (auto& t : terms) {
      if (!is_feasible(t, box_)) continue;
      for (std::size_t i = 0; i < t.size();) {
        if (implied_by_rest(t, i)) {
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          ++i;
        }
      }
      kept.push_back(std::move(t));
    }
    terms = std::move(kept);
  }

  // t[i] is redundant when the other constraints (within the box) admit no
  // point that violates it by more than epsilon.
  bool implied_by_rest(const std::vector<Halfspace>& t, std::size_t i) {
    std::vector<Halfspace> probe;
    probe.reserve(t.size());
    for (std::size_t j = 0; j < t.size(); ++j)
      if (j != i) probe.push_back(t[j]);
    probe.push_back(detail::negated(t[i], cfg_.epsilon));
    return !is_feasible(probe, box_);
  }

  // Whether some point of `other` violates h.
  bool contradicted(const Halfspace& h, const std::vector<Halfspace>& other) {
    std::vector<Halfspace> probe = other;
    probe.push_back(detail::negated(h, cfg_.epsilon));
    return is_feasible(probe, box_);
  }

  // Fraction of hit-and-run points of the candidate that fall outside a ∪ b
  // stays within delta_v. Stops as soon as the budget is exceeded.
  bool hull_within_slack(const std::vector<Halfspace>& candidate, const Polytope& a,
                         const Polytope& b) {
    const auto ball = chebyshev_center(candidate, box_);
    if (!ball) return false;
    ConvexWalker walker(candidate, box_, ball->center, make_stream(cfg_.seed, ++walks_));
    for (std::size_t i = 0; i < kBurnIn; ++i) walker.step();
    const double budget = cfg_.delta_v * static_cast<double>(cfg_.n_volume_samples);
    std::size_t outside = 0;
    for (std::size_t i = 0; i < cfg_.n_volume_samples; ++i) {
      const Point x = walker.step();
      if (!a.contains(x) && !b.contains(x)) {
        ++outside;
        if (static_cast<double>(outside) > budget) return false;
      }
    }
    return true;
  }

  bool merge_one(Terms& terms) {
    const std::size_t dim = box_.size();
    for (std::size_t a = 0; a < terms.size(); ++a) {
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        std::vector<Halfspace> candidate;
        for (const auto& h : terms[a])
          if (!contradicted(h, terms[b])) detail::append_unique(candidate, h);
        for (const auto& h : terms[b])
          if (!contradicted(h, terms[a])) detail::append_unique(candidate, h);
        if (hull_within_slack(candidate, Polytope(dim, terms[a]), Polytope(dim, terms[b]))) {
          terms[a] = std::move(candidate);
          terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(b));
          return true;
        }
      }
    }
    return false;
  }

  AbstractConfig cfg_;
  BoundingBox box_;
  ConstraintCache training_;
  std::uint64_t walks_ = 0;
};

}  // namespace

DnfForm abstract_lp(const DnfForm& d, const Dataset& training, const AbstractConfig& cfg) {
  cfg.validate();
  if (cfg.backend != AbstractBackend::LP) throw UsageError("abstract_lp needs the LP backend");
  LpAbstractor abstractor(training, cfg);
  return abstractor(d);
}

AbstractFn make_lp_abstractor(const Dataset& training, const AbstractConfig& cfg) {
  auto state = std::make_shared<LpAbstractor>(training, cfg);
  return [state](const DnfForm& d) { return (*state)(d); };
}

AbstractFn make_abstractor(const Dataset& training, const AbstractConfig& cfg) {
  cfg.validate();
  return cfg.backend == AbstractBackend::LP ? make_lp_abstractor(training, cfg)
                                            : make_sampling_abstractor(training, cfg);
}

AbstractionReport abstract_tree(const LogicNode& t, std::size_t dim, const Dataset& training,
                                const AbstractConfig& cfg) {
  require_dim(dim, training.dim());
  AbstractionReport report{DnfForm{dim, {}}, t.node_count(), 0, {}};
  IterativeOptions options;
  options.term_ceiling = cfg.term_ceiling;
  options.on_step = [&](std::size_t, std::size_t terms) { report.term_counts.push_back(terms); };
  const AbstractFn step = make_abstractor(training, cfg);
  // A final pass also abstracts trees that consist of a single group.
  report.dnf = step(abstract_iteratively(simplify(t, cfg.epsilon), dim, step, options));
  report.complexity_after = report.dnf.node_count();
  return report;
}

AbstractionReport abstract_swarm(const Swarm& s, const Dataset& training,
                                 const AbstractConfig& cfg) {
  return abstract_tree(swarm_to_tree(s), s.dim(), training, cfg);
}

AbstractionReport abstract_dnf(const DnfForm& d, const Dataset& training,
                               const AbstractConfig& cfg) {
  require_dim(d.dim, training.dim());
  AbstractionReport report{DnfForm{d.dim, {}}, d.node_count(), 0, {}};
  report.dnf = make_abstractor(training, cfg)(d);
  report.term_counts.push_back(report.dnf.terms.size());
  report.complexity_after = report.dnf.node_count();
  return report;
}

}  // namespace polyra
