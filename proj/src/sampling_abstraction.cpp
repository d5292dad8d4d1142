#include <algorithm>
#include <memory>

#include "abstraction_common.hpp"
#include "polyra/error.hpp"
#include "polyra/hit_and_run.hpp"
#include "polyra/random.hpp"

namespace polyra {
namespace {

using detail::Bitset;
using detail::ConstraintCache;
using detail::Terms;

// Points drawn inside a polytope when too few uniform draws land in it.
constexpr double kMinAcceptance = 0.001;
constexpr std::size_t kFallbackPoints = 200;

std::vector<double> uniform_points(const BoundingBox& box, std::size_t n, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0x5a3b1e);
  std::vector<double> pts(n * box.size());
  for (std::size_t i = 0; i < n; ++i)
    sample_box(box, rng, std::span<double>(pts.data() + i * box.size(), box.size()));
  return pts;
}

class SamplingAbstractor {
 public:
  SamplingAbstractor(const Dataset& training, const AbstractConfig& cfg)
      : cfg_(cfg),
        box_(resolve_box(cfg, training)),
        samples_(uniform_points(box_, cfg.n_feasibility_samples, cfg.seed), box_.size()),
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
    samples_.retain(terms);
    training_.retain(terms);
    return detail::dnf_of(input.dim, std::move(terms));
  }

 private:
  // Drops terms no sample satisfies and constraints that exclude no sample
  // the rest of their term admits.
  void prune_terms(Terms& terms) {
    Terms kept;
    kept.reserve(terms.size());
    for (auto& t : terms) {
      if (!samples_.satisfying(t).any()) continue;
      while (drop_one_redundant(t)) {
      }
      kept.push_back(std::move(t));
    }
    terms = std::move(kept);
  }

  bool drop_one_redundant(std::vector<Halfspace>& t) {
    const std::size_t k = t.size();
    if (k == 0) return false;
    std::vector<Bitset> prefix(k + 1, Bitset(samples_.size(), true));
    std::vector<Bitset> suffix(k + 1, Bitset(samples_.size(), true));
    for (std::size_t i = 0; i < k; ++i) (prefix[i + 1] = prefix[i]) &= samples_.get(t[i]);
    for (std::size_t i = k; i-- > 0;) (suffix[i] = suffix[i + 1]) &= samples_.get(t[i]);
    for (std::size_t i = 0; i < k; ++i) {
      Bitset others = prefix[i];
      others &= suffix[i + 1];
      if (!others.any_outside(samples_.get(t[i]))) {
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
      }
    }
    return false;
  }

  struct TermSample {
    Bitset bits;
    std::vector<double> extra;  // hit-and-run points for sparsely sampled terms
  };

  TermSample sample_term(const std::vector<Halfspace>& t) {
    TermSample s{samples_.satisfying(t), {}};
    const std::size_t hits = s.bits.count();
    const auto threshold =
        static_cast<std::size_t>(kMinAcceptance * static_cast<double>(samples_.size()));
    if (hits == 0 || hits >= threshold) return s;
    std::vector<double> start;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const Point p = samples_.point(i);
      if (std::all_of(t.begin(), t.end(), [&](const Halfspace& h) { return h.contains(p); })) {
        start.assign(p.begin(), p.end());
        break;
      }
    }
    Rng rng = make_stream(cfg_.seed, ++fallback_draws_);
    s.extra = hit_and_run_convex(t, box_, std::move(start), kFallbackPoints, 20, rng);
    return s;
  }

  // Whether some sampled point of `other` violates h.
  bool contradicted(const Halfspace& h, const TermSample& other) {
    if (other.bits.any_outside(samples_.get(h))) return true;
    const std::size_t dim = box_.size();
    for (std::size_t i = 0; i < other.extra.size(); i += dim)
      if (!h.contains(Point(other.extra.data() + i, dim))) return true;
    return false;
  }

  // Merges the first pair (in term order) whose hull stays within the
  // volume slack.
  bool merge_one(Terms& terms) {
    std::vector<TermSample> sampled;
    sampled.reserve(terms.size());
    for (const auto& t : terms) sampled.push_back(sample_term(t));
    for (std::size_t a = 0; a < terms.size(); ++a) {
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        std::vector<Halfspace> candidate;
        for (const auto& h : terms[a])
          if (!contradicted(h, sampled[b])) detail::append_unique(candidate, h);
        for (const auto& h : terms[b])
          if (!contradicted(h, sampled[a])) detail::append_unique(candidate, h);
        Bitset merged_union = sampled[a].bits;
        merged_union |= sampled[b].bits;
        const auto hull = static_cast<double>(samples_.satisfying(candidate).count());
        if (hull <= (1.0 + cfg_.delta_v) * static_cast<double>(merged_union.count())) {
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
  ConstraintCache samples_;
  ConstraintCache training_;
  std::uint64_t fallback_draws_ = 0;
};

}  // namespace

DnfForm abstract_sampling(const DnfForm& d, const Dataset& training, const AbstractConfig& cfg) {
  cfg.validate();
  if (cfg.backend != AbstractBackend::Sampling)
    throw UsageError("abstract_sampling needs the Sampling backend");
  SamplingAbstractor abstractor(training, cfg);
  return abstractor(d);
}

AbstractFn make_sampling_abstractor(const Dataset& training, const AbstractConfig& cfg) {
  auto state = std::make_shared<SamplingAbstractor>(training, cfg);
  return [state](const DnfForm& d) { return (*state)(d); };
}

}  // namespace polyra
