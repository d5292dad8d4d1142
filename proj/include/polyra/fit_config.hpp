#pragma once

#include <cstdint>

namespace polyra {

// Hyperparameters of the randomized fit. Defaults follow the reference
// settings: two condition and two consequent directions, no widening,
// no trimming, no subsampling, 1000 accepted draws.
struct FitConfig {
  int adim = 2;                // constraints per condition polytope
  int bdim = 2;                // consequent directions per base shape
  int n_models = 1000;         // accepted draws
  double extend = 0.0;         // total consequent widening is (1 + extend)
  int minpoi = 0;              // minimum training points inside a condition
  double quantile = 0.0;       // tail fraction ignored on each consequent side
  double subsample = 0.0;      // fraction of points withheld per draw
  std::uint64_t seed = 0;
  int max_reject_factor = 100;

  // Throws UsageError if any field is out of range.
  void validate() const;

  friend bool operator==(const FitConfig&, const FitConfig&) = default;
};

}  // namespace polyra
