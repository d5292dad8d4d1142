#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "polyra/random.hpp"
#include "polyra/shapes.hpp"
#include "polyra/training.hpp"

namespace polyra::testing {

inline Dataset uniform_in(const TruthShape& shape, std::size_t n, std::uint64_t seed) {
  Rng rng = make_stream(seed, 17);
  return Dataset(shape.sample(n, rng), shape.dim());
}

// Points (x, sin x) with x ~ U(0, 2pi) and ±5% uniform noise on y.
inline Dataset noisy_sine(std::size_t n, std::uint64_t seed) {
  Rng rng = make_stream(seed, 23);
  std::uniform_real_distribution<double> xs(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs(rng);
    v.push_back(x);
    v.push_back(std::sin(x) + noise(rng));
  }
  return Dataset(std::move(v), 2);
}

inline Dataset gaussian(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng = make_stream(seed, 29);
  std::normal_distribution<double> g;
  std::vector<double> v(n * dim);
  for (auto& x : v) x = g(rng);
  return Dataset(std::move(v), dim);
}

// Two interleaved half circles with Gaussian noise.
inline Dataset two_moons(std::size_t n, double noise, std::uint64_t seed) {
  Rng rng = make_stream(seed, 31);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> g(0.0, noise);
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = angle(rng);
    if (i % 2 == 0) {
      v.push_back(std::cos(t) + g(rng));
      v.push_back(std::sin(t) + g(rng));
    } else {
      v.push_back(1.0 - std::cos(t) + g(rng));
      v.push_back(0.5 - std::sin(t) + g(rng));
    }
  }
  return Dataset(std::move(v), 2);
}

// Equal shares of uniform points from each shape.
inline Dataset uniform_in_union(const std::vector<TruthShape>& shapes, std::size_t n,
                                std::uint64_t seed) {
  Rng rng = make_stream(seed, 37);
  std::vector<double> v;
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    const std::size_t share = n / shapes.size() + (k < n % shapes.size() ? 1 : 0);
    const auto pts = shapes[k].sample(share, rng);
    v.insert(v.end(), pts.begin(), pts.end());
  }
  return Dataset(std::move(v), shapes.front().dim());
}

// n x n cell-centre grid over a 2D box, row-major points.
inline std::vector<double> grid2d(const BoundingBox& box, std::size_t n) {
  std::vector<double> v;
  v.reserve(n * n * 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      v.push_back(box[0].lo + (box[0].hi - box[0].lo) * (i + 0.5) / n);
      v.push_back(box[1].lo + (box[1].hi - box[1].lo) * (j + 0.5) / n);
    }
  return v;
}

// Area under the ROC curve by comparing every (positive, negative) pair;
// ties count half.
inline double pairwise_auc(const std::vector<double>& positive, const std::vector<double>& negative) {
  double wins = 0.0;
  for (double p : positive)
    for (double q : negative) wins += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
  return wins / (static_cast<double>(positive.size()) * static_cast<double>(negative.size()));
}

}  // namespace polyra::testing
