#include "polyra/training.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "polyra/error.hpp"
#include "polyra/parallel.hpp"
#include "polyra/random.hpp"

namespace polyra {

void FitConfig::validate() const {
  if (adim < 1) throw UsageError("adim must be >= 1");
  if (bdim < 1) throw UsageError("bdim must be >= 1");
  if (n_models < 1) throw UsageError("n_models must be >= 1");
  if (!(extend >= 0.0)) throw UsageError("extend must be >= 0");
  if (minpoi < 0) throw UsageError("minpoi must be >= 0");
  if (!(quantile >= 0.0 && quantile < 0.5)) throw UsageError("quantile must be in [0, 0.5)");
  if (!(subsample >= 0.0 && subsample < 1.0)) throw UsageError("subsample must be in [0, 1)");
  if (max_reject_factor < 1) throw UsageError("max_reject_factor must be >= 1");
}

Dataset::Dataset(std::vector<double> values, std::size_t dim)
    : values_(std::move(values)), dim_(dim) {
  if (dim_ == 0) throw DataError("dataset needs dim >= 1");
  if (values_.empty()) throw DataError("dataset needs at least one point");
  if (values_.size() % dim_ != 0) throw DataError("dataset values are not a multiple of dim");
  for (double v : values_)
    if (!std::isfinite(v)) throw DataError("dataset contains a non-finite value");
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DataError("dataset needs at least one point");
  const std::size_t dim = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    require_dim(dim, r.size());
    values.insert(values.end(), r.begin(), r.end());
  }
  return Dataset(std::move(values), dim);
}

namespace {

struct Range {
  double lo;
  double hi;
};

// Empirical quantile at fraction q of an unsorted buffer (reorders it).
double quantile_of(std::vector<double>& v, double q) {
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto idx = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(idx);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
  const double below = v[idx];
  if (frac == 0.0 || idx + 1 >= v.size()) return below;
  const double above =
      *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(idx) + 1, v.end());
  return below + frac * (above - below);
}

Range trimmed_range(std::vector<double>& projections, double quantile) {
  if (quantile == 0.0) {
    const auto [lo, hi] = std::minmax_element(projections.begin(), projections.end());
    return {*lo, *hi};
  }
  const double hi = quantile_of(projections, 1.0 - quantile);
  const double lo = quantile_of(projections, quantile);
  return {lo, hi};
}

// Upper bound along m and along -m from one set of projections onto m.
std::pair<double, double> consequent_bounds(std::vector<double>& projections, double quantile,
                                            double extend) {
  const Range r = trimmed_range(projections, quantile);
  const double pad = 0.5 * extend * (r.hi - r.lo);
  return {r.hi + pad, -r.lo + pad};
}

std::vector<double> standard_normal_row(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> row(dim);
  for (auto& v : row) v = normal(rng);
  return row;
}

struct SlotResult {
  std::vector<BaseShape> shapes;
  std::size_t rejections = 0;
  bool one_sided = false;
};

class Drawer {
 public:
  Drawer(const Dataset& data, const FitConfig& config, std::size_t subset_size,
         std::size_t reject_cap, std::atomic<std::size_t>& total_rejections)
      : data_(data),
        config_(config),
        subset_size_(subset_size),
        reject_cap_(reject_cap),
        total_rejections_(total_rejections) {}

  SlotResult draw(std::size_t slot) const {
    Rng rng = make_stream(config_.seed, slot);
    const std::size_t dim = data_.dim();
    const std::size_t need = std::max<std::size_t>(static_cast<std::size_t>(config_.minpoi), 1);

    std::vector<std::size_t> subset(data_.size());
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    if (subset_size_ < data_.size()) {
      std::vector<std::size_t> chosen;
      chosen.reserve(subset_size_);
      std::sample(subset.begin(), subset.end(), std::back_inserter(chosen), subset_size_, rng);
      subset = std::move(chosen);
    }

    const auto adim = static_cast<std::size_t>(config_.adim);
    const auto bdim = static_cast<std::size_t>(config_.bdim);
    std::vector<double> proj(adim * subset.size());
    std::vector<std::size_t> inside;
    std::vector<std::size_t> mirrored;
    std::vector<double> buffer;

    SlotResult result;
    while (true) {
      std::vector<std::vector<double>> cond_rows;
      std::vector<double> cond_bounds;
      for (std::size_t r = 0; r < adim; ++r) {
        cond_rows.push_back(standard_normal_row(rng, dim));
        double lo = INFINITY;
        double hi = -INFINITY;
        for (std::size_t k = 0; k < subset.size(); ++k) {
          const double p = dot(cond_rows[r], data_.point(subset[k]));
          proj[r * subset.size() + k] = p;
          lo = std::min(lo, p);
          hi = std::max(hi, p);
        }
        cond_bounds.push_back(lo == hi ? lo : std::uniform_real_distribution<double>(lo, hi)(rng));
      }
      std::vector<std::vector<double>> cons_rows;
      for (std::size_t r = 0; r < bdim; ++r) cons_rows.push_back(standard_normal_row(rng, dim));

      inside.clear();
      mirrored.clear();
      for (std::size_t k = 0; k < subset.size(); ++k) {
        bool in_a = true;
        bool in_mirror = true;
        for (std::size_t r = 0; r < adim; ++r) {
          const double p = proj[r * subset.size() + k];
          in_a = in_a && p <= cond_bounds[r];
          // (-m)·x == -(m·x) exactly in IEEE arithmetic.
          in_mirror = in_mirror && -p <= -cond_bounds[r];
        }
        if (in_a) inside.push_back(subset[k]);
        if (in_mirror) mirrored.push_back(subset[k]);
      }

      const bool keep_a = inside.size() >= need;
      const bool keep_mirror = mirrored.size() >= need;
      if (!keep_a && !keep_mirror) {
        ++result.rejections;
        const std::size_t total = ++total_rejections_;
        if (result.rejections > reject_cap_ || total > reject_cap_) return result;
        continue;
      }

      auto make_shape = [&](const std::vector<std::size_t>& members, double sign) {
        std::vector<Halfspace> condition;
        for (std::size_t r = 0; r < adim; ++r) {
          std::vector<double> row = cond_rows[r];
          for (auto& v : row) v *= sign;
          condition.emplace_back(std::move(row), sign * cond_bounds[r]);
        }
        std::vector<Halfspace> consequent;
        for (std::size_t r = 0; r < bdim; ++r) {
          buffer.clear();
          for (std::size_t idx : members) buffer.push_back(dot(cons_rows[r], data_.point(idx)));
          const auto [upper, lower] =
              consequent_bounds(buffer, config_.quantile, config_.extend);
          std::vector<double> neg = cons_rows[r];
          for (auto& v : neg) v = -v;
          consequent.emplace_back(cons_rows[r], upper);
          consequent.emplace_back(std::move(neg), lower);
        }
        return BaseShape(Polytope(dim, std::move(condition)), Polytope(dim, std::move(consequent)));
      };

      if (keep_a) result.shapes.push_back(make_shape(inside, 1.0));
      if (keep_mirror) result.shapes.push_back(make_shape(mirrored, -1.0));
      result.one_sided = !(keep_a && keep_mirror);
      return result;
    }
  }

 private:
  const Dataset& data_;
  const FitConfig& config_;
  std::size_t subset_size_;
  std::size_t reject_cap_;
  std::atomic<std::size_t>& total_rejections_;
};

}  // namespace

double compute_consequent_bound(std::vector<double> projections, double quantile, double extend) {
  if (projections.empty()) throw DataError("consequent bound needs at least one projection");
  if (!(quantile >= 0.0 && quantile < 0.5)) throw UsageError("quantile must be in [0, 0.5)");
  if (!(extend >= 0.0)) throw UsageError("extend must be >= 0");
  return consequent_bounds(projections, quantile, extend).first;
}

Swarm fit(const Dataset& data, const FitConfig& config, FitStats* stats) {
  config.validate();
  const std::size_t n = data.size();
  const auto subset_size = static_cast<std::size_t>(
      std::ceil((1.0 - config.subsample) * static_cast<double>(n) - 1e-9));
  const std::size_t effective = std::clamp<std::size_t>(subset_size, 1, n);
  if (static_cast<std::size_t>(config.minpoi) > effective)
    throw UsageError("minpoi (" + std::to_string(config.minpoi) +
                     ") exceeds the per-draw sample count (" + std::to_string(effective) + ")");

  const auto n_models = static_cast<std::size_t>(config.n_models);
  const std::size_t reject_cap = static_cast<std::size_t>(config.max_reject_factor) * n_models;
  std::atomic<std::size_t> total_rejections{0};
  const Drawer drawer(data, config, effective, reject_cap, total_rejections);

  std::vector<SlotResult> slots(n_models);
  parallel_for(n_models, [&](std::size_t i) {
    if (total_rejections.load() > reject_cap) return;
    slots[i] = drawer.draw(i);
  });
  if (total_rejections.load() > reject_cap)
    throw NumericError("rejection budget exhausted after " + std::to_string(reject_cap) +
                       " rejected draws; minpoi (" + std::to_string(config.minpoi) +
                       ") is likely too large for this dataset");

  FitStats local;
  std::vector<BaseShape> shapes;
  shapes.reserve(2 * n_models);
  for (auto& slot : slots) {
    local.rejections += slot.rejections;
    local.one_sided_draws += slot.one_sided ? 1 : 0;
    for (auto& s : slot.shapes) shapes.push_back(std::move(s));
  }
  local.accepted_draws = n_models;
  local.base_shapes = shapes.size();
  if (stats) *stats = local;

  std::vector<double> start(data.point(0).begin(), data.point(0).end());
  return Swarm(data.dim(), std::move(shapes), bounds_of(data.values(), data.dim()), config,
               std::move(start));
}

}  // namespace polyra
