#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "polyra/error.hpp"
#include "polyra/parallel.hpp"
#include "polyra/training.hpp"
#include "support.hpp"

using namespace polyra;
using namespace polyra::testing;

namespace {

// Linear-interpolation quantile by full sort.
double sorted_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (pos - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

std::size_t members(const Swarm& s, const Dataset& d) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < d.size(); ++i) n += s.contains(d.point(i));
  return n;
}

}  // namespace

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(Dataset({}, 2), DataError);
  CHECK_THROWS_AS(Dataset({1, 2, 3}, 2), DataError);
  CHECK_THROWS_AS(Dataset({1, NAN}, 2), DataError);
  CHECK_THROWS_AS(Dataset::from_rows({{1, 2}, {3}}), DimensionMismatch);
  const Dataset d = Dataset::from_rows({{1, 2}, {3, 4}});
  CHECK(d.size() == 2);
  CHECK(d.point(1)[0] == 3);
}

TEST_CASE("consequent bound") {
  std::vector<double> unit;
  for (int i = 0; i <= 100; ++i) unit.push_back(i / 100.0);

  SUBCASE("extend widens both sides by half the range") {
    CHECK(compute_consequent_bound(unit, 0.0, 0.2) == doctest::Approx(1.1).epsilon(1e-12));
    std::vector<double> neg;
    for (double v : unit) neg.push_back(-v);
    CHECK(-compute_consequent_bound(neg, 0.0, 0.2) == doctest::Approx(-0.1).epsilon(1e-12));
  }
  SUBCASE("no extend gives the exact maximum") {
    const std::vector<double> v = {3.25, -1.0, 7.125, 0.5};
    CHECK(compute_consequent_bound(v, 0.0, 0.0) == 7.125);
  }
  SUBCASE("quantile matches a sort-and-index oracle") {
    CHECK(compute_consequent_bound(unit, 0.025, 0.0) == doctest::Approx(0.975));
    Rng rng = make_stream(4, 0);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> v(1 + trial * 7);
      for (auto& x : v) x = g(rng);
      for (double q : {0.0, 0.01, 0.1, 0.3}) {
        const double hi = sorted_quantile(v, 1.0 - q);
        const double lo = sorted_quantile(v, q);
        for (double e : {0.0, 0.2})
          CHECK(compute_consequent_bound(v, q, e) == doctest::Approx(hi + 0.5 * e * (hi - lo)));
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(compute_consequent_bound({}, 0.0, 0.0), DataError);
    CHECK_THROWS_AS(compute_consequent_bound(unit, 0.5, 0.0), UsageError);
    CHECK_THROWS_AS(compute_consequent_bound(unit, 0.0, -1.0), UsageError);
  }
}

TEST_CASE("config validation") {
  auto bad = [](auto edit) {
    FitConfig c;
    edit(c);
    return c;
  };
  CHECK_NOTHROW(FitConfig{}.validate());
  CHECK_THROWS_AS(bad([](FitConfig& c) { c.adim = 0; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](FitConfig& c) { c.bdim = 0; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](FitConfig& c) { c.n_models = 0; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](FitConfig& c) { c.extend = -0.1; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](FitConfig& c) { c.minpoi = -1; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](FitConfig& c) { c.quantile = 0.5; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](FitConfig& c) { c.subsample = 1.0; }).validate(), UsageError);
  CHECK_THROWS_AS(bad([](FitConfig& c) { c.max_reject_factor = 0; }).validate(), UsageError);
}

TEST_CASE("fit structure") {
  const Dataset data = gaussian(400, 3, 1);
  FitConfig cfg;
  cfg.n_models = 50;
  cfg.adim = 2;
  cfg.bdim = 3;
  FitStats stats;
  const Swarm s = fit(data, cfg, &stats);

  CHECK(s.dim() == 3);
  CHECK(s.size() >= 50);
  CHECK(s.size() <= 100);
  CHECK(stats.accepted_draws == 50);
  CHECK(stats.base_shapes == s.size());
  CHECK(stats.base_shapes == 100 - stats.one_sided_draws);
  CHECK(s.fit_config() == cfg);
  CHECK(s.data_bounds() == bounds_of(data.values(), 3));
  REQUIRE(s.start_point());
  CHECK(*s.start_point() == std::vector<double>(data.point(0).begin(), data.point(0).end()));
  for (const auto& f : s.base_shapes()) {
    CHECK(f.condition().size() == 2);
    CHECK(f.consequent().size() == 6);
    // Consequent rows come in (m, -m) pairs.
    for (std::size_t r = 0; r < 6; r += 2) {
      const auto& m = f.consequent().constraints()[r].normal();
      const auto& n = f.consequent().constraints()[r + 1].normal();
      for (std::size_t j = 0; j < 3; ++j) CHECK(n[j] == -m[j]);
    }
  }
}

TEST_CASE("mirrored partner negates the condition") {
  const Dataset data = uniform_in(TruthShape::box({{0, 1}, {0, 1}}), 500, 2);
  FitConfig cfg;
  cfg.n_models = 30;
  FitStats stats;
  const Swarm s = fit(data, cfg, &stats);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const auto& a = s.base_shapes()[i].condition().constraints();
    const auto& b = s.base_shapes()[i + 1].condition().constraints();
    bool mirrored = true;
    for (std::size_t r = 0; r < a.size(); ++r) {
      mirrored = mirrored && b[r].bound() == -a[r].bound();
      for (std::size_t j = 0; j < 2; ++j) mirrored = mirrored && b[r].normal()[j] == -a[r].normal()[j];
    }
    if (mirrored) {
      ++pairs;
      ++i;
    }
  }
  CHECK(pairs == 30 - stats.one_sided_draws);
}

TEST_CASE("training points are members") {
  for (std::size_t dim : {1, 2, 3, 5}) {
    for (std::size_t n : {1, 50, 800}) {
      const Dataset data = gaussian(n, dim, 10 * dim + n);
      for (int adim : {1, 2, static_cast<int>(dim) + 1}) {
        FitConfig cfg;
        cfg.n_models = 200;
        cfg.adim = adim;
        cfg.seed = dim + n;
        CAPTURE(dim);
        CAPTURE(n);
        CAPTURE(adim);
        CHECK(members(fit(data, cfg), data) == n);
      }
    }
  }
}

TEST_CASE("training points stay members with extend and minpoi") {
  const Dataset data = noisy_sine(2000, 3);
  FitConfig cfg;
  cfg.n_models = 300;
  cfg.extend = 0.1;
  cfg.minpoi = 200;
  CHECK(members(fit(data, cfg), data) == data.size());
}

TEST_CASE("single training point") {
  const Dataset data = Dataset::from_rows({{0.25, -3.0}});
  FitConfig cfg;
  cfg.n_models = 10;
  const Swarm s = fit(data, cfg);
  CHECK(s.contains(data.point(0)));
}

TEST_CASE("dense convex data gives a mostly solid shape") {
  const TruthShape square = TruthShape::box({{0, 1}, {0, 1}});
  const Dataset data = uniform_in(square, 10000, 5);
  const Dataset fresh = uniform_in(square, 10000, 6);
  const Swarm s = fit(data, FitConfig{});
  CHECK(static_cast<double>(members(s, fresh)) / 10000.0 >= 0.9);
}

TEST_CASE("fit is deterministic and independent of thread count") {
  const Dataset data = gaussian(1000, 2, 7);
  FitConfig cfg;
  cfg.n_models = 300;
  cfg.seed = 99;
  cfg.subsample = 0.3;
  set_thread_count(1);
  const Swarm a = fit(data, cfg);
  set_thread_count(4);
  const Swarm b = fit(data, cfg);
  set_thread_count(0);
  const Swarm c = fit(data, cfg);
  CHECK(a == b);
  CHECK(a == c);
  cfg.seed = 100;
  CHECK_FALSE(fit(data, cfg) == a);
}

TEST_CASE("subsampled fits may drop training points but stay valid") {
  const Dataset data = gaussian(500, 2, 8);
  FitConfig cfg;
  cfg.n_models = 200;
  cfg.subsample = 0.5;
  cfg.minpoi = 50;
  CHECK_NOTHROW(fit(data, cfg));
  cfg.minpoi = 251;
  CHECK_THROWS_AS(fit(data, cfg), UsageError);
}

TEST_CASE("minpoi larger than the data is an error") {
  const Dataset data = gaussian(20, 2, 9);
  FitConfig cfg;
  cfg.minpoi = 21;
  CHECK_THROWS_AS(fit(data, cfg), UsageError);
}

TEST_CASE("exhausted rejection budget names minpoi") {
  const Dataset data = gaussian(200, 2, 10);
  FitConfig cfg;
  cfg.n_models = 20;
  cfg.minpoi = 200;
  cfg.adim = 3;
  cfg.max_reject_factor = 2;
  try {
    fit(data, cfg);
    FAIL("expected an exhausted budget");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("minpoi") != std::string::npos);
  }
}
