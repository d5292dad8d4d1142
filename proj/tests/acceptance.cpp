// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: acceptance [criterion numbers...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polyra/abstraction.hpp"
#include "polyra/generator.hpp"
#include "polyra/hit_and_run.hpp"
#include "polyra/inference.hpp"
#include "polyra/logic.hpp"
#include "polyra/shapes.hpp"
#include "polyra/tasks.hpp"
#include "polyra/training.hpp"
#include "support.hpp"

using namespace polyra;
using namespace polyra::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << v;
  return ss.str();
}

Membership member_of(const Swarm& s) {
  return [&s](Point x) { return s.contains(x); };
}
Membership member_of(const DnfForm& d) {
  return [&d](Point x) { return d.contains(x); };
}
Membership member_of(const TruthShape& t) {
  return [&t](Point x) { return t.contains(x); };
}

// ---------------------------------------------------------------------------

Outcome training_membership() {
  const std::size_t dims[] = {1, 2, 3, 5};
  const std::size_t sizes[] = {1, 50, 5000};
  std::size_t outside = 0;
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t dim = dims[i % 4];
    const Dataset data = gaussian(sizes[i % 3], dim, 100 + i);
    FitConfig cfg;
    cfg.seed = i;
    cfg.adim = static_cast<int>(1 + i % (dim + 1));
    const Swarm s = fit(data, cfg);
    for (std::size_t p = 0; p < data.size(); ++p, ++checked)
      if (!s.contains(data.point(p))) ++outside;
  }
  return {outside == 0, std::to_string(outside) + " of " + std::to_string(checked) +
                            " training points outside"};
}

Outcome consequent_bound_example() {
  std::vector<double> proj;
  for (int i = 0; i <= 100; ++i) proj.push_back(i / 100.0);
  std::vector<double> neg;
  for (double v : proj) neg.push_back(-v);
  const double hi = compute_consequent_bound(proj, 0.0, 0.2);
  const double lo = -compute_consequent_bound(neg, 0.0, 0.2);
  const bool pass = std::abs(hi - 1.1) <= 1e-12 && std::abs(lo + 0.1) <= 1e-12;
  return {pass, "bounds [" + fmt(lo, 17) + ", " + fmt(hi, 17) + "]"};
}

Outcome sine_range() {
  int good = 0;
  std::string detail;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset data = noisy_sine(10000, seed);
    FitConfig cfg;
    cfg.minpoi = 1000;
    cfg.extend = 0.0125;
    cfg.seed = seed;
    const Swarm s = fit(data, cfg);
    const IntervalSet r = range_query(s, RangeQuery::with_fixed(2, {{0, std::numbers::pi}}));
    bool ok = r.intervals().size() == 1 && r.contains(0.0);
    if (!r.intervals().empty()) {
      const Interval iv = r.intervals().front();
      ok = ok && std::abs(iv.lo + 0.070) <= 0.03 && std::abs(iv.hi - 0.054) <= 0.03;
      detail += " [" + fmt(iv.lo, 3) + "," + fmt(iv.hi, 3) + "]";
    } else {
      detail += " []";
    }
    if (r.intervals().size() > 1) detail += "+" + std::to_string(r.intervals().size() - 1);
    good += ok;
  }
  return {good >= 4, std::to_string(good) + "/5 seeds:" + detail};
}

double fresh_member_fraction(const Swarm& s, const Dataset& test) {
  std::size_t in = 0;
  for (std::size_t i = 0; i < test.size(); ++i) in += s.contains(test.point(i));
  return static_cast<double>(in) / static_cast<double>(test.size());
}

Outcome gaussian_linearisation() {
  const Dataset train = gaussian(10000, 2, 1);
  const Dataset test = gaussian(10000, 2, 2);
  FitConfig plain;
  plain.seed = 3;
  const double f_plain = fresh_member_fraction(fit(train, plain), test);
  FitConfig lin = plain;
  lin.quantile = 0.025;
  lin.extend = 0.2;
  const double f_lin = fresh_member_fraction(fit(train, lin), test);
  const bool pass = std::abs(f_plain - 0.76) <= 0.08 && std::abs(f_lin - 0.98) <= 0.02;
  return {pass, "default " + fmt(f_plain) + " (want 0.76±0.08), quantile/extend " + fmt(f_lin) +
                    " (want 0.98±0.02)"};
}

const TruthShape& diamond() {
  static const TruthShape d = TruthShape::diamond(0.5, 0.5, 0.5);
  return d;
}

Outcome diamond_abstraction() {
  int good = 0;
  std::string detail;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset data = uniform_in(diamond(), 10000, seed);
    FitConfig fc;
    fc.n_models = 2000;
    fc.seed = seed;
    const Swarm s = fit(data, fc);
    AbstractConfig ac;
    ac.seed = seed;
    const AbstractionReport rep = abstract_swarm(s, data, ac);
    const double viou = estimate_viou(member_of(rep.dnf), member_of(diamond()),
                                      widen(diamond().extent(), 0.1), 100000, seed);
    const bool ok = rep.dnf.terms.size() <= 3 && viou >= 0.95 && rep.reduction_factor() >= 100;
    good += ok;
    detail += " (" + std::to_string(rep.dnf.terms.size()) + " terms, vIOU " + fmt(viou, 3) +
              ", " + fmt(rep.reduction_factor(), 4) + "x)";
  }
  return {good >= 4, std::to_string(good) + "/5 seeds:" + detail};
}

LogicNode random_1d_tree(Rng& rng, int& leaves_left, int depth) {
  std::uniform_real_distribution<double> coef(0.5, 2.0);
  std::uniform_real_distribution<double> bound(-5.0, 5.0);
  std::bernoulli_distribution coin(0.5);
  if (leaves_left <= 1 || depth >= 4 || coin(rng)) {
    --leaves_left;
    const double a = coin(rng) ? coef(rng) : -coef(rng);
    return LogicNode::leaf(Halfspace({a}, bound(rng)));
  }
  std::uniform_int_distribution<int> arity(2, 4);
  std::vector<LogicNode> children;
  for (int k = arity(rng); k > 0 && leaves_left > 0; --k)
    children.push_back(random_1d_tree(rng, leaves_left, depth + 1));
  return coin(rng) ? LogicNode::conjunction(std::move(children))
                   : LogicNode::disjunction(std::move(children));
}

void collect_cuts(const LogicNode& t, std::vector<double>& cuts) {
  if (t.kind() == LogicNode::Kind::Leaf) cuts.push_back(t.halfspace().bound() / t.halfspace().normal()[0]);
  for (const auto& c : t.children()) collect_cuts(c, cuts);
}

Outcome rangefinder_exactness() {
  Rng rng = make_stream(6, 0);
  std::size_t mismatches = 0;
  std::size_t compared = 0;
  for (int k = 0; k < 200; ++k) {
    int leaves = 30;
    const LogicNode t = simplify(random_1d_tree(rng, leaves, 0));
    const IntervalSet r = rangefinder(t);
    std::vector<double> cuts;
    collect_cuts(t, cuts);
    for (int i = 0; i < 10000; ++i) {
      const double x = -10.0 + 20.0 * (i + 0.5) / 10000.0;
      bool near = false;
      for (double c : cuts) near = near || std::abs(x - c) < 1e-5;
      if (near) continue;
      ++compared;
      const double p[1] = {x};
      mismatches += r.contains(x) != eval_tree(t, p);
    }
  }
  return {mismatches == 0,
          std::to_string(mismatches) + " mismatches over " + std::to_string(compared) + " points"};
}

double grid_agreement(const Membership& a, const Membership& b, const BoundingBox& box,
                      std::size_t n) {
  const auto g = grid2d(box, n);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n * n; ++i) {
    const Point p(g.data() + 2 * i, 2);
    agree += a(p) == b(p);
  }
  return static_cast<double>(agree) / static_cast<double>(n * n);
}

Outcome abstraction_fidelity() {
  double worst = 1.0;
  int good = 0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Dataset data = uniform_in(TruthShape::box({{0, 1}, {0, 1}}), 3000, 700 + k);
    FitConfig fc;
    fc.n_models = static_cast<int>(3 + k % 8);
    fc.seed = k;
    const Swarm s = fit(data, fc);
    AbstractConfig ac;
    ac.delta_v = 0.0;
    ac.n_feasibility_samples = 100000;
    ac.seed = k;
    const AbstractionReport rep = abstract_swarm(s, data, ac);
    const double agree = grid_agreement(member_of(s), member_of(rep.dnf), s.data_bounds(), 200);
    worst = std::min(worst, agree);
    good += agree >= 0.995;
  }
  return {good == 20, std::to_string(good) + "/20 swarms at >= 99.5%, worst " + fmt(worst, 5)};
}

Outcome backend_cross_check() {
  const Dataset data = uniform_in(diamond(), 10000, 8);
  FitConfig fc;
  fc.n_models = 2000;
  fc.seed = 8;
  const Swarm s = fit(data, fc);
  AbstractConfig ac;
  ac.seed = 8;
  const DnfForm sampled = abstract_swarm(s, data, ac).dnf;
  ac.backend = AbstractBackend::LP;
  const DnfForm lp = abstract_swarm(s, data, ac).dnf;
  const double agree =
      grid_agreement(member_of(sampled), member_of(lp), widen(s.data_bounds(), 0.1), 200);
  return {agree >= 0.99, "grid agreement " + fmt(agree, 5) + " (" +
                             std::to_string(sampled.terms.size()) + " vs " +
                             std::to_string(lp.terms.size()) + " terms)"};
}

std::vector<TruthShape> three_squares() {
  return {TruthShape::box({{0, 1}, {0, 1}}), TruthShape::box({{3, 4}, {0, 1}}),
          TruthShape::box({{1.5, 2.5}, {3, 4}})};
}

Outcome clustering() {
  const auto squares = three_squares();
  const BoundingBox box = widen(bounds_of(uniform_in_union(squares, 1000, 0).values(), 2), 0.1);
  int good = 0;
  std::string detail;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset data = uniform_in_union(squares, 10000, seed);
    FitConfig fc;
    fc.seed = seed;
    AbstractConfig ac;
    ac.seed = seed;
    const Clustering c = cluster(data, fc, ac);
    bool ok = c.clusters.size() == 3;
    std::string ious;
    for (const auto& sq : squares) {
      double best = 0.0;
      for (const auto& p : c.clusters) {
        const Membership m = [&p](Point x) { return p.contains(x); };
        best = std::max(best, estimate_viou(m, member_of(sq), box, 100000, seed));
      }
      ok = ok && best >= 0.85;
      ious += " " + fmt(best, 3);
    }
    good += ok;
    detail += " (" + std::to_string(c.clusters.size()) + " clusters," + ious + ")";
  }
  return {good >= 4, std::to_string(good) + "/5 seeds:" + detail};
}

Outcome generation() {
  const std::vector<TruthShape> squares = {TruthShape::box({{0, 1}, {0, 1}}),
                                           TruthShape::box({{2, 3}, {0, 1}})};
  const Dataset data = uniform_in_union(squares, 4000, 10);
  FitConfig fc;
  fc.seed = 10;
  const Swarm s = fit(data, fc);

  GenConfig gc;
  gc.seed = 10;
  gc.n_samples = 10000;
  const auto pts = generate(s, gc);
  std::size_t outside = 0;
  for (std::size_t i = 0; i < gc.n_samples; ++i) outside += !s.contains(Point(pts.data() + 2 * i, 2));

  gc.n_samples = 2000;
  gc.seed = 11;
  const auto few = generate(s, gc);
  std::size_t left = 0;
  for (std::size_t i = 0; i < gc.n_samples; ++i) left += few[2 * i] < 1.5;
  const double share = static_cast<double>(left) / static_cast<double>(gc.n_samples);
  const bool pass = outside == 0 && share >= 0.05 && share <= 0.95;
  return {pass, std::to_string(outside) + " of 10000 outside; component shares " + fmt(share, 3) +
                    " / " + fmt(1.0 - share, 3)};
}

Outcome anomaly_ranking() {
  const Dataset train = two_moons(2000, 0.1, 11);
  FitConfig fc;
  fc.n_models = 5000;
  fc.seed = 11;
  const Swarm s = fit(train, fc);
  const Dataset normal = two_moons(500, 0.1, 12);
  Rng rng = make_stream(13, 0);
  const BoundingBox box = widen(s.data_bounds(), 1.0);
  std::vector<double> x(2);
  std::vector<double> normal_scores;
  std::vector<double> anomaly_scores;
  for (std::size_t i = 0; i < normal.size(); ++i)
    normal_scores.push_back(1.0 - score_conditional(s, normal.point(i)).value);
  for (int i = 0; i < 500; ++i) {
    sample_box(box, rng, x);
    anomaly_scores.push_back(1.0 - score_conditional(s, x).value);
  }
  const double auc = pairwise_auc(anomaly_scores, normal_scores);
  return {auc >= 0.95, std::to_string(s.size()) + " base shapes, AUC " + fmt(auc, 4)};
}

Outcome viou_checks() {
  const TruthShape a = TruthShape::box({{0, 1}, {0, 1}});
  const TruthShape far = TruthShape::box({{2, 3}, {0, 1}});
  const TruthShape half = TruthShape::box({{0.5, 1.5}, {0, 1}});
  const BoundingBox box = {{-0.5, 3.5}, {-0.5, 1.5}};
  const double same = estimate_viou(member_of(a), member_of(a), box, 100000, 12);
  const double disjoint = estimate_viou(member_of(a), member_of(far), box, 100000, 12);
  const double third = estimate_viou(member_of(a), member_of(half), box, 100000, 12);
  const bool pass = std::abs(same - 1.0) <= 0.005 && disjoint == 0.0 &&
                    std::abs(third - 1.0 / 3.0) <= 0.01;
  return {pass, "identical " + fmt(same) + ", disjoint " + fmt(disjoint) + ", half overlap " +
                    fmt(third)};
}

Outcome merge_semantics() {
  const Dataset d1 = gaussian(500, 2, 13);
  const Dataset d2 = uniform_in(TruthShape::box({{-0.5, 2}, {-1, 1}}), 500, 13);
  FitConfig fc;
  fc.n_models = 200;
  fc.seed = 13;
  const Swarm a = fit(d1, fc);
  fc.seed = 14;
  const Swarm b = fit(d2, fc);
  const Swarm m = swarm_merge(a, b);
  BoundingBox box = widen(a.data_bounds(), 0.2);
  const auto g = grid2d(box, 100);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    const Point p(g.data() + 2 * i, 2);
    mismatches += m.contains(p) != (a.contains(p) && b.contains(p));
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches on 10000 grid points"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "training membership", training_membership},
      {2, "consequent bound example", consequent_bound_example},
      {3, "sine range at pi", sine_range},
      {4, "gaussian member fractions", gaussian_linearisation},
      {5, "diamond abstraction", diamond_abstraction},
      {6, "rangefinder exactness", rangefinder_exactness},
      {7, "abstraction fidelity at zero slack", abstraction_fidelity},
      {8, "lp vs sampling backends", backend_cross_check},
      {9, "three-square clustering", clustering},
      {10, "generation", generation},
      {11, "anomaly ranking", anomaly_ranking},
      {12, "viou analytic checks", viou_checks},
      {13, "merge semantics", merge_semantics},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
