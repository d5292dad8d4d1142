// polyra: fit, query, abstract and sample shape models from the command line.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyra/abstraction.hpp"
#include "polyra/csv.hpp"
#include "polyra/error.hpp"
#include "polyra/generator.hpp"
#include "polyra/inference.hpp"
#include "polyra/model_file.hpp"
#include "polyra/parallel.hpp"
#include "polyra/shapes.hpp"
#include "polyra/tasks.hpp"
#include "polyra/training.hpp"

using namespace polyra;

namespace {

struct CsvFlags {
  bool no_header = false;
  std::string delimiter = ",";

  CsvOptions options() const {
    if (delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
    CsvOptions o;
    o.header = no_header ? CsvOptions::Header::Absent : CsvOptions::Header::Auto;
    o.delimiter = delimiter.front();
    return o;
  }
  void add_to(CLI::App* app) {
    app->add_flag("--no-header", no_header, "First row is data, never a header");
    app->add_option("--delimiter", delimiter, "Field separator")->capture_default_str();
  }
};

void add_fit_options(CLI::App* app, FitConfig& c) {
  app->add_option("--n-models", c.n_models, "Accepted random draws")->capture_default_str();
  app->add_option("--adim", c.adim, "Constraints per condition polytope")->capture_default_str();
  app->add_option("--bdim", c.bdim, "Consequent directions per base shape")->capture_default_str();
  app->add_option("--extend", c.extend, "Consequent widening fraction")->capture_default_str();
  app->add_option("--minpoi", c.minpoi, "Minimum training points per condition")
      ->capture_default_str();
  app->add_option("--quantile", c.quantile, "Tail fraction ignored per consequent side")
      ->capture_default_str();
  app->add_option("--subsample", c.subsample, "Fraction of points withheld per draw")
      ->capture_default_str();
  app->add_option("--max-reject-factor", c.max_reject_factor,
                  "Rejected draws allowed per requested draw")
      ->capture_default_str();
}

struct AbstractFlags {
  double delta_v = 0.05;
  std::string backend = "sampling";
  std::size_t feasibility_samples = 10000;
  std::size_t volume_samples = 10000;
  std::size_t term_ceiling = 10000;

  void add_to(CLI::App* app) {
    app->add_option("--delta-v", delta_v, "Volume slack allowed per merge")->capture_default_str();
    app->add_option("--backend", backend, "sampling or lp")
        ->check(CLI::IsMember({"sampling", "lp"}))
        ->capture_default_str();
    app->add_option("--feasibility-samples", feasibility_samples)->capture_default_str();
    app->add_option("--volume-samples", volume_samples)->capture_default_str();
    app->add_option("--term-ceiling", term_ceiling, "Abort when a step exceeds this many terms")
        ->capture_default_str();
  }
  AbstractConfig config(std::uint64_t seed) const {
    AbstractConfig c;
    c.delta_v = delta_v;
    c.backend = backend == "lp" ? AbstractBackend::LP : AbstractBackend::Sampling;
    c.n_feasibility_samples = feasibility_samples;
    c.n_volume_samples = volume_samples;
    c.term_ceiling = term_ceiling;
    c.seed = seed;
    return c;
  }
};

// Writes to the named file, or stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError("cannot write '" + path + "'");
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<double> row_of(Point p) { return {p.begin(), p.end()}; }

const Swarm& require_swarm(const Model& m, const char* command) {
  if (m.kind != ModelKind::Swarm)
    throw UsageError(std::string(command) + " needs a swarm model, got " + to_string(m.kind));
  return *m.swarm;
}

BoundingBox parse_bounds(const std::string& text, const Model& m) {
  if (text == "auto") {
    if (!m.data_bounds) throw UsageError("model stores no data bounds; pass --bounds x0,x1,y0,y1");
    return widen(*m.data_bounds, 0.1);
  }
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("--bounds: '" + item + "' is not a number");
    }
  }
  if (v.size() != 2 * m.dim) throw UsageError("--bounds needs lo,hi for every dimension");
  BoundingBox box;
  for (std::size_t i = 0; i < v.size(); i += 2) {
    if (!(v[i] < v[i + 1])) throw UsageError("--bounds needs lo < hi");
    box.push_back({v[i], v[i + 1]});
  }
  return box;
}

std::map<std::size_t, double> parse_fixed(const std::vector<std::string>& items) {
  std::map<std::size_t, double> fixed;
  for (const auto& group : items) {
    std::stringstream ss(group);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--fix expects index=value, got '" + item + "'");
      try {
        fixed[std::stoul(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("--fix expects index=value, got '" + item + "'");
      }
    }
  }
  return fixed;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("'" + item + "' is not a number");
    }
  }
  return v;
}

void print_polytope(std::ostream& out, const Polytope& p) {
  for (const auto& h : p.constraints()) {
    out << "  ";
    for (std::size_t j = 0; j < h.dim(); ++j) {
      if (j) out << " + ";
      out << format_double(h.normal()[j]) << "*x" << j;
    }
    out << " <= " << format_double(h.bound()) << '\n';
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> coordinate_names(std::size_t dim) {
  std::vector<std::string> v;
  for (std::size_t j = 0; j < dim; ++j) v.push_back("x" + std::to_string(j));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polytope-swarm shape models: fit, predict, score, abstract, generate"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "Worker threads (0: POLYRA_THREADS or all cores)");
  app.add_option("--seed", seed, "Random seed")->capture_default_str();

  CsvFlags csv;

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit a swarm to a CSV of points");
  std::string fit_input, fit_output;
  FitConfig fit_cfg;
  fit_cmd->add_option("input", fit_input, "Training CSV")->required();
  fit_cmd->add_option("-o,--output", fit_output, "Model file (default stdout)");
  add_fit_options(fit_cmd, fit_cfg);
  csv.add_to(fit_cmd);

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "Membership of points or of a 2D grid");
  std::string predict_model, predict_input, predict_output, predict_bounds = "auto";
  std::size_t grid = 0;
  bool render = false;
  predict_cmd->add_option("model", predict_model)->required();
  predict_cmd->add_option("input", predict_input, "CSV of points");
  predict_cmd->add_option("--grid", grid, "Emit an N x N membership grid instead");
  predict_cmd->add_option("--bounds", predict_bounds, "auto or x0,x1,y0,y1")->capture_default_str();
  predict_cmd->add_flag("--render", render, "Print the grid as text ('#' member, '.' not)");
  predict_cmd->add_option("-o,--output", predict_output);
  csv.add_to(predict_cmd);

  // score
  auto* score_cmd = app.add_subcommand("score", "Membership and anomaly scores per point");
  std::string score_model, score_input, score_output;
  score_cmd->add_option("model", score_model)->required();
  score_cmd->add_option("input", score_input)->required();
  score_cmd->add_option("-o,--output", score_output);
  csv.add_to(score_cmd);

  // abstract
  auto* abstract_cmd = app.add_subcommand("abstract", "Rewrite a model as a small union of polytopes");
  std::string abs_model, abs_train, abs_output;
  AbstractFlags abs_flags;
  abstract_cmd->add_option("model", abs_model)->required();
  abstract_cmd->add_option("--train", abs_train, "Training CSV")->required();
  abstract_cmd->add_option("-o,--output", abs_output, "DNF model file (default stdout)");
  abs_flags.add_to(abstract_cmd);
  csv.add_to(abstract_cmd);

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "Sample member points by hit-and-run");
  std::string gen_model, gen_output, gen_start, gen_weighting = "inverse";
  GenConfig gen_cfg;
  generate_cmd->add_option("model", gen_model)->required();
  generate_cmd->add_option("-n,--samples", gen_cfg.n_samples)->capture_default_str();
  generate_cmd->add_option("--burn-in", gen_cfg.burn_in)->capture_default_str();
  generate_cmd->add_option("--weighting", gen_weighting, "Segment choice: inverse or proportional")
      ->check(CLI::IsMember({"inverse", "proportional"}))
      ->capture_default_str();
  generate_cmd->add_option("--start", gen_start, "Member start point x0,x1,...");
  generate_cmd->add_option("-o,--output", gen_output);

  // range
  auto* range_cmd = app.add_subcommand("range", "Member range of the one coordinate left free");
  std::string range_model;
  std::vector<std::string> fix;
  range_cmd->add_option("model", range_model)->required();
  range_cmd->add_option("--fix", fix, "index=value, repeatable or comma separated")->required();

  // cluster
  auto* cluster_cmd = app.add_subcommand("cluster", "Fit, abstract and list one polytope per cluster");
  std::string cl_input, cl_listing, cl_assign, cl_model;
  FitConfig cl_fit;
  AbstractFlags cl_abs;
  cluster_cmd->add_option("input", cl_input, "Training CSV")->required();
  cluster_cmd->add_option("--clusters", cl_listing, "Polytope listing (default stdout)");
  cluster_cmd->add_option("--assignments", cl_assign, "Per-point cluster CSV");
  cluster_cmd->add_option("--model", cl_model, "Also save the DNF model");
  add_fit_options(cluster_cmd, cl_fit);
  cl_abs.add_to(cluster_cmd);
  csv.add_to(cluster_cmd);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Monte-Carlo volume IoU against a shape or model");
  std::string eval_model, viou_target, eval_bounds;
  std::size_t eval_samples = 100000;
  eval_cmd->add_option("model", eval_model)->required();
  eval_cmd->add_option("--viou", viou_target,
                       "box:x0,x1,y0,y1 | diamond:cx,cy,r | disc:cx,cy,r | "
                       "annulus:cx,cy,rin,rout | model file")
      ->required();
  eval_cmd->add_option("--samples", eval_samples)->capture_default_str();
  eval_cmd->add_option("--bounds", eval_bounds, "Sampling box x0,x1,y0,y1 (default: both shapes)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads) set_thread_count(threads);

    if (*fit_cmd) {
      const auto t0 = std::chrono::steady_clock::now();
      const CsvTable table = read_csv_file(fit_input, csv.options());
      fit_cfg.seed = seed;
      FitStats stats;
      Swarm s = fit(table.data, fit_cfg, &stats);
      Output out(fit_output);
      out.get() << serialize_model(Model::of(std::move(s)));
      std::fprintf(stderr,
                   "points: %zu\ndim: %zu\naccepted submodels: %zu\nbase shapes: %zu\n"
                   "rejections: %zu\nwall time: %.3f s\n",
                   table.data.size(), table.data.dim(), stats.accepted_draws, stats.base_shapes,
                   stats.rejections, seconds_since(t0));
      return 0;
    }

    if (*predict_cmd) {
      const Model m = load_model(predict_model);
      Output out(predict_output);
      if (grid > 0 || render) {
        if (m.dim != 2) throw UsageError("grid export needs a 2D model");
        const std::size_t n = grid > 0 ? grid : 60;
        const BoundingBox box = parse_bounds(predict_bounds, m);
        std::vector<double> p(2);
        if (render) {
          for (std::size_t r = n; r-- > 0;) {
            p[1] = box[1].lo + (box[1].hi - box[1].lo) * (r + 0.5) / n;
            for (std::size_t c = 0; c < n; ++c) {
              p[0] = box[0].lo + (box[0].hi - box[0].lo) * (c + 0.5) / n;
              out.get() << (m.contains(p) ? '#' : '.');
            }
            out.get() << '\n';
          }
          return 0;
        }
        write_csv_header(out.get(), {"x", "y", "member"});
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) {
            p[0] = box[0].lo + (box[0].hi - box[0].lo) * (c + 0.5) / n;
            p[1] = box[1].lo + (box[1].hi - box[1].lo) * (r + 0.5) / n;
            write_csv_row(out.get(), {p[0], p[1], m.contains(p) ? 1.0 : 0.0});
          }
        return 0;
      }
      if (predict_input.empty()) throw UsageError("predict needs an input CSV or --grid");
      const CsvTable table = read_csv_file(predict_input, csv.options());
      require_dim(m.dim, table.data.dim());
      auto header = coordinate_names(m.dim);
      header.emplace_back("member");
      write_csv_header(out.get(), header);
      for (std::size_t i = 0; i < table.data.size(); ++i) {
        auto row = row_of(table.data.point(i));
        row.push_back(m.contains(table.data.point(i)) ? 1.0 : 0.0);
        write_csv_row(out.get(), row);
      }
      return 0;
    }

    if (*score_cmd) {
      const Model m = load_model(score_model);
      const Swarm& s = require_swarm(m, "score");
      const CsvTable table = read_csv_file(score_input, csv.options());
      require_dim(s.dim(), table.data.dim());
      Output out(score_output);
      auto header = coordinate_names(s.dim());
      for (const char* h : {"member", "anomaly_mean", "anomaly_conditional", "no_coverage"})
        header.emplace_back(h);
      write_csv_header(out.get(), header);
      for (std::size_t i = 0; i < table.data.size(); ++i) {
        const Point x = table.data.point(i);
        const ConditionalScore cond = score_conditional(s, x);
        auto row = row_of(x);
        row.push_back(s.contains(x) ? 1.0 : 0.0);
        row.push_back(1.0 - score_mean(s, x));
        row.push_back(1.0 - cond.value);
        row.push_back(cond.no_coverage ? 1.0 : 0.0);
        write_csv_row(out.get(), row);
      }
      return 0;
    }

    if (*abstract_cmd) {
      const auto t0 = std::chrono::steady_clock::now();
      const Model m = load_model(abs_model);
      const CsvTable table = read_csv_file(abs_train, csv.options());
      const AbstractConfig cfg = abs_flags.config(seed);
      AbstractionReport report;
      switch (m.kind) {
        case ModelKind::Swarm:
          report = abstract_swarm(*m.swarm, table.data, cfg);
          break;
        case ModelKind::Tree:
          report = abstract_tree(*m.tree, m.dim, table.data, cfg);
          break;
        case ModelKind::Dnf:
          report = abstract_dnf(*m.dnf, table.data, cfg);
          break;
      }
      Model result = Model::of(report.dnf);
      result.fit_config = m.fit_config;
      result.abstraction = AbstractionParams{cfg.delta_v, cfg.backend, seed};
      result.data_bounds = m.data_bounds ? m.data_bounds : bounds_of(table.data.values(), m.dim);
      if (m.start_point && result.contains(*m.start_point)) result.start_point = m.start_point;
      Output out(abs_output);
      out.get() << serialize_model(result);
      std::fprintf(stderr,
                   "complexity before: %zu\ncomplexity after: %zu\nreduction factor: %.1f\n"
                   "terms: %zu\nwall time: %.3f s\n",
                   report.complexity_before, report.complexity_after, report.reduction_factor(),
                   report.dnf.terms.size(), seconds_since(t0));
      return 0;
    }

    if (*generate_cmd) {
      const Model m = load_model(gen_model);
      const Swarm& s = require_swarm(m, "generate");
      gen_cfg.seed = seed;
      gen_cfg.segment_weighting = gen_weighting == "proportional"
                                      ? SegmentWeighting::ProportionalLength
                                      : SegmentWeighting::InverseLength;
      if (!gen_start.empty()) gen_cfg.start_point = parse_point(gen_start);
      const auto pts = generate(s, gen_cfg);
      Output out(gen_output);
      write_csv_header(out.get(), coordinate_names(s.dim()));
      for (std::size_t i = 0; i < gen_cfg.n_samples; ++i)
        write_csv_row(out.get(), row_of(Point(pts.data() + i * s.dim(), s.dim())));
      return 0;
    }

    if (*range_cmd) {
      const Model m = load_model(range_model);
      const RangeQuery q = RangeQuery::with_fixed(m.dim, parse_fixed(fix));
      IntervalSet result;
      if (m.kind == ModelKind::Swarm) {
        result = range_query(*m.swarm, q);
      } else {
        result = rangefinder(substitute(simplify(m.logic_tree()), m.dim, q.fixed));
      }
      if (result.intervals().empty()) std::cout << "empty\n";
      for (const auto& iv : result.intervals())
        std::cout << "[" << format_double(iv.lo) << ", " << format_double(iv.hi) << "]\n";
      return 0;
    }

    if (*cluster_cmd) {
      const CsvTable table = read_csv_file(cl_input, csv.options());
      cl_fit.seed = seed;
      const AbstractConfig cfg = cl_abs.config(seed);
      const Clustering c = cluster(table.data, cl_fit, cfg);
      {
        Output out(cl_listing);
        for (std::size_t k = 0; k < c.clusters.size(); ++k) {
          std::size_t members = 0;
          for (const auto& a : c.assignment)
            for (std::size_t idx : a) members += idx == k;
          out.get() << "cluster " << k << " (" << members << " points)\n";
          print_polytope(out.get(), c.clusters[k]);
        }
      }
      if (!cl_assign.empty()) {
        Output out(cl_assign);
        out.get() << "point,clusters\n";
        for (std::size_t i = 0; i < c.assignment.size(); ++i) {
          out.get() << i << ',';
          for (std::size_t k = 0; k < c.assignment[i].size(); ++k)
            out.get() << (k ? ";" : "") << c.assignment[i][k];
          out.get() << '\n';
        }
      }
      if (!cl_model.empty()) {
        Model result = Model::of(c.abstraction.dnf);
        result.fit_config = cl_fit;
        result.abstraction = AbstractionParams{cfg.delta_v, cfg.backend, seed};
        result.data_bounds = bounds_of(table.data.values(), table.data.dim());
        save_model(result, cl_model);
      }
      std::fprintf(stderr, "clusters: %zu\nunassigned points: %zu\n", c.clusters.size(),
                   c.unassigned);
      return 0;
    }

    if (*eval_cmd) {
      const Model m = load_model(eval_model);
      std::optional<Model> other;
      std::optional<TruthShape> truth;
      if (std::filesystem::exists(viou_target))
        other = load_model(viou_target);
      else
        truth = TruthShape::parse(viou_target);
      const std::size_t dim = other ? other->dim : truth->dim();
      require_dim(m.dim, dim);

      BoundingBox box;
      if (!eval_bounds.empty()) {
        box = parse_bounds(eval_bounds, m);
      } else {
        std::vector<BoundingBox> parts;
        if (m.data_bounds) parts.push_back(*m.data_bounds);
        if (other && other->data_bounds) parts.push_back(*other->data_bounds);
        if (truth) parts.push_back(truth->extent());
        if (parts.empty()) throw UsageError("no stored bounds; pass --bounds");
        box = parts.front();
        for (const auto& b : parts)
          for (std::size_t j = 0; j < dim; ++j) {
            box[j].lo = std::min(box[j].lo, b[j].lo);
            box[j].hi = std::max(box[j].hi, b[j].hi);
          }
        box = widen(box, 0.1);
      }
      const Membership a = [&m](Point x) { return m.contains(x); };
      const Membership b = [&](Point x) { return other ? other->contains(x) : truth->contains(x); };
      std::cout << "viou: " << format_double(estimate_viou(a, b, box, eval_samples, seed)) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
