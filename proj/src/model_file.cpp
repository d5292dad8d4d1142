#include "polyra/model_file.hpp"

#include <fstream>
#include <sstream>

#include "polyra/error.hpp"

namespace polyra {

using Json = nlohmann::ordered_json;

namespace {

Json rows_json(const Polytope& p) {
  Json rows = Json::array();
  Json bounds = Json::array();
  for (const auto& h : p.constraints()) {
    rows.push_back(h.normal());
    bounds.push_back(h.bound());
  }
  Json out;
  out["rows"] = std::move(rows);
  out["bounds"] = std::move(bounds);
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw DataError(std::string("model file: missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file: bad field '") + key + "': " + e.what());
  }
}

std::vector<double> numbers(const Json& j, const char* what) {
  try {
    return j.get<std::vector<double>>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("model file: ") + what + " must be an array of numbers");
  }
}

Polytope polytope_from(const Json& j, std::size_t dim) {
  const Json& rows = field(j, "rows");
  const std::vector<double> bounds = numbers(field(j, "bounds"), "bounds");
  if (!rows.is_array() || rows.size() != bounds.size())
    throw DataError("model file: rows and bounds differ in length");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    auto normal = numbers(rows[i], "constraint row");
    require_dim(dim, normal.size());
    hs.emplace_back(std::move(normal), bounds[i]);
  }
  return Polytope(dim, std::move(hs));
}

Json box_json(const BoundingBox& box) {
  Json out = Json::array();
  for (const auto& r : box) out.push_back({r.lo, r.hi});
  return out;
}

BoundingBox box_from(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw DataError("model file: data_bounds needs one pair per dim");
  BoundingBox box;
  for (const auto& r : j) {
    const auto pair = numbers(r, "data_bounds entry");
    if (pair.size() != 2) throw DataError("model file: data_bounds entries are [lo, hi]");
    box.push_back({pair[0], pair[1]});
  }
  return box;
}

const char* backend_name(AbstractBackend b) { return b == AbstractBackend::LP ? "lp" : "sampling"; }

Json fit_json(const FitConfig& c) {
  Json j;
  j["adim"] = c.adim;
  j["bdim"] = c.bdim;
  j["n_models"] = c.n_models;
  j["extend"] = c.extend;
  j["minpoi"] = c.minpoi;
  j["quantile"] = c.quantile;
  j["subsample"] = c.subsample;
  j["seed"] = c.seed;
  j["max_reject_factor"] = c.max_reject_factor;
  return j;
}

FitConfig fit_from(const Json& j) {
  FitConfig c;
  c.adim = get<int>(j, "adim");
  c.bdim = get<int>(j, "bdim");
  c.n_models = get<int>(j, "n_models");
  c.extend = get<double>(j, "extend");
  c.minpoi = get<int>(j, "minpoi");
  c.quantile = get<double>(j, "quantile");
  c.subsample = get<double>(j, "subsample");
  c.seed = get<std::uint64_t>(j, "seed");
  c.max_reject_factor = get<int>(j, "max_reject_factor");
  return c;
}

ModelKind kind_from(const std::string& s) {
  if (s == "swarm") return ModelKind::Swarm;
  if (s == "dnf") return ModelKind::Dnf;
  if (s == "tree") return ModelKind::Tree;
  throw DataError("model file: unknown kind '" + s + "'");
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Swarm:
      return "swarm";
    case ModelKind::Dnf:
      return "dnf";
    case ModelKind::Tree:
      return "tree";
  }
  return "?";
}

Model Model::of(Swarm s) {
  Model m;
  m.kind = ModelKind::Swarm;
  m.dim = s.dim();
  m.fit_config = s.fit_config();
  m.data_bounds = s.data_bounds();
  m.start_point = s.start_point();
  m.swarm = std::move(s);
  return m;
}

Model Model::of(DnfForm d) {
  Model m;
  m.kind = ModelKind::Dnf;
  m.dim = d.dim;
  m.dnf = std::move(d);
  return m;
}

Model Model::of(LogicNode t, std::size_t dim) {
  Model m;
  m.kind = ModelKind::Tree;
  m.dim = dim;
  m.tree = std::move(t);
  return m;
}

bool Model::contains(Point x) const {
  require_dim(dim, x.size());
  switch (kind) {
    case ModelKind::Swarm:
      return swarm->contains(x);
    case ModelKind::Dnf:
      return dnf->contains(x);
    case ModelKind::Tree:
      return eval_tree(*tree, x);
  }
  return false;
}

LogicNode Model::logic_tree() const {
  switch (kind) {
    case ModelKind::Swarm:
      return swarm_to_tree(*swarm);
    case ModelKind::Dnf:
      return dnf->to_tree();
    case ModelKind::Tree:
      return *tree;
  }
  return LogicNode::constant(false);
}

std::size_t Model::complexity() const {
  return kind == ModelKind::Dnf ? dnf->node_count() : logic_tree().node_count();
}

Json to_json(const LogicNode& t) {
  Json j;
  switch (t.kind()) {
    case LogicNode::Kind::True:
      j["op"] = "true";
      break;
    case LogicNode::Kind::False:
      j["op"] = "false";
      break;
    case LogicNode::Kind::Leaf:
      j["op"] = "leaf";
      j["normal"] = t.halfspace().normal();
      j["bound"] = t.halfspace().bound();
      break;
    case LogicNode::Kind::Not:
    case LogicNode::Kind::And:
    case LogicNode::Kind::Or: {
      j["op"] = t.kind() == LogicNode::Kind::Not ? "not"
                : t.kind() == LogicNode::Kind::And ? "and"
                                                   : "or";
      Json children = Json::array();
      for (const auto& c : t.children()) children.push_back(to_json(c));
      j["children"] = std::move(children);
      break;
    }
  }
  return j;
}

LogicNode logic_from_json(const Json& j, std::size_t dim) {
  const auto op = get<std::string>(j, "op");
  if (op == "true") return LogicNode::constant(true);
  if (op == "false") return LogicNode::constant(false);
  if (op == "leaf") {
    auto normal = numbers(field(j, "normal"), "leaf normal");
    require_dim(dim, normal.size());
    return LogicNode::leaf(Halfspace(std::move(normal), get<double>(j, "bound")));
  }
  const Json& cj = field(j, "children");
  if (!cj.is_array()) throw DataError("model file: children must be an array");
  std::vector<LogicNode> children;
  for (const auto& c : cj) children.push_back(logic_from_json(c, dim));
  if (op == "not") {
    if (children.size() != 1) throw DataError("model file: not takes exactly one child");
    return LogicNode::negation(std::move(children.front()));
  }
  if (op == "and") return LogicNode::conjunction(std::move(children));
  if (op == "or") return LogicNode::disjunction(std::move(children));
  throw DataError("model file: unknown op '" + op + "'");
}

Json to_json(const Model& m) {
  Json j;
  j["format_version"] = kModelFormatVersion;
  j["kind"] = to_string(m.kind);
  j["dim"] = m.dim;
  Json hyper = Json::object();
  if (m.fit_config) hyper["fit"] = fit_json(*m.fit_config);
  if (m.abstraction) {
    hyper["abstraction"]["delta_v"] = m.abstraction->delta_v;
    hyper["abstraction"]["backend"] = backend_name(m.abstraction->backend);
    hyper["abstraction"]["seed"] = m.abstraction->seed;
  }
  j["hyperparameters"] = std::move(hyper);
  if (m.data_bounds) j["data_bounds"] = box_json(*m.data_bounds);
  if (m.start_point) j["start_point"] = *m.start_point;

  Json payload;
  switch (m.kind) {
    case ModelKind::Swarm: {
      Json shapes = Json::array();
      for (const auto& b : m.swarm->base_shapes()) {
        Json shape;
        shape["condition"] = rows_json(b.condition());
        shape["consequent"] = rows_json(b.consequent());
        shapes.push_back(std::move(shape));
      }
      payload["base_shapes"] = std::move(shapes);
      break;
    }
    case ModelKind::Dnf: {
      Json terms = Json::array();
      for (const auto& t : m.dnf->terms) terms.push_back(rows_json(t));
      payload["terms"] = std::move(terms);
      break;
    }
    case ModelKind::Tree:
      payload["tree"] = to_json(*m.tree);
      break;
  }
  j["payload"] = std::move(payload);
  return j;
}

Model model_from_json(const Json& j) {
  const int version = get<int>(j, "format_version");
  if (version != kModelFormatVersion)
    throw DataError("model file: unsupported format_version " + std::to_string(version));
  Model m;
  m.kind = kind_from(get<std::string>(j, "kind"));
  m.dim = get<std::size_t>(j, "dim");
  if (m.dim == 0) throw DataError("model file: dim must be at least 1");

  const Json& hyper = field(j, "hyperparameters");
  if (hyper.contains("fit")) m.fit_config = fit_from(hyper.at("fit"));
  if (hyper.contains("abstraction")) {
    const Json& a = hyper.at("abstraction");
    AbstractionParams p;
    p.delta_v = get<double>(a, "delta_v");
    const auto backend = get<std::string>(a, "backend");
    if (backend != "lp" && backend != "sampling")
      throw DataError("model file: unknown backend '" + backend + "'");
    p.backend = backend == "lp" ? AbstractBackend::LP : AbstractBackend::Sampling;
    p.seed = get<std::uint64_t>(a, "seed");
    m.abstraction = p;
  }
  if (j.contains("data_bounds")) m.data_bounds = box_from(j.at("data_bounds"), m.dim);
  if (j.contains("start_point")) {
    m.start_point = numbers(j.at("start_point"), "start_point");
    require_dim(m.dim, m.start_point->size());
  }

  const Json& payload = field(j, "payload");
  switch (m.kind) {
    case ModelKind::Swarm: {
      std::vector<BaseShape> shapes;
      for (const auto& b : field(payload, "base_shapes"))
        shapes.emplace_back(polytope_from(field(b, "condition"), m.dim),
                            polytope_from(field(b, "consequent"), m.dim));
      const BoundingBox bounds =
          m.data_bounds ? *m.data_bounds : BoundingBox(m.dim, FeatureRange{0.0, 0.0});
      m.swarm = Swarm(m.dim, std::move(shapes), bounds, m.fit_config, m.start_point);
      break;
    }
    case ModelKind::Dnf: {
      DnfForm d{m.dim, {}};
      for (const auto& t : field(payload, "terms")) d.terms.push_back(polytope_from(t, m.dim));
      m.dnf = std::move(d);
      break;
    }
    case ModelKind::Tree:
      m.tree = logic_from_json(field(payload, "tree"), m.dim);
      break;
  }
  return m;
}

std::string serialize_model(const Model& m) { return to_json(m).dump() + "\n"; }

Model parse_model(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  return model_from_json(j);
}

void save_model(const Model& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << serialize_model(m);
  if (!out) throw DataError("failed writing '" + path + "'");
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace polyra
