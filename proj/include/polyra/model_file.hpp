#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyra/abstraction.hpp"
#include "polyra/geometry.hpp"
#include "polyra/logic.hpp"

namespace polyra {

inline constexpr int kModelFormatVersion = 1;

enum class ModelKind { Swarm, Dnf, Tree };

std::string to_string(ModelKind kind);

struct AbstractionParams {
  double delta_v = 0.05;
  AbstractBackend backend = AbstractBackend::Sampling;
  std::uint64_t seed = 0;
  friend bool operator==(const AbstractionParams&, const AbstractionParams&) = default;
};

// Exactly one of swarm / dnf / tree is set, matching kind.
struct Model {
  ModelKind kind = ModelKind::Swarm;
  std::size_t dim = 1;
  std::optional<FitConfig> fit_config;
  std::optional<AbstractionParams> abstraction;
  std::optional<BoundingBox> data_bounds;
  std::optional<std::vector<double>> start_point;
  std::optional<Swarm> swarm;
  std::optional<DnfForm> dnf;
  std::optional<LogicNode> tree;

  static Model of(Swarm s);
  static Model of(DnfForm d);
  static Model of(LogicNode t, std::size_t dim);

  bool contains(Point x) const;
  LogicNode logic_tree() const;
  // Node count of the logic representation.
  std::size_t complexity() const;

  friend bool operator==(const Model&, const Model&) = default;
};

nlohmann::ordered_json to_json(const LogicNode& t);
LogicNode logic_from_json(const nlohmann::ordered_json& j, std::size_t dim);

nlohmann::ordered_json to_json(const Model& m);
Model model_from_json(const nlohmann::ordered_json& j);

// Compact JSON text with a trailing newline.
std::string serialize_model(const Model& m);
Model parse_model(const std::string& text);

void save_model(const Model& m, const std::string& path);
Model load_model(const std::string& path);

}  // namespace polyra
