#include "polyra/shapes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polyra/error.hpp"
#include "polyra/hit_and_run.hpp"

namespace polyra {

TruthShape::TruthShape(Kind kind, std::vector<double> params, BoundingBox extent)
    : kind_(kind), params_(std::move(params)), extent_(std::move(extent)) {}

TruthShape TruthShape::box(BoundingBox extent) {
  if (extent.empty()) throw UsageError("box needs at least one dimension");
  for (const auto& r : extent)
    if (!(r.lo < r.hi)) throw UsageError("box needs lo < hi in every dimension");
  return TruthShape(Kind::Box, {}, std::move(extent));
}

TruthShape TruthShape::diamond(double cx, double cy, double radius) {
  if (!(radius > 0)) throw UsageError("diamond radius must be positive");
  return TruthShape(Kind::Diamond, {cx, cy, radius},
                    {{cx - radius, cx + radius}, {cy - radius, cy + radius}});
}

TruthShape TruthShape::disc(double cx, double cy, double radius) {
  if (!(radius > 0)) throw UsageError("disc radius must be positive");
  return TruthShape(Kind::Disc, {cx, cy, radius},
                    {{cx - radius, cx + radius}, {cy - radius, cy + radius}});
}

TruthShape TruthShape::annulus(double cx, double cy, double inner, double outer) {
  if (!(inner >= 0 && outer > inner)) throw UsageError("annulus needs 0 <= inner < outer");
  return TruthShape(Kind::Annulus, {cx, cy, inner, outer},
                    {{cx - outer, cx + outer}, {cy - outer, cy + outer}});
}

TruthShape TruthShape::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("truth shape must look like kind:v1,v2,...");
  const std::string kind = text.substr(0, colon);
  std::vector<double> v;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("truth shape parameter '" + item + "' is not a number");
    }
  }
  auto need = [&](std::size_t n) {
    if (v.size() != n)
      throw UsageError(kind + " takes " + std::to_string(n) + " parameters, got " +
                       std::to_string(v.size()));
  };
  if (kind == "box") {
    if (v.empty() || v.size() % 2 != 0) throw UsageError("box takes lo,hi pairs");
    BoundingBox extent;
    for (std::size_t i = 0; i < v.size(); i += 2) extent.push_back({v[i], v[i + 1]});
    return box(std::move(extent));
  }
  if (kind == "diamond") {
    need(3);
    return diamond(v[0], v[1], v[2]);
  }
  if (kind == "disc") {
    need(3);
    return disc(v[0], v[1], v[2]);
  }
  if (kind == "annulus") {
    need(4);
    return annulus(v[0], v[1], v[2], v[3]);
  }
  throw UsageError("unknown truth shape '" + kind + "' (box, diamond, disc, annulus)");
}

bool TruthShape::contains(Point x) const {
  require_dim(dim(), x.size());
  switch (kind_) {
    case Kind::Box:
      return box_contains(extent_, x);
    case Kind::Diamond:
      return std::abs(x[0] - params_[0]) + std::abs(x[1] - params_[1]) <= params_[2];
    case Kind::Disc:
      return std::hypot(x[0] - params_[0], x[1] - params_[1]) <= params_[2];
    case Kind::Annulus: {
      const double r = std::hypot(x[0] - params_[0], x[1] - params_[1]);
      return r >= params_[2] && r <= params_[3];
    }
  }
  return false;
}

double TruthShape::volume() const {
  switch (kind_) {
    case Kind::Box: {
      double v = 1.0;
      for (const auto& r : extent_) v *= r.hi - r.lo;
      return v;
    }
    case Kind::Diamond:
      return 2.0 * params_[2] * params_[2];
    case Kind::Disc:
      return std::numbers::pi * params_[2] * params_[2];
    case Kind::Annulus:
      return std::numbers::pi * (params_[3] * params_[3] - params_[2] * params_[2]);
  }
  return 0.0;
}

std::vector<double> TruthShape::sample(std::size_t n, Rng& rng) const {
  std::vector<double> out;
  out.reserve(n * dim());
  std::vector<double> x(dim());
  while (out.size() < n * dim()) {
    sample_box(extent_, rng, x);
    if (contains(x)) out.insert(out.end(), x.begin(), x.end());
  }
  return out;
}

}  // namespace polyra
