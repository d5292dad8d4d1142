#include "doctest.h"
#include "polyra/error.hpp"
#include "polyra/geometry.hpp"
#include "polyra/random.hpp"

using namespace polyra;

namespace {

Polytope unit_square() {
  return Polytope(2, {Halfspace({1, 0}, 1), Halfspace({-1, 0}, 0), Halfspace({0, 1}, 1),
                      Halfspace({0, -1}, 0)});
}

BoundingBox box2() { return {{0, 1}, {0, 1}}; }

std::vector<double> pt(double x, double y) { return {x, y}; }

}  // namespace

TEST_CASE("polytope membership") {
  const Polytope sq = unit_square();
  CHECK(polytope_contains(sq, pt(0.5, 0.5)));
  CHECK_FALSE(polytope_contains(sq, pt(2, 0)));
  CHECK(polytope_contains(Polytope(2), pt(1e9, -1e9)));
}

TEST_CASE("boundary points are members") {
  const Polytope sq = unit_square();
  CHECK(sq.contains(pt(1, 1)));
  CHECK(sq.contains(pt(0, 0.3)));
  CHECK_FALSE(sq.contains(pt(1.0000001, 0.5)));
}

TEST_CASE("dimension mismatch throws") {
  const Polytope sq = unit_square();
  const std::vector<double> p3 = {0, 0, 0};
  CHECK_THROWS_AS(sq.contains(p3), DimensionMismatch);
  CHECK_THROWS_AS(Polytope(3, {Halfspace({1, 0}, 1)}), DimensionMismatch);
  CHECK_THROWS_AS(BaseShape(Polytope(2), Polytope(3)), DimensionMismatch);
}

TEST_CASE("halfspace rejects non-finite entries") {
  CHECK_THROWS_AS(Halfspace({}, 0.0), DataError);
  CHECK_THROWS_AS(Halfspace({1.0}, INFINITY), DataError);
  CHECK_THROWS_AS(Halfspace({NAN}, 0.0), DataError);
}

TEST_CASE("base shape is an implication") {
  // A: x <= 0.5, B: y <= 0.5
  const BaseShape f(Polytope(2, {Halfspace({1, 0}, 0.5)}), Polytope(2, {Halfspace({0, 1}, 0.5)}));
  CHECK(base_shape_eval(f, pt(0.9, 0.9)));   // outside A
  CHECK(base_shape_eval(f, pt(0.1, 0.1)));   // in A and B
  CHECK_FALSE(base_shape_eval(f, pt(0.1, 0.9)));  // in A, not B
}

TEST_CASE("swarm is the conjunction of its base shapes") {
  const BaseShape a(Polytope(2, {Halfspace({1, 0}, 0.5)}), Polytope(2, {Halfspace({0, 1}, 0.5)}));
  const BaseShape b(Polytope(2, {Halfspace({0, 1}, 0.5)}), Polytope(2, {Halfspace({1, 0}, 0.2)}));
  const Swarm s(2, {a, b}, box2());
  CHECK(swarm_contains(s, pt(0.1, 0.1)));
  CHECK(swarm_contains(s, pt(0.9, 0.9)));
  CHECK_FALSE(swarm_contains(s, pt(0.3, 0.1)));  // b fails only
  CHECK(swarm_contains(Swarm(2, {}, box2()), pt(123, -4)));
}

TEST_CASE("swarm validates its shapes and bounds") {
  const BaseShape three(Polytope(3), Polytope(3));
  CHECK_THROWS_AS(Swarm(2, {three}, box2()), DimensionMismatch);
  CHECK_THROWS(Swarm(2, {}, {{0, 1}}));
  CHECK_THROWS(Swarm(2, {}, {{1, 0}, {0, 1}}));
}

TEST_CASE("merge") {
  const BaseShape a(Polytope(2, {Halfspace({1, 0}, 0.5)}), Polytope(2, {Halfspace({0, 1}, 0.5)}));
  const BaseShape b(Polytope(2, {Halfspace({0, 1}, 0.5)}), Polytope(2, {Halfspace({1, 0}, 0.2)}));
  const Swarm s1(2, {a}, {{0, 1}, {0, 1}});
  const Swarm s2(2, {b}, {{-1, 0.5}, {0.2, 3}});

  SUBCASE("concatenates shapes and unites bounds") {
    const Swarm m = swarm_merge(s1, s2);
    REQUIRE(m.size() == 2);
    CHECK(m.base_shapes()[0] == a);
    CHECK(m.base_shapes()[1] == b);
    CHECK(m.data_bounds() == BoundingBox{{-1, 1}, {0, 3}});
  }
  SUBCASE("empty swarm is the identity") {
    const Swarm m = swarm_merge(s1, Swarm(2, {}, box2()));
    Rng rng = make_stream(1, 0);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 1000; ++i) {
      const auto p = pt(u(rng), u(rng));
      CHECK(m.contains(p) == s1.contains(p));
    }
  }
  SUBCASE("member of one swarm only is not a member") {
    const auto p = pt(0.3, 0.1);
    REQUIRE(s1.contains(p));
    REQUIRE_FALSE(s2.contains(p));
    CHECK_FALSE(swarm_merge(s1, s2).contains(p));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(swarm_merge(s1, Swarm(3, {}, {{0, 1}, {0, 1}, {0, 1}})), DimensionMismatch);
  }
}

TEST_CASE("bounding boxes") {
  const std::vector<double> rows = {0, 5, 2, -1, 1, 3};
  const BoundingBox b = bounds_of(rows, 2);
  CHECK(b == BoundingBox{{0, 2}, {-1, 5}});
  const BoundingBox w = widen(b, 0.1);
  CHECK(w[0].lo == doctest::Approx(-0.2));
  CHECK(w[1].hi == doctest::Approx(5.6));
  // Zero-width features still get a non-degenerate box.
  const BoundingBox flat = widen({{3, 3}}, 0.1);
  CHECK(flat[0].lo < 3);
  CHECK(flat[0].hi > 3);
  CHECK(box_contains(b, pt(1, 0)));
  CHECK_FALSE(box_contains(b, pt(3, 0)));
}
