#include "doctest.h"
#include "netput/error.hpp"
#include "netput/technology.hpp"
#include "netput/vertices.hpp"
#include "support.hpp"

using namespace netput;

TEST_SUITE("vertices") {

TEST_CASE("unit square") {
  auto v = enumerate_vertices({}, Box{{0, 0}, {1, 1}});
  REQUIRE(v.size() == 4);
  CHECK(v[0] == Vector{0, 0});
  CHECK(v[3] == Vector{1, 1});
}

TEST_CASE("dominating set of the halfspace example") {
  // T_z for z = (-3, 2): u >= z inside T
  std::vector<Halfspace> hs{{{1, 0}, 0}, {{1, 1}, 0}, {{0, 1}, 2}, {{-1, 0}, 3}, {{0, -1}, -2}};
  auto v = enumerate_vertices(hs, Box{{-10, -10}, {10, 10}});
  REQUIRE(v.size() == 2);
  CHECK(v[0][0] == doctest::Approx(-3.0));
  CHECK(v[0][1] == doctest::Approx(2.0));
  CHECK(v[1][0] == doctest::Approx(-2.0));
  CHECK(v[1][1] == doctest::Approx(2.0));

  auto dv = dominating_vertices(testing_support::example_hrep(), {-3, 2});
  REQUIRE(dv.size() == 2);
  CHECK(dv[1][0] == doctest::Approx(-2.0));
}

TEST_CASE("empty polyhedron") {
  std::vector<Halfspace> hs{{{1, 0}, -1}, {{-1, 0}, -1}};
  CHECK(enumerate_vertices(hs, Box{{-5, -5}, {5, 5}}).empty());
}

TEST_CASE("three-dimensional cube cut by a plane") {
  std::vector<Halfspace> hs{{{1, 1, 1}, 1.5}};
  auto v = enumerate_vertices(hs, Box{{0, 0, 0}, {1, 1, 1}});
  // 4 cube corners with sum <= 1 plus 6 edge cuts at sum 1.5
  CHECK(v.size() == 10);
  CHECK_THROWS_AS(enumerate_vertices({}, Box{Vector(4, 0.0), Vector(4, 1.0)}), Error);
}

TEST_CASE("extreme points drop interior combinations") {
  auto e = extreme_points({{0, 0}, {1, 0}, {0, 1}, {0.25, 0.25}, {0.5, 0.5}});
  CHECK(e.size() == 3);
}

TEST_CASE("projected basic points cover the polytope vertices") {
  // square [0,1]^2 written with slack-free rows plus an extra variable
  Polyhedron p(3);
  p.add_row({1, 0, 0}, RowSense::LessEqual, 1);
  p.add_row({0, 1, 0}, RowSense::LessEqual, 1);
  p.add_row({0, 0, 1}, RowSense::Equal, 0.5);
  auto pts = extreme_points(projected_basic_points(p, 2));
  CHECK(pts.size() == 4);
}

TEST_CASE("enumeration budget") {
  Polyhedron p(6);
  for (int i = 0; i < 30; ++i) p.add_row(Vector(6, 1.0), RowSense::LessEqual, 1.0 + i);
  CHECK_THROWS_AS(projected_basic_points(p, 6, 10), Error);
}

}
