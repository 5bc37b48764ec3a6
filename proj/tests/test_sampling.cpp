#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "gstab/gfunction.hpp"
#include "gstab/sampling.hpp"

using namespace gstab;

namespace {

SamplingPlan grid_only(int n) {
  SamplingPlan p;
  p.grid_points_per_dim = n;
  p.random_count = 0;
  p.shells_per_decade = 0;
  p.boundary_layers.clear();
  return p;
}

}  // namespace

TEST_CASE("grid over the unit ball, step 0.25") {
  auto pts = sample_region(Region::ball(1, 1.0), grid_only(9), 0.0);
  std::set<double> got;
  for (const auto& x : pts) got.insert(x[0]);
  CHECK(got == std::set<double>{-0.75, -0.5, -0.25, 0.25, 0.5, 0.75});
}

TEST_CASE("exclusion radius filters a hole around the origin") {
  SamplingPlan p;
  p.grid_points_per_dim = 81;
  p.random_count = 200;
  auto pts = sample_region(Region::box({-1.0}, {1.0}), p, 0.5);
  REQUIRE_FALSE(pts.empty());
  for (const auto& x : pts) CHECK(std::abs(x[0]) > 0.5);
}

TEST_CASE("identical plan and seed give identical streams") {
  SamplingPlan p;
  p.grid_points_per_dim = 21;
  p.random_count = 64;
  p.seed = 1234;
  Region r = Region::ball(2, 1.0);
  auto a = sample_region(r, p);
  auto b = sample_region(r, p);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("origin never sampled with positive exclusion") {
  SamplingPlan p;
  p.grid_points_per_dim = 11;  // odd: grid hits the origin exactly
  p.random_count = 50;
  p.seed = 7;
  auto pts = sample_region(Region::ball(2, 1.0), p);
  for (const auto& x : pts) CHECK(x.norm() > p.exclusion_radius);
}

TEST_CASE("log shells reach the configured floor") {
  SamplingPlan p;
  p.grid_points_per_dim = 0;
  p.random_count = 0;
  p.boundary_layers.clear();
  p.shell_min_radius = 1e-12;
  p.shells_per_decade = 4;
  auto pts = sample_region(Region::ball(1, 1.0), p);
  double smallest = 1e300;
  for (const auto& x : pts) smallest = std::min(smallest, x.norm());
  CHECK(smallest < 1e-11);
  CHECK(smallest > 1e-13);
}

TEST_CASE("boundary layers sit just inside the membership boundary") {
  SamplingPlan p;
  p.grid_points_per_dim = 0;
  p.random_count = 0;
  p.shells_per_decade = 0;
  GFunction g = make_gfunction(BuiltinG::LogNorm, 1);
  p.window = BoxRegion{{-2.0}, {2.0}};
  auto pts =
      sample_region(Region::sublevel(g, ExtendedReal::finite(0.0)), p);
  double closest = 0.0;
  for (const auto& x : pts) closest = std::max(closest, x.norm());
  CHECK(closest > 1.0 - 1e-8);
  CHECK(closest < 1.0);
}

TEST_CASE("empty regions are an error") {
  GFunction g = make_gfunction(BuiltinG::LogNorm, 1);
  Region none = Region::complement(
      Region::sublevel(g, ExtendedReal::finite(10.0)),
      BoxRegion{{-1.0}, {1.0}});
  SamplingPlan p;
  CHECK_THROWS_AS(sample_region(none, p), EmptyRegion);
}

TEST_CASE("unbounded regions need a window") {
  GFunction g = make_gfunction(BuiltinG::LogNorm, 1);
  SamplingPlan p;
  CHECK_THROWS_AS(
      sample_region(Region::sublevel(g, ExtendedReal::finite(0.0)), p),
      PreconditionViolation);
}
