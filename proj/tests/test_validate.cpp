#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gstab/validate.hpp"

using namespace gstab;

namespace {

SamplingPlan validator_plan(std::uint64_t seed = 21) {
  SamplingPlan p;
  p.grid_points_per_dim = 81;
  p.random_count = 200;
  p.seed = seed;
  return p;
}

// Shell radii down to 1e-12 cannot push ln(norm) anywhere near the stock
// floor of -1e3, so screening the slowly diverging entries uses a floor
// consistent with the smallest representable shells.
ValidatorOptions log_scale_options() {
  ValidatorOptions o;
  o.neg_inf_floor = -20.0;
  return o;
}

}  // namespace

TEST_CASE("catalog entries pass the validator") {
  for (BuiltinG id :
       {BuiltinG::LogNorm, BuiltinG::LogOverNorm, BuiltinG::PiecewiseLogNorm,
        BuiltinG::LogNormL1}) {
    GFunction g = make_gfunction(id, 2);
    ValidationReport rep = validate_gfunction(g, Region::ball(2, 2.0),
                                              validator_plan(),
                                              log_scale_options());
    INFO(g.label);
    CHECK(rep.overall);
  }
  for (BuiltinG id : {BuiltinG::NegSinc, BuiltinG::NegCosExp}) {
    GFunction g = make_gfunction(id, 2);
    ValidationReport rep =
        validate_gfunction(g, Region::ball(2, 2.0), validator_plan());
    INFO(g.label);
    CHECK(rep.overall);
  }

  // the sinc entry over its natural half-period window
  GFunction s = make_gfunction(BuiltinG::NegSinc, 1);
  CHECK(validate_gfunction(s, Region::ball(1, 3.14159265358979323846),
                           validator_plan())
            .overall);
}

TEST_CASE("a pole away from the origin trips the blow-up screen") {
  GFunction g;
  g.dim = 2;
  g.min_level = ExtendedReal::finite(2.0);  // 1/dist(0, x*) with x*=(0.5,0.5)
  g.eval = [](const StateVector& x) {
    double dx = x[0] - 0.5, dy = x[1] - 0.5;
    double d = std::sqrt(dx * dx + dy * dy);
    if (d == 0.0) throw NonFiniteOutput("pole");
    return ExtendedReal::from_eval(1.0 / d);
  };
  ValidationReport rep =
      validate_gfunction(g, Region::ball(2, 2.0), validator_plan());
  CHECK_FALSE(rep.overall);
  CHECK_FALSE(rep.no_blowup.passed);
  CHECK(rep.no_blowup.witness.has_value());
}

TEST_CASE("a minimum away from the origin trips the first screen") {
  GFunction g;
  g.dim = 1;
  g.min_level = ExtendedReal::finite(0.0);  // claims min at origin
  g.eval = [](const StateVector& x) {
    double r = x.norm();
    return ExtendedReal::finite(r * r - r);  // true minimum at r = 1/2
  };
  ValidationReport rep =
      validate_gfunction(g, Region::ball(1, 2.0), validator_plan());
  CHECK_FALSE(rep.overall);
  CHECK_FALSE(rep.min_at_origin.passed);
  REQUIRE(rep.min_at_origin.witness.has_value());
  CHECK(eval_g(g, *rep.min_at_origin.witness) < ExtendedReal::finite(0.0));
  CHECK(rep.no_blowup.passed);
}

TEST_CASE("a bounded impostor cannot claim a -inf limit") {
  GFunction g;
  g.dim = 1;
  g.min_level = ExtendedReal::neg_inf();  // claimed, but g >= -1
  g.eval = [](const StateVector& x) {
    return ExtendedReal::finite(-1.0 / (1.0 + x.norm()));
  };
  ValidationReport rep = validate_gfunction(g, Region::ball(1, 2.0),
                                            validator_plan(),
                                            log_scale_options());
  CHECK_FALSE(rep.overall);
  CHECK_FALSE(rep.min_at_origin.passed);
}

TEST_CASE("validator window must be usable") {
  GFunction g = make_gfunction(BuiltinG::LogNorm, 1);
  SamplingPlan p = validator_plan();
  CHECK_THROWS_AS(validate_gfunction(g, Region::all(1), p),
                  PreconditionViolation);
  CHECK_THROWS_AS(
      validate_gfunction(g, Region::box({1.0}, {2.0}), p),
      PreconditionViolation);
}
