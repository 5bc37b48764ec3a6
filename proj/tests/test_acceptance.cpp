// Acceptance suite: one test case per criterion, each printing one
// PASS/FAIL line. Run via ctest or directly.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <iostream>

#include "gstab/gstab.hpp"
#include "property_suite.hpp"

using namespace gstab;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CriterionLine {
  std::string name;
  bool ok = false;
  ~CriterionLine() {
    std::cout << "[acceptance] " << name << ": " << (ok ? "PASS" : "FAIL")
              << std::endl;
  }
};

}  // namespace

TEST_CASE("criterion 1: unit-interval contraction is certified fast") {
  CriterionLine line{"criterion 1 (sine-tanh certificate, >=1e4 samples, <5s)"};

  SamplingPlan plan;
  plan.grid_points_per_dim = 20001;
  plan.random_count = 0;
  plan.seed = 1;
  plan.shell_min_radius = 1e-12;
  plan.window = BoxRegion{{-1.5}, {1.5}};

  GFunction g = make_gfunction(BuiltinG::LogOverNorm, 1);
  DiscreteSystem sys = make_sine_tanh();

  auto t0 = std::chrono::steady_clock::now();
  CheckReport rep =
      check_decrease_inside(g, sys, ExtendedReal::finite(0.0), plan);
  auto t1 = std::chrono::steady_clock::now();
  double seconds = std::chrono::duration<double>(t1 - t0).count();

  REQUIRE(rep.samples_tested >= 10000);
  REQUIRE(rep.passed());
  REQUIRE(rep.violation_count == 0);
  REQUIRE(rep.margin_max.has_value());
  REQUIRE(*rep.margin_max < ExtendedReal::finite(0.0));
  REQUIRE(seconds < 5.0);
  line.ok = true;
}

TEST_CASE("criterion 2: sinc certificate and range facts") {
  CriterionLine line{"criterion 2 (sinc range facts + certificate)"};

  DiscreteSystem sys = make_sine_sec_cubed();
  GFunction g = make_gfunction(BuiltinG::NegSinc, 1);

  SamplingPlan range_plan;
  range_plan.grid_points_per_dim = 10001;
  range_plan.random_count = 256;
  range_plan.seed = 2;
  range_plan.shell_min_radius = 1e-9;
  auto half = sample_region(Region::ball(1, kPi / 2.0), range_plan);

  // (a) the map's supremum on the half-interval
  double fmax = 0.0;
  for (const auto& x : half) fmax = std::max(fmax, std::abs(step(sys, x)[0]));
  REQUIRE_THAT(fmax, Catch::Matchers::WithinAbs(4.0 / (3.0 * std::sqrt(3.0)),
                                                1e-6));

  // (b) -1 <= -sin(x)/x <= -2/pi on the half-interval
  for (const auto& x : half) {
    double v = eval_g(g, x).value();
    REQUIRE(v >= -1.0 - 1e-12);
    REQUIRE(v <= -2.0 / kPi + 1e-12);
  }

  // (c) strict decrease on the sub-level set at level -2/pi
  SamplingPlan plan;
  plan.grid_points_per_dim = 10001;
  plan.random_count = 256;
  plan.seed = 2;
  plan.shell_min_radius = 1e-6;  // below ~1e-8 the sinc rounds to 1 in double
  plan.window = BoxRegion{{-2.0}, {2.0}};
  CheckReport rep = check_decrease_inside(
      g, sys, ExtendedReal::finite(-2.0 / kPi), plan);
  REQUIRE(rep.passed());
  REQUIRE(rep.violation_count == 0);
  line.ok = true;
}

TEST_CASE("criterion 3: global-stability threshold behavior in 2-d") {
  CriterionLine line{"criterion 3 (gauss-product threshold at 1-1/sqrt(2e))"};

  const double threshold = 1.0 - 1.0 / std::sqrt(2.0 * std::exp(1.0));
  REQUIRE_THAT(threshold, Catch::Matchers::WithinAbs(0.57112, 5e-6));

  GFunction g = make_gfunction(BuiltinG::LogNormL1, 2);
  SamplingPlan plan;
  plan.grid_points_per_dim = 801;
  plan.random_count = 20000;
  plan.seed = 42;
  std::vector<BoxRegion> windows = {
      BoxRegion{{-1.0, -1.0}, {1.0, 1.0}},
      BoxRegion{{-10.0, -10.0}, {10.0, 10.0}},
      BoxRegion{{-100.0, -100.0}, {100.0, 100.0}},
  };

  // below the threshold: every window certifies
  GlobalCheckReport below =
      check_global(g, make_gauss_product(0.5), windows, plan);
  REQUIRE(below.merged.passed());

  // above: the largest window exposes a counterexample
  DiscreteSystem sys06 = make_gauss_product(0.6);
  GlobalCheckReport above = check_global(g, sys06, windows, plan);
  REQUIRE_FALSE(above.merged.passed());
  REQUIRE(above.per_window[0].passed());
  REQUIRE(above.per_window[1].passed());
  REQUIRE_FALSE(above.per_window[2].passed());

  // the named witness recomputes to a positive one-step change
  StateVector witness{50.0, 1.0 / std::sqrt(2.0)};
  double dg = delta_g(g, sys06, witness).value();
  double closed_form =
      std::log(50.0 / (50.0 + 1.0 / std::sqrt(2.0))) +
      std::log(std::exp(-0.5) / std::sqrt(2.0) + 0.6);
  REQUIRE(dg > 0.0);
  REQUIRE_THAT(dg, Catch::Matchers::WithinAbs(0.0145, 1e-3));
  REQUIRE_THAT(dg, Catch::Matchers::WithinAbs(closed_form, 1e-12));
  line.ok = true;
}

TEST_CASE("criterion 4: exact domain for the radial family at alpha = 0") {
  CriterionLine line{"criterion 4 (norm-shell exact domain + trajectories)"};

  GFunction g = make_gfunction(BuiltinG::LogNorm, 1);
  for (NormShellMap choice :
       {NormShellMap::Quadratic, NormShellMap::ExpShift}) {
    DiscreteSystem sys = make_norm_shell(0.0, choice);

    SamplingPlan inside_plan;
    inside_plan.grid_points_per_dim = 8001;
    inside_plan.random_count = 256;
    inside_plan.seed = 4;
    inside_plan.window = BoxRegion{{-2.0}, {2.0}};
    CheckReport in =
        check_decrease_inside(g, sys, ExtendedReal::finite(0.0), inside_plan);
    REQUIRE(in.passed());
    REQUIRE(*in.margin_max < ExtendedReal::finite(0.0));

    CheckReport outp = check_nondecrease_outside(
        g, sys, ExtendedReal::finite(0.0), BoxRegion{{-3.0}, {3.0}},
        inside_plan);
    REQUIRE(outp.passed());
    REQUIRE_FALSE(*outp.margin_min < ExtendedReal::finite(0.0));

    SamplingPlan search_plan = inside_plan;
    search_plan.grid_points_per_dim = 4001;
    search_plan.window = BoxRegion{{-3.0}, {3.0}};
    LevelSearchOptions opts;
    opts.iterations = 40;
    LevelSearchReport found = search_largest_level(
        g, sys, ExtendedReal::finite(-5.0), 2.0, search_plan, opts);
    REQUIRE(found.best.has_value());
    REQUIRE(std::abs(*found.best) <= 2e-3);
    REQUIRE_FALSE(found.non_monotonic);

    SimParams conv;
    conv.max_steps = 1000000;
    conv.conv_tol = 1e-6;
    TrajectoryRecord stable =
        simulate(sys, StateVector{0.999999999}, conv);
    REQUIRE(std::holds_alternative<Converged>(stable.classification));

    SimParams div;
    div.max_steps = 100000;
    div.div_bound = 1e9;
    TrajectoryRecord unstable =
        simulate(sys, StateVector{1.00000001}, div);
    REQUIRE_FALSE(std::holds_alternative<Converged>(unstable.classification));
    for (const auto& x : unstable.states) REQUIRE(x.norm() >= 1.0);
  }
  line.ok = true;
}

TEST_CASE("criterion 5: invariance oracles for every certified set") {
  CriterionLine line{"criterion 5 (brute-force invariance, lemmas at work)"};

  struct Config {
    DiscreteSystem sys;
    GFunction g;
    std::vector<double> zetas;
    SamplingPlan plan;
  };
  auto plan_1d = [](double halfwidth, int grid, std::uint64_t seed) {
    SamplingPlan p;
    p.grid_points_per_dim = grid;
    p.random_count = 128;
    p.seed = seed;
    p.window = BoxRegion{{-halfwidth}, {halfwidth}};
    return p;
  };

  std::vector<Config> configs;
  configs.push_back({make_sine_tanh(),
                     make_gfunction(BuiltinG::LogOverNorm, 1),
                     {-2.0, -1.5, -1.0, -0.5, 0.0},
                     plan_1d(1.5, 4001, 51)});
  {
    const double lam = -2.0 / kPi;
    std::vector<double> zetas;
    for (int k = 1; k <= 5; ++k) {
      zetas.push_back(-1.0 + (lam + 1.0) * static_cast<double>(k) / 5.0);
    }
    configs.push_back({make_sine_sec_cubed(),
                       make_gfunction(BuiltinG::NegSinc, 1), zetas,
                       plan_1d(2.0, 4001, 52)});
  }
  {
    SamplingPlan p2;
    p2.grid_points_per_dim = 201;
    p2.random_count = 256;
    p2.seed = 53;
    p2.window = BoxRegion{{-3.0, -3.0}, {3.0, 3.0}};
    configs.push_back({make_gauss_product(0.5),
                       make_gfunction(BuiltinG::LogNormL1, 2),
                       {-1.5, -1.0, -0.5, -0.25, 0.0}, p2});
  }
  configs.push_back({make_norm_shell(0.0, NormShellMap::Quadratic),
                     make_gfunction(BuiltinG::LogNorm, 1),
                     {-2.0, -1.5, -1.0, -0.5, 0.0},
                     plan_1d(2.0, 8001, 54)});
  configs.push_back({make_norm_shell(0.0, NormShellMap::ExpShift),
                     make_gfunction(BuiltinG::LogNorm, 1),
                     {-2.0, -1.5, -1.0, -0.5, 0.0},
                     plan_1d(2.0, 8001, 55)});

  for (const auto& c : configs) {
    for (double z : c.zetas) {
      CheckReport rep =
          check_invariance(c.g, c.sys, ExtendedReal::finite(z), c.plan, 100,
                           InvarianceSet::SubLevelSet);
      INFO(c.sys.label << " zeta=" << z);
      REQUIRE(rep.samples_tested >= 100);
      REQUIRE(rep.passed());
    }
  }

  // complement of the exact domain stays invariant too
  for (NormShellMap choice :
       {NormShellMap::Quadratic, NormShellMap::ExpShift}) {
    CheckReport rep = check_invariance(
        make_gfunction(BuiltinG::LogNorm, 1), make_norm_shell(0.0, choice),
        ExtendedReal::finite(0.0), plan_1d(3.0, 2001, 56), 100,
        InvarianceSet::ComplementSet);
    REQUIRE(rep.samples_tested >= 100);
    REQUIRE(rep.passed());
    REQUIRE(rep.violation_count == 0);
  }
  line.ok = true;
}

TEST_CASE("criterion 6: class-K decrease envelopes") {
  CriterionLine line{"criterion 6 (class-K envelopes strictly positive)"};

  auto check_fit = [](const ClassKFit& fit, double min_phi) {
    REQUIRE(fit.valid);
    REQUIRE_FALSE(fit.knots.empty());
    for (const auto& [r, phi] : fit.knots) {
      if (r >= 1e-6) REQUIRE(phi > min_phi);
      REQUIRE(phi > 0.0);
    }
  };

  {
    SamplingPlan plan;
    plan.grid_points_per_dim = 4001;
    plan.random_count = 128;
    plan.seed = 61;
    plan.window = BoxRegion{{-1.5}, {1.5}};
    check_fit(fit_class_k_envelope(make_gfunction(BuiltinG::LogOverNorm, 1),
                                   make_sine_tanh(),
                                   ExtendedReal::finite(0.0), plan),
              0.0);
  }
  {
    SamplingPlan plan;
    plan.grid_points_per_dim = 8001;
    plan.random_count = 128;
    plan.seed = 62;
    plan.shell_min_radius = 1e-6;
    plan.window = BoxRegion{{-2.0}, {2.0}};
    check_fit(fit_class_k_envelope(make_gfunction(BuiltinG::NegSinc, 1),
                                   make_sine_sec_cubed(),
                                   ExtendedReal::finite(-2.0 / kPi), plan),
              0.0);
  }
  {
    // the 2-d product system at alpha = 0.3 carries a uniform decrease bound
    // of -ln(1/sqrt(2e) + 0.3) ~ 0.316 on the sampled window
    SamplingPlan plan;
    plan.grid_points_per_dim = 201;
    plan.random_count = 512;
    plan.seed = 63;
    plan.window = BoxRegion{{-5.0, -5.0}, {5.0, 5.0}};
    ClassKFit fit = fit_class_k_envelope(
        make_gfunction(BuiltinG::LogNormL1, 2), make_gauss_product(0.3),
        ExtendedReal::finite(std::log(10.5)), plan);
    check_fit(fit, 0.0);
    for (const auto& [r, phi] : fit.knots) REQUIRE(phi > 0.31);
  }
  line.ok = true;
}

TEST_CASE("criterion 7: level-function screening") {
  CriterionLine line{"criterion 7 (validator: catalog passes, impostors flagged)"};

  SamplingPlan plan;
  plan.grid_points_per_dim = 81;
  plan.random_count = 200;
  plan.seed = 7;

  ValidatorOptions log_opts;
  log_opts.neg_inf_floor = -20.0;  // ln-scale: 1e-12 shells reach ~-27

  for (BuiltinG id : {BuiltinG::LogNorm, BuiltinG::LogOverNorm,
                      BuiltinG::PiecewiseLogNorm}) {
    GFunction g = make_gfunction(id, 2);
    INFO(g.label);
    REQUIRE(validate_gfunction(g, Region::ball(2, 2.0), plan, log_opts)
                .overall);
  }
  for (BuiltinG id : {BuiltinG::NegSinc, BuiltinG::NegCosExp}) {
    GFunction g = make_gfunction(id, 2);
    INFO(g.label);
    REQUIRE(validate_gfunction(g, Region::ball(2, 2.0), plan).overall);
  }

  // impostor with a pole away from the origin
  GFunction pole;
  pole.dim = 2;
  pole.min_level = ExtendedReal::finite(std::sqrt(2.0));
  pole.eval = [](const StateVector& x) {
    double dx = x[0] - 0.5, dy = x[1] - 0.5;
    double d = std::sqrt(dx * dx + dy * dy);
    if (d == 0.0) throw NonFiniteOutput("pole");
    return ExtendedReal::from_eval(1.0 / d);
  };
  ValidationReport pr = validate_gfunction(pole, Region::ball(2, 2.0), plan);
  REQUIRE_FALSE(pr.overall);
  REQUIRE_FALSE(pr.no_blowup.passed);
  REQUIRE(pr.no_blowup.witness.has_value());

  // impostor with its minimum off the origin
  GFunction dip;
  dip.dim = 1;
  dip.min_level = ExtendedReal::finite(0.0);
  dip.eval = [](const StateVector& x) {
    double r = x.norm();
    return ExtendedReal::finite(r * r - r);
  };
  ValidationReport dr = validate_gfunction(dip, Region::ball(1, 2.0), plan);
  REQUIRE_FALSE(dr.overall);
  REQUIRE_FALSE(dr.min_at_origin.passed);
  REQUIRE(dr.min_at_origin.witness.has_value());
  line.ok = true;
}

TEST_CASE("criterion 8: generated-case property suite") {
  CriterionLine line{"criterion 8 (property suite, >=1000 generated cases)"};

  std::size_t cases = 0;
  cases += gstab_props::order_totality_cases(881, 2000);
  cases += gstab_props::sublevel_nesting_cases(882, 100);
  cases += gstab_props::simulate_determinism_cases(883, 50);
  cases += gstab_props::report_reproducibility_cases(884, 20);
  cases += gstab_props::certificate_agreement_cases();
  REQUIRE(cases >= 1000);
  line.ok = true;
}
