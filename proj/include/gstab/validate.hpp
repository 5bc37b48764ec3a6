#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gstab/errors.hpp"
#include "gstab/extended_real.hpp"
#include "gstab/gfunction.hpp"
#include "gstab/region.hpp"
#include "gstab/sampling.hpp"
#include "gstab/state_vector.hpp"

namespace gstab {

struct ValidatorOptions {
  // A claimed -inf limit at the origin must push shell values below this.
  double neg_inf_floor = -1e3;
  // Values climbing past this during local refinement flag a +inf limit.
  double blowup_ceiling = 1e6;
  double boundary_band = 1e-9;
  int level_quantiles = 5;
  int tail_shells = 8;  // shells that must be strictly decreasing at the end
};

struct ConditionResult {
  bool passed = true;
  std::size_t samples = 0;
  std::optional<StateVector> witness;
  std::string detail;
};

struct ValidationReport {
  ConditionResult min_at_origin;     // global minimum at 0, or limit -inf
  ConditionResult no_blowup;         // no finite point with +inf limit
  ConditionResult closure_levels;    // g <= z matches the sub-level closure
  ConditionResult boundary_levels;   // g == z matches the sub-level boundary
  bool overall = false;

  void finalize() {
    overall = min_at_origin.passed && no_blowup.passed &&
              closure_levels.passed && boundary_levels.passed;
  }
};

namespace detail {

inline std::vector<double> scaled_point(const std::vector<double>& dir,
                                        double t) {
  std::vector<double> p(dir.size());
  for (std::size_t i = 0; i < dir.size(); ++i) p[i] = t * dir[i];
  return p;
}

}  // namespace detail

// Numerical screening of the defining properties of a level function over a
// bounded window around the origin. Violations are report content; the only
// errors raised are for unusable inputs.
inline ValidationReport validate_gfunction(const GFunction& g,
                                           const Region& window,
                                           const SamplingPlan& plan,
                                           const ValidatorOptions& opts = {}) {
  if (!region_bounds(window) && !plan.window) {
    throw PreconditionViolation("validator window must be bounded");
  }
  {
    std::vector<double> probe(static_cast<std::size_t>(g.dim), 0.0);
    probe[0] = 1e-9;
    if (!region_contains(window, StateVector(probe))) {
      throw PreconditionViolation(
          "validator window must contain a neighbourhood of the origin");
    }
  }

  ValidationReport rep;
  auto samples = sample_region(window, plan);

  std::vector<ExtendedReal> evals;
  evals.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      evals.push_back(eval_g(g, samples[i]));
    } catch (const NonFiniteOutput& e) {
      rep.no_blowup.passed = false;
      rep.no_blowup.witness = samples[i];
      rep.no_blowup.detail = e.what();
      evals.push_back(ExtendedReal::neg_inf());  // keep arrays parallel
    }
  }

  // --- minimum at the origin -----------------------------------------------
  if (g.min_level.is_finite()) {
    rep.min_at_origin.samples = samples.size();
    ExtendedReal at0 = eval_g(g, StateVector::zero(g.dim));
    if (!(at0 == g.min_level)) {
      rep.min_at_origin.passed = false;
      rep.min_at_origin.witness = StateVector::zero(g.dim);
      rep.min_at_origin.detail = "g(0) = " + xr_to_string(at0) +
                                 " does not equal the declared minimum " +
                                 xr_to_string(g.min_level);
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (evals[i] < g.min_level) {
        rep.min_at_origin.passed = false;
        rep.min_at_origin.witness = samples[i];
        rep.min_at_origin.detail =
            "g = " + xr_to_string(evals[i]) + " below the declared minimum " +
            xr_to_string(g.min_level);
        break;
      }
    }
  } else {
    // Claimed limit -inf at 0: shell maxima must fall monotonically at the
    // end and finish below the configured floor.
    detail::DetRng rng(plan.seed + 17);
    auto dirs = detail::ray_directions(g.dim, plan.extra_directions, rng);
    std::vector<double> shell_max;
    const double factor =
        std::pow(10.0, -1.0 / std::max(1, plan.shells_per_decade));
    for (double r = 1.0; r >= plan.shell_min_radius && r > 0.0; r *= factor) {
      double m = -std::numeric_limits<double>::infinity();
      for (const auto& d : dirs) {
        ExtendedReal e = eval_g(g, StateVector(detail::scaled_point(d, r)));
        m = std::max(m, e.raw());
      }
      shell_max.push_back(m);
      ++rep.min_at_origin.samples;
    }
    bool decreasing = true;
    std::size_t tail =
        std::min<std::size_t>(static_cast<std::size_t>(opts.tail_shells),
                              shell_max.size() > 1 ? shell_max.size() - 1 : 0);
    for (std::size_t i = shell_max.size() - tail; i < shell_max.size(); ++i) {
      if (!(shell_max[i] < shell_max[i - 1])) decreasing = false;
    }
    if (shell_max.empty() || !decreasing ||
        !(shell_max.back() <= opts.neg_inf_floor)) {
      rep.min_at_origin.passed = false;
      rep.min_at_origin.detail =
          "shell maxima near the origin do not fall below the floor " +
          std::to_string(opts.neg_inf_floor) + " (last = " +
          (shell_max.empty() ? std::string("n/a")
                             : std::to_string(shell_max.back())) +
          ")";
    }
  }

  // --- no +inf limit at any finite point -----------------------------------
  if (rep.no_blowup.passed) {
    rep.no_blowup.samples = samples.size();
    // Follow the largest sampled values with shrinking local climbs; a true
    // pole sends them past the ceiling.
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return evals[a] > evals[b];
    });
    detail::DetRng rng(plan.seed + 29);
    auto dirs = detail::ray_directions(g.dim, 8, rng);
    const std::size_t tops = std::min<std::size_t>(5, order.size());
    for (std::size_t t = 0; t < tops && rep.no_blowup.passed; ++t) {
      StateVector cur = samples[order[t]];
      double cur_val = evals[order[t]].raw();
      if (!std::isfinite(cur_val)) continue;
      double radius = std::max(1e-3, 1e-2 * (1.0 + cur.norm()));
      int stale = 0;
      for (int it = 0; it < 200 && stale < 4; ++it) {
        bool improved = false;
        for (const auto& d : dirs) {
          std::vector<double> p(cur.coords());
          for (std::size_t i = 0; i < p.size(); ++i) p[i] += radius * d[i];
          StateVector cand(p);
          if (!region_contains(window, cand)) continue;
          double v;
          try {
            v = eval_g(g, cand).raw();
          } catch (const NonFiniteOutput&) {
            rep.no_blowup.passed = false;
            rep.no_blowup.witness = cand;
            rep.no_blowup.detail = "evaluation left the finite range";
            improved = true;
            break;
          }
          if (v > cur_val) {
            cur = cand;
            cur_val = v;
            improved = true;
          }
        }
        if (!rep.no_blowup.passed) break;
        if (cur_val > opts.blowup_ceiling) {
          rep.no_blowup.passed = false;
          rep.no_blowup.witness = cur;
          rep.no_blowup.detail =
              "value " + std::to_string(cur_val) + " exceeds the ceiling " +
              std::to_string(opts.blowup_ceiling) + " under local refinement";
          break;
        }
        if (improved) {
          stale = 0;
        } else {
          radius *= 0.25;
          ++stale;
          if (radius < 1e-14 * (1.0 + cur.norm())) break;
          stale = 0;
        }
      }
    }
  }

  // --- closure / boundary consistency at sampled levels ---------------------
  {
    std::vector<double> finite_vals;
    for (const auto& e : evals) {
      if (e.is_finite()) finite_vals.push_back(e.value());
    }
    std::sort(finite_vals.begin(), finite_vals.end());
    std::vector<double> zetas;
    for (int q = 1; q <= opts.level_quantiles && !finite_vals.empty(); ++q) {
      auto idx = static_cast<std::size_t>(
          (finite_vals.size() - 1) * static_cast<std::size_t>(q) /
          static_cast<std::size_t>(opts.level_quantiles + 1));
      double z = finite_vals[idx];
      if (zetas.empty() || z > zetas.back()) zetas.push_back(z);
    }

    detail::DetRng rng(plan.seed + 43);
    auto dirs = detail::ray_directions(g.dim, 8, rng);
    for (double z : zetas) {
      if (!(ExtendedReal::finite(z) > g.min_level)) continue;
      Region sub = Region::sublevel(g, ExtendedReal::finite(z));
      for (std::size_t i = 0; i < samples.size(); ++i) {
        ++rep.closure_levels.samples;
        bool strictly_below = evals[i] < ExtendedReal::finite(z);
        bool member;
        try {
          member = region_contains(sub, samples[i]);
        } catch (const NonFiniteOutput&) {
          continue;  // already recorded as a blow-up witness
        }
        if (strictly_below != member) {
          rep.closure_levels.passed = false;
          rep.closure_levels.witness = samples[i];
          rep.closure_levels.detail =
              "sub-level membership disagrees with g(x) < z at z = " +
              std::to_string(z);
        }
        // Points on the level surface must sit at the set boundary: both
        // strictly-inside and strictly-outside values nearby.
        if (evals[i].is_finite() &&
            std::abs(evals[i].value() - z) <=
                opts.boundary_band * (1.0 + std::abs(z))) {
          ++rep.boundary_levels.samples;
          double h = std::max(1e-3 * samples[i].norm(), 1e-13);
          bool saw_below = false, saw_above = false;
          for (const auto& d : dirs) {
            std::vector<double> p(samples[i].coords());
            for (std::size_t k = 0; k < p.size(); ++k) p[k] += h * d[k];
            double v;
            try {
              v = eval_g(g, StateVector(p)).raw();
            } catch (const NonFiniteOutput&) {
              saw_above = true;  // +inf-like probe counts as outside
              continue;
            }
            if (v < z) saw_below = true;
            if (v > z) saw_above = true;
          }
          if (!(saw_below && saw_above)) {
            rep.boundary_levels.passed = false;
            rep.boundary_levels.witness = samples[i];
            rep.boundary_levels.detail =
                "level surface point is not a sub-level boundary point at "
                "z = " +
                std::to_string(z);
          }
        }
      }
    }
  }

  rep.finalize();
  return rep;
}

}  // namespace gstab
