#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gstab/errors.hpp"
#include "gstab/extended_real.hpp"
#include "gstab/gfunction.hpp"
#include "gstab/region.hpp"
#include "gstab/sampling.hpp"
#include "gstab/state_vector.hpp"
#include "gstab/system.hpp"

namespace gstab {

// One-step change of g along the system map. -inf is a legitimate outcome
// (the map hits the origin exactly while g has no floor there).
inline ExtendedReal delta_g(const GFunction& g, const DiscreteSystem& sys,
                            const StateVector& x) {
  ExtendedReal gx = eval_g(g, x);
  StateVector fx = step(sys, x);
  ExtendedReal gfx = eval_g(g, fx);
  return xr_sub(gfx, gx);
}

struct Violation {
  StateVector x;
  std::optional<ExtendedReal> delta;  // empty when evaluation itself failed
  std::string note;
};

// Every check is a sweep over finitely many samples, so a passing verdict is
// evidence, never a proof. Margins expose how close the sweep came to the
// tested inequality.
struct CheckReport {
  enum class Verdict { PassOnSamples, Violated };

  std::string kind;
  Verdict verdict = Verdict::PassOnSamples;
  std::size_t samples_tested = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // capped at max_witnesses
  std::size_t max_witnesses = 32;
  std::optional<ExtendedReal> margin_min;
  std::optional<ExtendedReal> margin_max;
  std::optional<ExtendedReal> level;
  // Motions that left the representable range: counted as consistent when g
  // grows with the norm, otherwise kept out of the verdict but reported.
  std::size_t escaped_count = 0;
  std::size_t escaped_unclassified = 0;
  SamplingPlan plan;

  bool passed() const { return verdict == Verdict::PassOnSamples; }

  void note_margin(const ExtendedReal& m) {
    margin_min = margin_min ? xr_min(*margin_min, m) : m;
    margin_max = margin_max ? xr_max(*margin_max, m) : m;
  }

  void add_violation(Violation v) {
    ++violation_count;
    if (violations.size() < max_witnesses) violations.push_back(std::move(v));
    verdict = Verdict::Violated;
  }
};

namespace detail {

inline void assert_inside_domain(const DiscreteSystem& sys,
                                 const StateVector& x,
                                 const char* what) {
  if (!region_contains(sys.domain, x)) {
    throw PreconditionViolation(std::string(what) +
                                " is not contained in the system domain; "
                                "witness " +
                                to_string(x));
  }
}

// Shared inner loop: delta_g over a fixed sample set, violation when the
// strict decrease fails.
inline void sweep_strict_decrease(const GFunction& g,
                                  const DiscreteSystem& sys,
                                  const std::vector<StateVector>& samples,
                                  CheckReport& rep) {
  for (const StateVector& x : samples) {
    ++rep.samples_tested;
    ExtendedReal dg = ExtendedReal::neg_inf();
    try {
      dg = delta_g(g, sys, x);
    } catch (const NonFiniteOutput& e) {
      rep.add_violation({x, std::nullopt, e.what()});
      continue;
    } catch (const UndefinedDifference& e) {
      rep.add_violation({x, std::nullopt, e.what()});
      continue;
    }
    rep.note_margin(dg);
    if (!(dg < ExtendedReal::finite(0.0))) {
      rep.add_violation({x, dg, "delta_g not negative"});
    }
  }
}

}  // namespace detail

// Sufficient condition for the origin to be asymptotically stable with the
// sub-level set {g < level} an estimate of its domain: g must strictly
// decrease along the map at every sampled point of the set.
inline CheckReport check_decrease_inside(const GFunction& g,
                                         const DiscreteSystem& sys,
                                         const ExtendedReal& level,
                                         const SamplingPlan& plan) {
  if (!(level > g.min_level)) {
    throw PreconditionViolation("level must exceed the minimum level of g");
  }
  CheckReport rep;
  rep.kind = "decrease_inside";
  rep.level = level;
  rep.plan = plan;
  auto samples = sample_region(Region::sublevel(g, level), plan);
  for (const StateVector& x : samples) {
    detail::assert_inside_domain(sys, x, "sub-level set");
  }
  detail::sweep_strict_decrease(g, sys, samples, rep);
  return rep;
}

// Exactness side: outside the sub-level set (within a bounded window) g must
// not decrease along the map. Together with a passing decrease check this
// pins the sub-level set as the whole asymptotic stability domain.
inline CheckReport check_nondecrease_outside(const GFunction& g,
                                             const DiscreteSystem& sys,
                                             const ExtendedReal& level,
                                             const BoxRegion& window,
                                             const SamplingPlan& plan) {
  if (!(level > g.min_level)) {
    throw PreconditionViolation("level must exceed the minimum level of g");
  }
  CheckReport rep;
  rep.kind = "nondecrease_outside";
  rep.level = level;
  rep.plan = plan;
  Region region = Region::complement(Region::sublevel(g, level), window);
  auto samples = sample_region(region, plan);
  for (const StateVector& x : samples) {
    ++rep.samples_tested;
    ExtendedReal gx = ExtendedReal::neg_inf();
    try {
      gx = eval_g(g, x);
    } catch (const NonFiniteOutput& e) {
      rep.add_violation({x, std::nullopt, e.what()});
      continue;
    }
    StateVector fx = StateVector::zero(sys.dim);
    ExtendedReal gfx = ExtendedReal::neg_inf();
    try {
      fx = step(sys, x);
      gfx = eval_g(g, fx);
    } catch (const NonFiniteOutput&) {
      if (g.norm_monotone) {
        ++rep.escaped_count;  // g grows with the norm: consistent with >= 0
      } else {
        ++rep.escaped_unclassified;
      }
      continue;
    }
    ExtendedReal dg = ExtendedReal::neg_inf();
    try {
      dg = xr_sub(gfx, gx);
    } catch (const UndefinedDifference& e) {
      rep.add_violation({x, std::nullopt, e.what()});
      continue;
    }
    rep.note_margin(dg);
    if (dg < ExtendedReal::finite(0.0)) {
      rep.add_violation({x, dg, "delta_g negative outside the set"});
    }
  }
  return rep;
}

enum class InvarianceSet { SubLevelSet, ComplementSet };

// Brute-force invariance oracle: simulate from every sampled start and watch
// for an exit. Sub-level sets are tested against their closure (g <= level),
// complements against g >= level.
inline CheckReport check_invariance(const GFunction& g,
                                    const DiscreteSystem& sys,
                                    const ExtendedReal& zeta,
                                    const SamplingPlan& plan, long steps,
                                    InvarianceSet direction) {
  if (!(zeta > g.min_level)) {
    throw PreconditionViolation("zeta must exceed the minimum level of g");
  }
  if (steps < 1) throw PreconditionViolation("steps must be >= 1");
  CheckReport rep;
  rep.kind = direction == InvarianceSet::SubLevelSet ? "invariance_sublevel"
                                                     : "invariance_complement";
  rep.level = zeta;
  rep.plan = plan;

  Region region = direction == InvarianceSet::SubLevelSet
                      ? Region::sublevel(g, zeta)
                      : [&] {
                          if (!plan.window) {
                            throw PreconditionViolation(
                                "complement invariance requires a sampling "
                                "window");
                          }
                          return Region::complement(Region::sublevel(g, zeta),
                                                    *plan.window);
                        }();
  auto starts = sample_region(region, plan);
  const bool sublevel = direction == InvarianceSet::SubLevelSet;
  for (const StateVector& x0 : starts) {
    ++rep.samples_tested;
    StateVector cur = x0;
    for (long k = 1; k <= steps; ++k) {
      StateVector next = StateVector::zero(sys.dim);
      ExtendedReal e = ExtendedReal::neg_inf();
      try {
        next = step(sys, cur);
        e = eval_g(g, next);
      } catch (const NonFiniteOutput&) {
        if (!sublevel && g.norm_monotone) {
          ++rep.escaped_count;
        } else if (!sublevel) {
          ++rep.escaped_unclassified;
        } else {
          rep.add_violation({x0, std::nullopt,
                             "map escaped representable range at step " +
                                 std::to_string(k)});
        }
        break;
      }
      rep.note_margin(xr_sub(e, zeta));
      bool member = sublevel ? !(e > zeta) : !(e < zeta);
      if (!member) {
        rep.add_violation({x0, xr_sub(e, zeta),
                           "exits the set at step " + std::to_string(k)});
        break;
      }
      cur = next;
    }
  }
  return rep;
}

// Rasterized connectedness of {g < level} inside a window: flood fill over
// grid cells from the cell nearest the origin.
inline bool check_connected(const GFunction& g, const ExtendedReal& level,
                            const BoxRegion& window, double grid_step) {
  const int dim = g.dim;
  if (dim > 3) {
    throw DimensionTooHigh("connectedness raster supports dim <= 3");
  }
  if (window.dim() != dim) {
    throw DimensionMismatch("connectedness window dimension mismatch");
  }
  if (!(grid_step > 0.0)) {
    throw PreconditionViolation("grid step must be positive");
  }
  std::vector<long> counts(static_cast<std::size_t>(dim));
  double total = 1.0;
  for (int i = 0; i < dim; ++i) {
    auto k = static_cast<std::size_t>(i);
    counts[k] = std::max<long>(
        1, static_cast<long>(std::floor((window.upper[k] - window.lower[k]) /
                                        grid_step)));
    total *= static_cast<double>(counts[k]);
  }
  if (total > 8e6) throw ConfigError("connectedness raster exceeds 8e6 cells");

  const auto ncells = static_cast<std::size_t>(total);
  std::vector<long> strides(static_cast<std::size_t>(dim), 1);
  for (int i = 1; i < dim; ++i) {
    auto k = static_cast<std::size_t>(i);
    strides[k] = strides[k - 1] * counts[k - 1];
  }
  auto center = [&](long cell, std::size_t axis) {
    long idx = (cell / strides[axis]) % counts[axis];
    return window.lower[axis] +
           (static_cast<double>(idx) + 0.5) * grid_step;
  };

  std::vector<char> member(ncells, 0);
  long seed = -1;
  double seed_norm = std::numeric_limits<double>::infinity();
  std::vector<double> pt(static_cast<std::size_t>(dim));
  for (std::size_t c = 0; c < ncells; ++c) {
    double n2 = 0.0;
    for (std::size_t a = 0; a < static_cast<std::size_t>(dim); ++a) {
      pt[a] = center(static_cast<long>(c), a);
      n2 += pt[a] * pt[a];
    }
    if (eval_g(g, StateVector(pt)) < level) {
      member[c] = 1;
      if (n2 < seed_norm) {
        seed_norm = n2;
        seed = static_cast<long>(c);
      }
    }
  }
  if (seed < 0) return true;  // nothing member at this resolution

  std::vector<char> seen(ncells, 0);
  std::deque<long> queue{seed};
  seen[static_cast<std::size_t>(seed)] = 1;
  std::size_t reached = 0;
  while (!queue.empty()) {
    long c = queue.front();
    queue.pop_front();
    ++reached;
    for (int a = 0; a < dim; ++a) {
      auto ka = static_cast<std::size_t>(a);
      long idx = (c / strides[ka]) % counts[ka];
      for (long d : {-1L, 1L}) {
        long j = idx + d;
        if (j < 0 || j >= counts[ka]) continue;
        long nc = c + d * strides[ka];
        if (!member[static_cast<std::size_t>(nc)] ||
            seen[static_cast<std::size_t>(nc)]) {
          continue;
        }
        seen[static_cast<std::size_t>(nc)] = 1;
        queue.push_back(nc);
      }
    }
  }
  std::size_t member_total = 0;
  for (char m : member) member_total += static_cast<std::size_t>(m);
  return reached == member_total;
}

// ---------------------------------------------------------------------------
// Largest certified level search.

struct LevelProbe {
  enum class Outcome { Feasible, Violated, TooSmall };
  double zeta = 0.0;
  Outcome outcome = Outcome::TooSmall;
  std::string note;
};

struct LevelSearchOptions {
  int iterations = 30;
  bool check_connectedness = true;
  double connect_grid_step = 0.0;  // 0: derived from the window extent
};

struct LevelSearchReport {
  std::optional<double> best;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  std::vector<LevelProbe> probes;
  bool non_monotonic = false;
  bool connectedness_checked = true;
  SamplingPlan plan;
};

// Bisection for the largest level whose sub-level set passes the decrease
// check and stays connected. Feasibility is assumed monotone in the level
// (sub-level sets nest); any probe pattern contradicting that is flagged.
inline LevelSearchReport search_largest_level(
    const GFunction& g, const DiscreteSystem& sys, const ExtendedReal& lo,
    double hi, const SamplingPlan& plan,
    const LevelSearchOptions& opts = {}) {
  if (lo.is_neg_inf()) {
    throw PreconditionViolation(
        "level search needs a finite bracket floor; -inf cannot be bisected");
  }
  if (!(hi > lo.value())) {
    throw PreconditionViolation("bracket upper end must exceed lower end");
  }
  LevelSearchReport rep;
  rep.bracket_lo = lo.value();
  rep.bracket_hi = hi;
  rep.iterations = opts.iterations;
  rep.plan = plan;

  const bool connect = opts.check_connectedness && g.dim <= 3;
  rep.connectedness_checked = connect;
  if (connect && !plan.window) {
    throw PreconditionViolation(
        "level search with connectedness needs a sampling window");
  }
  double cstep = opts.connect_grid_step;
  if (connect && cstep <= 0.0) {
    double extent = 0.0;
    for (int i = 0; i < plan.window->dim(); ++i) {
      auto k = static_cast<std::size_t>(i);
      extent = std::max(extent, plan.window->upper[k] - plan.window->lower[k]);
    }
    cstep = extent / 400.0;
  }

  auto probe = [&](double zeta) -> LevelProbe {
    LevelProbe p;
    p.zeta = zeta;
    if (!(ExtendedReal::finite(zeta) > g.min_level)) {
      p.outcome = LevelProbe::Outcome::TooSmall;
      p.note = "at or below the minimum level";
      return p;
    }
    try {
      CheckReport r =
          check_decrease_inside(g, sys, ExtendedReal::finite(zeta), plan);
      if (!r.passed()) {
        p.outcome = LevelProbe::Outcome::Violated;
        p.note = "decrease condition violated";
        return p;
      }
    } catch (const EmptyRegion&) {
      p.outcome = LevelProbe::Outcome::TooSmall;
      p.note = "sub-level set has no sample points";
      return p;
    } catch (const PreconditionViolation& e) {
      p.outcome = LevelProbe::Outcome::Violated;
      p.note = e.what();
      return p;
    }
    if (connect &&
        !check_connected(g, ExtendedReal::finite(zeta), *plan.window, cstep)) {
      p.outcome = LevelProbe::Outcome::Violated;
      p.note = "sub-level set disconnected";
      return p;
    }
    p.outcome = LevelProbe::Outcome::Feasible;
    return p;
  };

  auto run = [&](double zeta) {
    LevelProbe p = probe(zeta);
    rep.probes.push_back(p);
    if (p.outcome == LevelProbe::Outcome::Feasible) {
      if (!rep.best || zeta > *rep.best) rep.best = zeta;
    }
    return p.outcome;
  };

  double a = lo.value();
  double b = hi;
  if (run(hi) != LevelProbe::Outcome::Feasible) {
    for (int i = 0; i < opts.iterations; ++i) {
      double mid = 0.5 * (a + b);
      switch (run(mid)) {
        case LevelProbe::Outcome::Feasible:
        case LevelProbe::Outcome::TooSmall:
          a = mid;
          break;
        case LevelProbe::Outcome::Violated:
          b = mid;
          break;
      }
    }
  }

  // Flag probe evidence against monotone feasibility.
  for (const auto& p : rep.probes) {
    if (p.outcome != LevelProbe::Outcome::Violated) continue;
    for (const auto& q : rep.probes) {
      if (q.outcome == LevelProbe::Outcome::Feasible && q.zeta > p.zeta) {
        rep.non_monotonic = true;
      }
    }
  }
  return rep;
}

inline ExtendedReal find_largest_level(const GFunction& g,
                                       const DiscreteSystem& sys,
                                       const ExtendedReal& lo, double hi,
                                       const SamplingPlan& plan,
                                       const LevelSearchOptions& opts = {}) {
  LevelSearchReport rep = search_largest_level(g, sys, lo, hi, plan, opts);
  if (!rep.best) {
    throw NoFeasibleLambda("no feasible level in [" +
                           std::to_string(rep.bracket_lo) + ", " +
                           std::to_string(rep.bracket_hi) + "]");
  }
  return ExtendedReal::finite(*rep.best);
}

// ---------------------------------------------------------------------------
// Global certification over a growing window schedule.

struct GlobalCheckReport {
  CheckReport merged;
  std::vector<CheckReport> per_window;
  std::vector<BoxRegion> windows;
};

// For functions unbounded below at the origin there is no literal
// "arbitrarily large level"; each window is certified with a level chosen
// above every g value seen on it, so the tested set covers the window.
inline GlobalCheckReport check_global(const GFunction& g,
                                      const DiscreteSystem& sys,
                                      const std::vector<BoxRegion>& windows,
                                      const SamplingPlan& plan) {
  if (windows.empty()) {
    throw PreconditionViolation("global check needs at least one window");
  }
  for (std::size_t w = 1; w < windows.size(); ++w) {
    for (int i = 0; i < windows[w].dim(); ++i) {
      auto k = static_cast<std::size_t>(i);
      if (!(windows[w].lower[k] < windows[w - 1].lower[k]) ||
          !(windows[w].upper[k] > windows[w - 1].upper[k])) {
        throw PreconditionViolation("windows must be strictly increasing");
      }
    }
  }
  GlobalCheckReport out;
  out.windows = windows;
  out.merged.kind = "global";
  out.merged.plan = plan;
  for (const BoxRegion& w : windows) {
    CheckReport rep;
    rep.kind = "global_window";
    rep.plan = plan;
    auto samples = sample_region(Region(w), plan);
    for (const StateVector& x : samples) {
      detail::assert_inside_domain(sys, x, "window");
    }
    double gmax = -std::numeric_limits<double>::infinity();
    for (const StateVector& x : samples) {
      gmax = std::max(gmax, eval_g(g, x).raw());
    }
    double lam = std::isfinite(gmax)
                     ? gmax + 1e-6 * (1.0 + std::abs(gmax))
                     : 0.0;
    rep.level = ExtendedReal::finite(lam);
    detail::sweep_strict_decrease(g, sys, samples, rep);
    out.merged.samples_tested += rep.samples_tested;
    out.merged.violation_count += rep.violation_count;
    for (const auto& v : rep.violations) {
      if (out.merged.violations.size() < out.merged.max_witnesses) {
        out.merged.violations.push_back(v);
      }
    }
    if (!rep.passed()) out.merged.verdict = CheckReport::Verdict::Violated;
    if (rep.margin_min) out.merged.note_margin(*rep.margin_min);
    if (rep.margin_max) out.merged.note_margin(*rep.margin_max);
    out.merged.level = rep.level;
    out.per_window.push_back(std::move(rep));
  }
  return out;
}

// Independent cross-check of an attraction estimate: every sampled start in
// the estimate must actually converge under simulation.
inline CheckReport verify_attraction(const DiscreteSystem& sys,
                                     const Region& estimate,
                                     const SamplingPlan& plan,
                                     const SimParams& params) {
  CheckReport rep;
  rep.kind = "attraction";
  rep.plan = plan;
  auto starts = sample_region(estimate, plan);
  for (const StateVector& x0 : starts) {
    ++rep.samples_tested;
    TrajectoryRecord tr = simulate(sys, x0, params);
    if (!std::holds_alternative<Converged>(tr.classification)) {
      const char* what = std::holds_alternative<Diverged>(tr.classification)
                             ? "diverged"
                             : "inconclusive";
      rep.add_violation({x0, std::nullopt, what});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Class-K decrease envelope.

// Piecewise-linear lower envelope phi with phi(0+) = 0,
// strictly increasing knots, and delta_g(x) <= -phi(||x||) for every
// fitted sample.
struct ClassKFit {
  std::vector<std::pair<double, double>> knots;  // (radius, phi)
  bool valid = false;
  std::vector<double> bin_edges;  // knots.size() + 1 radii
  std::vector<double> bin_inf;    // raw inf of -delta_g per bin (may be +inf)

  double eval(double r) const {
    if (knots.empty() || r <= 0.0) return 0.0;
    if (r <= knots.front().first) {
      return knots.front().second * r / knots.front().first;
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (r <= knots[i].first) {
        double t = (r - knots[i - 1].first) /
                   (knots[i].first - knots[i - 1].first);
        return knots[i - 1].second +
               t * (knots[i].second - knots[i - 1].second);
      }
    }
    return knots.back().second;
  }
};

// Bins samples of {g < level} by radius, takes the per-bin infimum of
// -delta_g, then the greatest nondecreasing minorant of those infima. The
// fit is valid when that minorant is strictly positive on every bin; a tiny
// downward tilt makes the knot sequence strictly increasing without
// breaking the minorant property.
inline ClassKFit fit_class_k_envelope(const GFunction& g,
                                      const DiscreteSystem& sys,
                                      const ExtendedReal& level,
                                      const SamplingPlan& plan,
                                      int bins_per_decade = 4) {
  if (!(level > g.min_level)) {
    throw PreconditionViolation("level must exceed the minimum level of g");
  }
  if (bins_per_decade < 1) {
    throw PreconditionViolation("bins_per_decade must be >= 1");
  }
  auto samples = sample_region(Region::sublevel(g, level), plan);
  std::vector<std::pair<double, double>> rd;  // (radius, -delta_g)
  rd.reserve(samples.size());
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (const StateVector& x : samples) {
    double r = x.norm();
    ExtendedReal dg = delta_g(g, sys, x);
    double nd = dg.is_neg_inf() ? std::numeric_limits<double>::infinity()
                                : -dg.value();
    rd.emplace_back(r, nd);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }

  const double bpd = static_cast<double>(bins_per_decade);
  const long k_lo = static_cast<long>(std::floor(std::log10(rmin) * bpd));
  const long k_hi = static_cast<long>(std::ceil(std::log10(rmax) * bpd));
  const auto nbins = static_cast<std::size_t>(std::max<long>(1, k_hi - k_lo));

  ClassKFit fit;
  fit.bin_edges.resize(nbins + 1);
  for (std::size_t b = 0; b <= nbins; ++b) {
    fit.bin_edges[b] =
        std::pow(10.0, static_cast<double>(k_lo + static_cast<long>(b)) / bpd);
  }
  fit.bin_inf.assign(nbins, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> bin_count(nbins, 0);
  for (const auto& [r, nd] : rd) {
    auto b = static_cast<long>(std::floor(std::log10(r) * bpd)) - k_lo;
    b = std::clamp<long>(b, 0, static_cast<long>(nbins) - 1);
    auto bi = static_cast<std::size_t>(b);
    fit.bin_inf[bi] = std::min(fit.bin_inf[bi], nd);
    ++bin_count[bi];
  }
  for (std::size_t b = 0; b < nbins; ++b) {
    if (bin_count[b] == 0) {
      throw InsufficientSamples(
          "radial bin [" + std::to_string(fit.bin_edges[b]) + ", " +
          std::to_string(fit.bin_edges[b + 1]) + ") has no samples");
    }
  }

  std::vector<double> minorant(nbins);
  double suffix = std::numeric_limits<double>::infinity();
  for (std::size_t b = nbins; b-- > 0;) {
    suffix = std::min(suffix, fit.bin_inf[b]);
    minorant[b] = suffix;
  }
  fit.valid = std::all_of(minorant.begin(), minorant.end(),
                          [](double m) { return m > 0.0; });

  // Infinite suffix happens only when every bin from some radius on maps
  // straight to the origin; extend the last finite value upward.
  double last_finite = 1.0;
  for (double m : minorant) {
    if (std::isfinite(m)) last_finite = m;
  }
  const auto nb = static_cast<double>(nbins);
  fit.knots.resize(nbins);
  double bump = last_finite;
  for (std::size_t b = 0; b < nbins; ++b) {
    double m = minorant[b];
    if (!std::isfinite(m)) {
      bump *= 2.0;
      m = bump;
    }
    double tilt =
        1.0 - 1e-9 * static_cast<double>(nbins - 1 - b) / std::max(nb, 1.0);
    fit.knots[b] = {fit.bin_edges[b + 1], m * tilt};
  }
  return fit;
}

}  // namespace gstab
