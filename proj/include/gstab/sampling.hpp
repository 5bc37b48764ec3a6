#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "gstab/errors.hpp"
#include "gstab/region.hpp"
#include "gstab/state_vector.hpp"

namespace gstab {

// How a region is turned into a finite, reproducible point set. Grid points
// cover the bounding box; log-spaced radial shells probe x -> 0; per-ray
// bisection places points just inside each membership boundary; the rest is
// seeded uniform noise. Identical plan + seed means an identical stream.
struct SamplingPlan {
  int grid_points_per_dim = 101;
  int random_count = 256;
  std::uint64_t seed = 0;
  double exclusion_radius = 1e-12;  // realizes "for all x != 0"
  double shell_min_radius = 1e-12;
  int shells_per_decade = 4;
  int extra_directions = 8;  // random ray directions besides the axes
  std::vector<double> boundary_layers = {1e-3, 1e-6, 1e-9};
  std::optional<BoxRegion> window;  // bounding box for unbounded regions

  friend bool operator==(const SamplingPlan&, const SamplingPlan&) = default;
};

namespace detail {

// Deterministic uniforms/normals built from raw mt19937_64 output so streams
// do not depend on the standard library's distribution implementations.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  double unit() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  double normal() {
    double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;  // (0,1]
    double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::vector<double> unit_direction(int dim) {
    std::vector<double> d(static_cast<std::size_t>(dim));
    for (;;) {
      double n2 = 0.0;
      for (auto& v : d) {
        v = normal();
        n2 += v * v;
      }
      if (n2 > 1e-24) {
        double inv = 1.0 / std::sqrt(n2);
        for (auto& v : d) v *= inv;
        return d;
      }
    }
  }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<std::vector<double>> ray_directions(int dim,
                                                       int extra,
                                                       DetRng& rng) {
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < dim; ++i) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> d(static_cast<std::size_t>(dim), 0.0);
      d[static_cast<std::size_t>(i)] = s;
      dirs.push_back(std::move(d));
    }
  }
  if (dim > 1) {
    for (int i = 0; i < extra; ++i) dirs.push_back(rng.unit_direction(dim));
  }
  return dirs;
}

// Distance along `dir` from the origin to the box hull (origin assumed in
// the box).
inline double box_exit_distance(const BoxRegion& bb,
                                const std::vector<double>& dir) {
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dir.size(); ++i) {
    if (dir[i] > 0.0) {
      t = std::min(t, bb.upper[i] / dir[i]);
    } else if (dir[i] < 0.0) {
      t = std::min(t, bb.lower[i] / dir[i]);
    }
  }
  return t;
}

}  // namespace detail

inline std::vector<StateVector> sample_region(const Region& region,
                                              const SamplingPlan& plan,
                                              double exclusion_radius) {
  if (exclusion_radius < 0.0) {
    throw PreconditionViolation("exclusion radius must be >= 0");
  }
  std::optional<BoxRegion> bb = region_bounds(region);
  if (!bb) bb = plan.window;
  if (!bb) {
    throw PreconditionViolation(
        "sample_region: unbounded region requires a sampling window");
  }
  if (bb->dim() != region.dim()) {
    throw DimensionMismatch("sampling window dimension mismatch");
  }
  const int dim = region.dim();
  const auto n = static_cast<std::size_t>(dim);

  std::vector<StateVector> out;
  auto emit = [&](const std::vector<double>& pt) {
    StateVector x(pt);
    if (!(x.norm() > exclusion_radius)) return;
    if (!region_contains(region, x)) return;
    out.push_back(std::move(x));
  };

  // Grid over the bounding box, endpoints included (open regions drop them
  // through the membership filter).
  if (plan.grid_points_per_dim >= 2) {
    double total = std::pow(static_cast<double>(plan.grid_points_per_dim),
                            static_cast<double>(dim));
    if (total > 8e6) {
      throw ConfigError("sampling grid would exceed 8e6 points");
    }
    const int N = plan.grid_points_per_dim;
    std::vector<int> idx(n, 0);
    std::vector<double> pt(n);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) {
        pt[i] = bb->lower[i] +
                (bb->upper[i] - bb->lower[i]) * static_cast<double>(idx[i]) /
                    static_cast<double>(N - 1);
      }
      emit(pt);
      std::size_t carry = 0;
      while (carry < n && ++idx[carry] == N) {
        idx[carry] = 0;
        ++carry;
      }
      if (carry == n) break;
    }
  }

  detail::DetRng rng(plan.seed);
  auto dirs = detail::ray_directions(dim, plan.extra_directions, rng);

  // Log-spaced shells toward the origin.
  if (plan.shells_per_decade > 0 && plan.shell_min_radius > 0.0) {
    double r0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r0 = std::max(r0, std::max(std::abs(bb->lower[i]), std::abs(bb->upper[i])));
    }
    const double factor = std::pow(10.0, -1.0 / plan.shells_per_decade);
    std::vector<double> pt(n);
    for (double r = r0; r >= plan.shell_min_radius && r > 0.0; r *= factor) {
      for (const auto& d : dirs) {
        for (std::size_t i = 0; i < n; ++i) pt[i] = r * d[i];
        emit(pt);
      }
    }
  }

  // Membership boundaries along each ray, probed from the member side.
  if (!plan.boundary_layers.empty()) {
    auto member_at = [&](const std::vector<double>& d, double t) {
      std::vector<double> pt(n);
      for (std::size_t i = 0; i < n; ++i) pt[i] = t * d[i];
      return region_contains(region, StateVector(pt));
    };
    std::vector<double> origin(n, 0.0);
    const bool origin_in_box = box_contains(*bb, StateVector(origin));
    if (origin_in_box) {
      for (const auto& d : dirs) {
        double tmax = detail::box_exit_distance(*bb, d);
        if (!(tmax > 0.0) || !std::isfinite(tmax)) continue;
        // Scan line: log-spaced near zero plus a linear tail, then bisect
        // every membership flip.
        std::vector<double> ts;
        double tlo = std::max(plan.shell_min_radius, tmax * 1e-12);
        for (double t = tlo; t < tmax; t *= 3.1623) ts.push_back(t);
        for (int k = 1; k <= 16; ++k) {
          ts.push_back(tmax * static_cast<double>(k) / 16.0);
        }
        std::sort(ts.begin(), ts.end());
        bool prev = member_at(d, ts.front());
        for (std::size_t k = 1; k < ts.size(); ++k) {
          bool cur = member_at(d, ts[k]);
          if (cur != prev) {
            double a = ts[k - 1], b = ts[k];
            bool member_low = prev;
            for (int it = 0; it < 60; ++it) {
              double mid = 0.5 * (a + b);
              if (member_at(d, mid) == member_low) {
                a = mid;
              } else {
                b = mid;
              }
            }
            double flip = 0.5 * (a + b);
            for (double layer : plan.boundary_layers) {
              double t_in = member_low ? flip * (1.0 - layer)
                                       : flip * (1.0 + layer);
              std::vector<double> pt(n);
              for (std::size_t i = 0; i < n; ++i) pt[i] = t_in * d[i];
              emit(pt);
            }
          }
          prev = cur;
        }
        if (prev) {
          // Member all the way to the box hull: place points near the hull.
          for (double layer : plan.boundary_layers) {
            std::vector<double> pt(n);
            for (std::size_t i = 0; i < n; ++i) {
              pt[i] = tmax * (1.0 - layer) * d[i];
            }
            emit(pt);
          }
        }
      }
    }
  }

  for (int i = 0; i < plan.random_count; ++i) {
    std::vector<double> pt(n);
    for (std::size_t k = 0; k < n; ++k) {
      pt[k] = rng.uniform(bb->lower[k], bb->upper[k]);
    }
    emit(pt);
  }

  if (out.empty()) {
    throw EmptyRegion("sample_region: no sample point satisfies the plan");
  }
  return out;
}

inline std::vector<StateVector> sample_region(const Region& region,
                                              const SamplingPlan& plan) {
  return sample_region(region, plan, plan.exclusion_radius);
}

}  // namespace gstab
