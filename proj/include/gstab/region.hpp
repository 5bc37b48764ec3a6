#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gstab/errors.hpp"
#include "gstab/extended_real.hpp"
#include "gstab/gfunction.hpp"
#include "gstab/state_vector.hpp"

namespace gstab {

// Open ball of given radius about the origin.
struct BallRegion {
  int dim = 1;
  double radius = 1.0;
};

// Closed axis-aligned box, lower < upper componentwise.
struct BoxRegion {
  std::vector<double> lower;
  std::vector<double> upper;
  int dim() const { return static_cast<int>(lower.size()); }
  friend bool operator==(const BoxRegion&, const BoxRegion&) = default;
};

class Region;

// {x : g(x) < level}, strict inequality.
struct SubLevelRegion {
  GFunction g;
  ExtendedReal level = ExtendedReal::finite(0.0);
};

// Points of `window` that are not in `inner`.
struct ComplementRegion {
  std::shared_ptr<const Region> inner;
  BoxRegion window;
};

struct AllRegion {
  int dim = 1;
};

class Region {
 public:
  using Variant = std::variant<BallRegion, BoxRegion, SubLevelRegion,
                               ComplementRegion, AllRegion>;

  Region(BallRegion b) : v_(std::move(b)) { validate(); }
  Region(BoxRegion b) : v_(std::move(b)) { validate(); }
  Region(SubLevelRegion s) : v_(std::move(s)) { validate(); }
  Region(ComplementRegion c) : v_(std::move(c)) { validate(); }
  Region(AllRegion a) : v_(std::move(a)) { validate(); }

  static Region ball(int dim, double radius) {
    return Region(BallRegion{dim, radius});
  }
  static Region box(std::vector<double> lower, std::vector<double> upper) {
    return Region(BoxRegion{std::move(lower), std::move(upper)});
  }
  static Region sublevel(GFunction g, ExtendedReal level) {
    return Region(SubLevelRegion{std::move(g), level});
  }
  static Region complement(Region inner, BoxRegion window) {
    return Region(ComplementRegion{std::make_shared<Region>(std::move(inner)),
                                   std::move(window)});
  }
  static Region all(int dim) { return Region(AllRegion{dim}); }

  const Variant& var() const { return v_; }

  int dim() const {
    return std::visit(
        [](const auto& r) -> int {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, BallRegion>) return r.dim;
          if constexpr (std::is_same_v<T, BoxRegion>) return r.dim();
          if constexpr (std::is_same_v<T, SubLevelRegion>) return r.g.dim;
          if constexpr (std::is_same_v<T, ComplementRegion>)
            return r.window.dim();
          if constexpr (std::is_same_v<T, AllRegion>) return r.dim;
        },
        v_);
  }

 private:
  void validate() const {
    if (const auto* b = std::get_if<BallRegion>(&v_)) {
      if (b->dim < 1) throw DimensionMismatch("ball dimension must be >= 1");
      if (!(b->radius > 0.0)) {
        throw PreconditionViolation("ball radius must be positive");
      }
    } else if (const auto* bx = std::get_if<BoxRegion>(&v_)) {
      if (bx->lower.empty() || bx->lower.size() != bx->upper.size()) {
        throw DimensionMismatch("box bounds must be nonempty and same size");
      }
      for (std::size_t i = 0; i < bx->lower.size(); ++i) {
        if (!(bx->lower[i] < bx->upper[i])) {
          throw PreconditionViolation(
              "box lower bound must be strictly below upper bound");
        }
      }
    } else if (const auto* c = std::get_if<ComplementRegion>(&v_)) {
      if (!c->inner) {
        throw PreconditionViolation("complement region lacks inner region");
      }
      if (c->inner->dim() != c->window.dim()) {
        throw DimensionMismatch("complement window dimension mismatch");
      }
    }
  }

  Variant v_;
};

inline bool box_contains(const BoxRegion& b, const StateVector& x) {
  for (int i = 0; i < b.dim(); ++i) {
    auto k = static_cast<std::size_t>(i);
    if (x[k] < b.lower[k] || x[k] > b.upper[k]) return false;
  }
  return true;
}

inline bool region_contains(const Region& r, const StateVector& x) {
  if (x.dim() != r.dim()) {
    throw DimensionMismatch("region_contains: dimension mismatch");
  }
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BallRegion>) {
          return x.norm() < v.radius;
        } else if constexpr (std::is_same_v<T, BoxRegion>) {
          return box_contains(v, x);
        } else if constexpr (std::is_same_v<T, SubLevelRegion>) {
          return eval_g(v.g, x) < v.level;
        } else if constexpr (std::is_same_v<T, ComplementRegion>) {
          return box_contains(v.window, x) && !region_contains(*v.inner, x);
        } else {
          return true;
        }
      },
      r.var());
}

// A bounding box when the region carries one intrinsically.
inline std::optional<BoxRegion> region_bounds(const Region& r) {
  return std::visit(
      [](const auto& v) -> std::optional<BoxRegion> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BallRegion>) {
          std::vector<double> lo(static_cast<std::size_t>(v.dim), -v.radius);
          std::vector<double> hi(static_cast<std::size_t>(v.dim), v.radius);
          return BoxRegion{std::move(lo), std::move(hi)};
        } else if constexpr (std::is_same_v<T, BoxRegion>) {
          return v;
        } else if constexpr (std::is_same_v<T, ComplementRegion>) {
          return v.window;
        } else {
          return std::nullopt;
        }
      },
      r.var());
}

}  // namespace gstab
