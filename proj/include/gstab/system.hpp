#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gstab/errors.hpp"
#include "gstab/extended_real.hpp"
#include "gstab/gfunction.hpp"
#include "gstab/region.hpp"
#include "gstab/state_vector.hpp"

namespace gstab {

// Discrete-time autonomous system x(k+1) = map(x(k)) on the open set
// `domain` with the origin as equilibrium.
struct DiscreteSystem {
  int dim = 1;
  std::function<StateVector(const StateVector&)> map;
  Region domain = Region::all(1);
  std::string label;
};

inline StateVector step(const DiscreteSystem& sys, const StateVector& x) {
  if (x.dim() != sys.dim) {
    throw DimensionMismatch("step: state dimension mismatch");
  }
  StateVector y = sys.map(x);  // StateVector rejects NaN/inf coordinates
  if (y.dim() != sys.dim) {
    throw DimensionMismatch("step: map changed the dimension");
  }
  return y;
}

inline bool verify_equilibrium(const DiscreteSystem& sys, double tol) {
  if (!(tol > 0.0)) throw PreconditionViolation("tolerance must be positive");
  try {
    return step(sys, StateVector::zero(sys.dim)).norm() <= tol;
  } catch (const NonFiniteOutput&) {
    return false;
  }
}

struct Converged {
  long steps = 0;  // first index of the persistent sub-tolerance run
  friend bool operator==(const Converged&, const Converged&) = default;
};
struct Diverged {
  long exit_step = 0;
  friend bool operator==(const Diverged&, const Diverged&) = default;
};
struct Inconclusive {
  friend bool operator==(const Inconclusive&, const Inconclusive&) = default;
};
using Classification = std::variant<Converged, Diverged, Inconclusive>;

struct SimParams {
  long max_steps = 100000;
  double conv_tol = 1e-6;
  double div_bound = 1e9;
  int conv_persist = 10;  // consecutive sub-tolerance steps before Converged

  friend bool operator==(const SimParams&, const SimParams&) = default;
};

struct TrajectoryRecord {
  std::vector<StateVector> states;             // states[0] == x0
  std::vector<ExtendedReal> g_values;          // parallel to states when kept
  Classification classification = Inconclusive{};
  StateVector x0 = StateVector::zero(1);
};

inline TrajectoryRecord simulate(const DiscreteSystem& sys,
                                 const StateVector& x0,
                                 const SimParams& params,
                                 const GFunction* g = nullptr) {
  if (params.max_steps < 1) {
    throw PreconditionViolation("max_steps must be >= 1");
  }
  if (!(params.conv_tol > 0.0) || !(params.conv_tol < params.div_bound)) {
    throw PreconditionViolation("need 0 < conv_tol < div_bound");
  }
  TrajectoryRecord rec;
  rec.x0 = x0;
  rec.states.push_back(x0);
  auto record_g = [&](const StateVector& x) {
    if (g != nullptr) rec.g_values.push_back(eval_g(*g, x));
  };
  record_g(x0);

  if (x0.is_origin()) {
    rec.classification = Converged{0};
    return rec;
  }

  StateVector cur = x0;
  int run = cur.norm() < params.conv_tol ? 1 : 0;
  long run_start = 0;
  for (long k = 1; k <= params.max_steps; ++k) {
    StateVector next = StateVector::zero(sys.dim);
    try {
      next = step(sys, cur);
      record_g(next);
    } catch (const NonFiniteOutput&) {
      rec.classification = Diverged{k};
      return rec;
    }
    rec.states.push_back(next);
    double r = next.norm();
    if (r > params.div_bound) {
      rec.classification = Diverged{k};
      return rec;
    }
    if (r < params.conv_tol) {
      if (run == 0) run_start = k;
      if (++run >= params.conv_persist) {
        rec.classification = Converged{run_start};
        return rec;
      }
    } else {
      run = 0;
    }
    cur = next;
  }
  rec.classification = Inconclusive{};
  return rec;
}

// ---------------------------------------------------------------------------
// Built-in benchmark systems.

// 1-d: x' = sin(x) * (tanh(x) - x) on (-1, 1).
inline DiscreteSystem make_sine_tanh() {
  DiscreteSystem sys;
  sys.dim = 1;
  sys.label = "x' = sin(x)*(tanh(x)-x)";
  sys.domain = Region::ball(1, 1.0);
  sys.map = [](const StateVector& x) {
    double v = x[0];
    return StateVector{std::sin(v) * (std::tanh(v) - v)};
  };
  return sys;
}

// 1-d: x' = sin(x) / (2 cos^3(x/3)) on (-pi, pi).
inline DiscreteSystem make_sine_sec_cubed() {
  DiscreteSystem sys;
  sys.dim = 1;
  sys.label = "x' = sin(x)/(2*cos(x/3)^3)";
  sys.domain = Region::ball(1, 3.14159265358979323846);
  sys.map = [](const StateVector& x) {
    double v = x[0];
    double c = std::cos(v / 3.0);
    return StateVector{std::sin(v) / (2.0 * c * c * c)};
  };
  return sys;
}

// 2-d: (x, y) -> (x*y*exp(-y^2), alpha*x) on R^2.
inline DiscreteSystem make_gauss_product(double alpha) {
  DiscreteSystem sys;
  sys.dim = 2;
  sys.label = "(x,y)' = (x*y*exp(-y^2), alpha*x)";
  sys.domain = Region::all(2);
  sys.map = [alpha](const StateVector& x) {
    double a = x[0], b = x[1];
    return StateVector{a * b * std::exp(-b * b), alpha * a};
  };
  return sys;
}

enum class NormShellMap {
  Quadratic,  // F(x) = ||x||^2
  ExpShift,   // F(x) = exp(||x||^2) + 1 - e
};

// n-d family: x' = F(x) / (1 + | ||x|| - e^alpha |) * x on R^n.
inline DiscreteSystem make_norm_shell(double alpha, NormShellMap choice,
                                      int dim = 1) {
  if (dim < 1) throw DimensionMismatch("norm_shell dimension must be >= 1");
  DiscreteSystem sys;
  sys.dim = dim;
  sys.label = choice == NormShellMap::Quadratic
                  ? "x' = norm(x)^2/(1+|norm(x)-e^a|)*x"
                  : "x' = (exp(norm(x)^2)+1-e)/(1+|norm(x)-e^a|)*x";
  sys.domain = Region::all(dim);
  const double shell = std::exp(alpha);
  sys.map = [choice, shell](const StateVector& x) {
    double r = x.norm();
    double f = choice == NormShellMap::Quadratic
                   ? r * r
                   : std::exp(r * r) + 1.0 - std::exp(1.0);
    double s = f / (1.0 + std::abs(r - shell));
    std::vector<double> out(x.coords());
    for (auto& v : out) v *= s;
    return StateVector(std::move(out));
  };
  return sys;
}

}  // namespace gstab
