#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "gstab/errors.hpp"
#include "gstab/extended_real.hpp"
#include "gstab/state_vector.hpp"

namespace gstab {

// An extended-real valued function used as a stability certificate through
// its strict sub-level sets. min_level is the value at the origin when that
// is defined, otherwise -inf (the limit there).
//
// norm_monotone marks functions that are nondecreasing in ||x|| for large
// ||x||; checks use it to classify motions that escape the representable
// range.
struct GFunction {
  int dim = 1;
  std::function<ExtendedReal(const StateVector&)> eval;
  ExtendedReal min_level = ExtendedReal::neg_inf();
  std::string label;
  bool norm_monotone = false;
};

inline ExtendedReal eval_g(const GFunction& g, const StateVector& x) {
  if (x.dim() != g.dim) {
    throw DimensionMismatch("eval_g: state dimension " +
                            std::to_string(x.dim()) + " != " +
                            std::to_string(g.dim));
  }
  return g.eval(x);
}

enum class BuiltinG {
  LogNorm,           // ln||x||, -inf at 0
  LogOverNorm,       // ln(||x||)/||x||, -inf at 0
  NegSinc,           // -sin(||x||)/||x||, -1 at 0
  NegCosExp,         // -cos(sum_i x_i) * exp(-||x||^2)
  PiecewiseLogNorm,  // ln||x|| inside the unit ball, ||x|| outside
  LogNormL1,         // ln(|x_1|+...+|x_n|), -inf at 0
};

inline GFunction make_gfunction(BuiltinG id, int dim) {
  if (dim < 1) throw DimensionMismatch("gfunction dimension must be >= 1");
  GFunction g;
  g.dim = dim;
  switch (id) {
    case BuiltinG::LogNorm:
      g.label = "ln(norm(x))";
      g.min_level = ExtendedReal::neg_inf();
      g.norm_monotone = true;
      g.eval = [](const StateVector& x) {
        double r = x.norm();
        if (r == 0.0) return ExtendedReal::neg_inf();
        return ExtendedReal::from_eval(std::log(r));
      };
      break;
    case BuiltinG::LogOverNorm:
      g.label = "ln(norm(x))/norm(x)";
      g.min_level = ExtendedReal::neg_inf();
      g.eval = [](const StateVector& x) {
        double r = x.norm();
        if (r == 0.0) return ExtendedReal::neg_inf();
        return ExtendedReal::from_eval(std::log(r) / r);
      };
      break;
    case BuiltinG::NegSinc:
      g.label = "-sin(norm(x))/norm(x)";
      g.min_level = ExtendedReal::finite(-1.0);
      g.eval = [](const StateVector& x) {
        double r = x.norm();
        if (r == 0.0) return ExtendedReal::finite(-1.0);
        return ExtendedReal::from_eval(-std::sin(r) / r);
      };
      break;
    case BuiltinG::NegCosExp:
      g.label = "-cos(sum(x))*exp(-norm(x)^2)";
      g.min_level = ExtendedReal::finite(-1.0);
      g.eval = [](const StateVector& x) {
        double s = 0.0;
        double r2 = 0.0;
        for (double v : x.coords()) {
          s += v;
          r2 += v * v;
        }
        return ExtendedReal::from_eval(-std::cos(s) * std::exp(-r2));
      };
      break;
    case BuiltinG::PiecewiseLogNorm:
      g.label = "ln(norm(x)) if norm(x)<1 else norm(x)";
      g.min_level = ExtendedReal::neg_inf();
      g.norm_monotone = true;
      g.eval = [](const StateVector& x) {
        double r = x.norm();
        if (r == 0.0) return ExtendedReal::neg_inf();
        if (r < 1.0) return ExtendedReal::from_eval(std::log(r));
        return ExtendedReal::finite(r);
      };
      break;
    case BuiltinG::LogNormL1:
      g.label = "ln(|x_1|+...+|x_n|)";
      g.min_level = ExtendedReal::neg_inf();
      g.norm_monotone = true;
      g.eval = [](const StateVector& x) {
        double s = 0.0;
        for (double v : x.coords()) s += std::abs(v);
        if (s == 0.0) return ExtendedReal::neg_inf();
        return ExtendedReal::from_eval(std::log(s));
      };
      break;
  }
  return g;
}

}  // namespace gstab
