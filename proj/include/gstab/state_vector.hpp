#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "gstab/errors.hpp"

namespace gstab {

// A point of R^n with every coordinate finite.
class StateVector {
 public:
  explicit StateVector(std::vector<double> coords) : c_(std::move(coords)) {
    if (c_.empty()) {
      throw DimensionMismatch("state vector must have positive dimension");
    }
    for (double v : c_) {
      if (!std::isfinite(v)) {
        throw NonFiniteOutput("state vector coordinate is not finite");
      }
    }
  }

  StateVector(std::initializer_list<double> coords)
      : StateVector(std::vector<double>(coords)) {}

  static StateVector zero(int dim) {
    return StateVector(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  }

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](std::size_t i) const { return c_[i]; }
  const std::vector<double>& coords() const { return c_; }

  double norm() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    double r = std::sqrt(s);
    if (r != 0.0 && std::isfinite(r)) return r;
    // squares under- or overflowed: rescale by the largest magnitude
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    if (m == 0.0) return 0.0;
    double t = 0.0;
    for (double v : c_) {
      double q = v / m;
      t += q * q;
    }
    return m * std::sqrt(t);
  }

  bool is_origin() const {
    for (double v : c_) {
      if (v != 0.0) return false;
    }
    return true;
  }

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<double> c_;
};

inline std::string to_string(const StateVector& x) {
  std::string out = "(";
  for (int i = 0; i < x.dim(); ++i) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x[static_cast<std::size_t>(i)]);
    out += buf;
    if (i + 1 < x.dim()) out += ", ";
  }
  out += ")";
  return out;
}

}  // namespace gstab
