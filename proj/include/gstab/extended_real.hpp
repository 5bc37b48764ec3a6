#pragma once

#include <cmath>
#include <compare>
#include <cstdio>
#include <limits>
#include <string>

#include "gstab/errors.hpp"

namespace gstab {

// A value in R u {-inf}. Encoded as a double that is either finite or
// -infinity; NaN and +infinity are rejected at every construction site,
// so comparisons are a total order.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) {
    if (!std::isfinite(v)) {
      throw NonFiniteOutput("ExtendedReal::finite: value is not finite");
    }
    return ExtendedReal(v);
  }

  static ExtendedReal neg_inf() {
    return ExtendedReal(-std::numeric_limits<double>::infinity());
  }

  // Adopts a raw evaluation result: finite stays finite, -inf becomes the
  // bottom element, anything else (NaN, +inf) is an evaluation failure.
  static ExtendedReal from_eval(double raw) {
    if (std::isnan(raw)) {
      throw NonFiniteOutput("evaluation produced NaN");
    }
    if (raw == std::numeric_limits<double>::infinity()) {
      throw NonFiniteOutput("evaluation produced +inf");
    }
    return ExtendedReal(raw);
  }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_neg_inf() const { return !std::isfinite(v_); }

  double value() const {
    if (!is_finite()) {
      throw UndefinedDifference("value() called on -inf");
    }
    return v_;
  }

  // The underlying double, with -inf encoding the bottom element. Handy for
  // numeric code that already treats -inf correctly.
  double raw() const { return v_; }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const ExtendedReal& a,
                                          const ExtendedReal& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit ExtendedReal(double v) : v_(v) {}
  double v_;
};

// a - b on the extended reals. Defined for finite - finite and
// (-inf) - finite only; the remaining cases have no meaning here and
// signal a structural error in the caller.
inline ExtendedReal xr_sub(const ExtendedReal& a, const ExtendedReal& b) {
  if (b.is_neg_inf()) {
    throw UndefinedDifference(a.is_neg_inf()
                                  ? "(-inf) - (-inf) is undefined"
                                  : "finite - (-inf) is undefined");
  }
  if (a.is_neg_inf()) return ExtendedReal::neg_inf();
  double d = a.value() - b.value();
  if (!std::isfinite(d)) {
    throw NonFiniteOutput("extended-real difference overflowed");
  }
  return ExtendedReal::finite(d);
}

inline ExtendedReal xr_min(const ExtendedReal& a, const ExtendedReal& b) {
  return a < b ? a : b;
}

inline ExtendedReal xr_max(const ExtendedReal& a, const ExtendedReal& b) {
  return a < b ? b : a;
}

// Text form used across reports and CSV files: "-inf" or a shortest
// round-trippable decimal.
inline std::string xr_to_string(const ExtendedReal& x) {
  if (x.is_neg_inf()) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x.value());
  return buf;
}

}  // namespace gstab
