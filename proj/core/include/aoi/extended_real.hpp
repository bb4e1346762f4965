#pragma once

#include <limits>

#include "aoi/errors.hpp"

namespace aoi {

/// A nonnegative quantity that may be +infinity, e.g. a diverging second
/// moment. The infinite case is an explicit state rather than an overflowed
/// double so callers have to branch on it.
class ExtendedReal {
 public:
  static constexpr ExtendedReal finite(double v) { return ExtendedReal(v, false); }
  static constexpr ExtendedReal infinite() { return ExtendedReal(0.0, true); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Throws if infinite.
  double value() const {
    if (infinite_) throw DegenerateSampleError("value() called on an infinite quantity");
    return value_;
  }

  /// IEEE view for printing and comparisons: +inf when infinite.
  constexpr double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  constexpr ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}

  double value_;
  bool infinite_;
};

}  // namespace aoi
