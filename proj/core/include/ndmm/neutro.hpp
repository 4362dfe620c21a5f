#pragma once

#include <string_view>

namespace ndmm {

/// A value of the form det + ind * I, where I is the indeterminacy symbol.
///
/// Ratings and weighted scores share this representation: scaling by a real
/// weight and summing keep a value linear in I, so no higher powers arise.
struct NeutroValue {
  double det = 0.0;
  double ind = 0.0;

  bool is_crisp() const noexcept { return ind == 0.0; }

  friend bool operator==(const NeutroValue&, const NeutroValue&) = default;
};

/// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double midpoint() const noexcept { return lo + (hi - lo) / 2.0; }
  double width() const noexcept { return hi - lo; }
  bool is_point() const noexcept { return lo == hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Position of interval a relative to interval b.
enum class IntervalRelation {
  kDisjointBelow,  // a.hi < b.lo
  kDisjointAbove,  // a.lo > b.hi
  kOverlapping,
  kContains,       // a strictly larger and covers b
  kContainedIn,    // b strictly larger and covers a
  kEqual,
};

std::string_view to_string(IntervalRelation r) noexcept;

// Throw NumericError when the result is not finite.
NeutroValue nv_add(const NeutroValue& a, const NeutroValue& b);
NeutroValue nv_scale(double w, const NeutroValue& a);

/// Substitute a concrete value for I.
double nv_eval(const NeutroValue& a, double i_value);

/// Extremes of a over I in [i_min, i_max]. Throws ConfigError on invalid bounds.
Interval nv_to_interval(const NeutroValue& a, double i_min, double i_max);

IntervalRelation interval_relation(const Interval& a, const Interval& b) noexcept;

inline NeutroValue operator+(const NeutroValue& a, const NeutroValue& b) { return nv_add(a, b); }
inline NeutroValue operator*(double w, const NeutroValue& a) { return nv_scale(w, a); }

}  // namespace ndmm
