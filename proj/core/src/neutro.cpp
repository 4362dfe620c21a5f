#include "ndmm/neutro.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ndmm/error.hpp"

namespace ndmm {

namespace {

NeutroValue checked(NeutroValue v) {
  if (!std::isfinite(v.det) || !std::isfinite(v.ind)) {
    throw NumericError("non-finite result");
  }
  return v;
}

}  // namespace

std::string_view to_string(IntervalRelation r) noexcept {
  switch (r) {
    case IntervalRelation::kDisjointBelow: return "disjoint-below";
    case IntervalRelation::kDisjointAbove: return "disjoint-above";
    case IntervalRelation::kOverlapping: return "overlapping";
    case IntervalRelation::kContains: return "contains";
    case IntervalRelation::kContainedIn: return "contained-in";
    case IntervalRelation::kEqual: return "equal";
  }
  return "unknown";
}

NeutroValue nv_add(const NeutroValue& a, const NeutroValue& b) {
  return checked({a.det + b.det, a.ind + b.ind});
}

NeutroValue nv_scale(double w, const NeutroValue& a) {
  if (!std::isfinite(w)) throw NumericError("non-finite weight");
  return checked({w * a.det, w * a.ind});
}

double nv_eval(const NeutroValue& a, double i_value) {
  if (!std::isfinite(i_value)) throw NumericError("non-finite value for I");
  const double r = a.det + a.ind * i_value;
  if (!std::isfinite(r)) throw NumericError("non-finite result");
  return r;
}

Interval nv_to_interval(const NeutroValue& a, double i_min, double i_max) {
  if (!std::isfinite(i_min) || !std::isfinite(i_max) || i_min > i_max) {
    throw ConfigError("invalid I-bounds");
  }
  const double e1 = nv_eval(a, i_min);
  const double e2 = nv_eval(a, i_max);
  return {std::min(e1, e2), std::max(e1, e2)};
}

IntervalRelation interval_relation(const Interval& a, const Interval& b) noexcept {
  if (a.lo == b.lo && a.hi == b.hi) return IntervalRelation::kEqual;
  if (a.hi < b.lo) return IntervalRelation::kDisjointBelow;
  if (a.lo > b.hi) return IntervalRelation::kDisjointAbove;
  if (b.lo <= a.lo && a.hi <= b.hi) return IntervalRelation::kContainedIn;
  if (a.lo <= b.lo && b.hi <= a.hi) return IntervalRelation::kContains;
  return IntervalRelation::kOverlapping;
}

}  // namespace ndmm
