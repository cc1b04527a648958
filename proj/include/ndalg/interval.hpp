#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ndalg {

/// Closed interval [lo, hi]; endpoints may be +/-infinity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static constexpr double inf = std::numeric_limits<double>::infinity();

  static Interval whole_line() { return {-inf, inf}; }

  bool valid() const { return lo <= hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool interior_contains(double x) const { return lo < x && x < hi; }

  double length() const { return hi - lo; }

  /// Distance from x to the interval (0 when inside).
  double distance_to(double x) const {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
  }
};

inline bool overlaps_or_touches(const Interval& a, const Interval& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

inline Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

/// Interval on which an expression is exactly constant. The contract is
/// strict: value is returned bit-for-bit by evaluation anywhere inside.
struct FlatZone {
  Interval span;
  double value = 0.0;
};

/// Merge zones that touch or overlap and carry the same value. Keeps the
/// list small and makes union-coverage (e.g. products of cutoffs whose
/// zero zones jointly cover an interval) visible as a single zone.
inline std::vector<FlatZone> merge_flat_zones(std::vector<FlatZone> zones,
                                              std::size_t cap = 64) {
  std::sort(zones.begin(), zones.end(), [](const FlatZone& a, const FlatZone& b) {
    if (a.span.lo != b.span.lo) return a.span.lo < b.span.lo;
    return a.span.hi < b.span.hi;
  });
  std::vector<FlatZone> out;
  for (const FlatZone& z : zones) {
    if (!z.span.valid()) continue;
    bool merged = false;
    for (FlatZone& o : out) {
      if (o.value == z.value && overlaps_or_touches(o.span, z.span)) {
        o.span.lo = std::min(o.span.lo, z.span.lo);
        o.span.hi = std::max(o.span.hi, z.span.hi);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(z);
  }
  // A second pass catches chains (A merges into B which now touches C).
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < out.size() && !changed; ++j) {
        if (out[i].value == out[j].value &&
            overlaps_or_touches(out[i].span, out[j].span)) {
          out[i].span.lo = std::min(out[i].span.lo, out[j].span.lo);
          out[i].span.hi = std::max(out[i].span.hi, out[j].span.hi);
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
  }
  if (out.size() > cap) out.resize(cap);  // sound: zones are an under-approximation
  return out;
}

}  // namespace ndalg
