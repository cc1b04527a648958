#pragma once

#include <map>
#include <stdexcept>

namespace ndalg {

/// One-point jump symmetry: inserts a height-h jump at x = location via
/// index-shrinking cutoffs. Same-location elements form a commutative
/// group under height addition.
struct JumpAction {
  double location = 0.0;
  double height = 0.0;
};

/// Finite family of jumps, one per location. Locations are kept sorted
/// and pairwise distinct by the map; zero heights are permitted.
struct MultiJumpAction {
  std::map<double, double> jumps;

  static MultiJumpAction single(const JumpAction& j) {
    MultiJumpAction m;
    m.jumps[j.location] = j.height;
    return m;
  }

  bool empty() const { return jumps.empty(); }

  MultiJumpAction inverse() const {
    MultiJumpAction m;
    for (const auto& [a, h] : jumps) m.jumps[a] = -h;
    return m;
  }

  /// Drops zero-height entries. Not applied automatically: composition
  /// keeps the full merged location set.
  MultiJumpAction normalized() const {
    MultiJumpAction m;
    for (const auto& [a, h] : jumps)
      if (h != 0.0) m.jumps[a] = h;
    return m;
  }
};

/// Classical vertical-shift symmetry as an action descriptor; folds by
/// addition of the shift amount.
struct VerticalShiftAction {
  double epsilon = 0.0;
};

/// Same-location group law: (a,h) after (a,k) is (a, h+k).
inline JumpAction compose_jump(const JumpAction& outer, const JumpAction& inner) {
  if (outer.location != inner.location)
    throw std::invalid_argument(
        "compose_jump: different jump locations; lift both to MultiJumpAction "
        "and use compose_multi");
  return {outer.location, outer.height + inner.height};
}

/// Merged composition over the union of location sets: heights add where
/// both actions jump, and pass through elsewhere.
inline MultiJumpAction compose_multi(const MultiJumpAction& outer,
                                     const MultiJumpAction& inner) {
  MultiJumpAction out = outer;
  for (const auto& [a, h] : inner.jumps) {
    auto it = out.jumps.find(a);
    if (it == out.jumps.end())
      out.jumps[a] = h;
    else
      it->second = it->second + h;
  }
  return out;
}

}  // namespace ndalg
