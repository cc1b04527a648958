#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ndalg/expr.hpp"
#include "ndalg/interval.hpp"

namespace ndalg {

/// Projectable group action on the (x, u) plane: the new independent
/// variable depends on x alone, and the dependent variable transforms
/// affinely, u -> output_scale(x) * u + output_offset(x) with
/// output_scale > 0. That covers the vertical-shift symmetry and keeps
/// the inverse action exact; general dependent-variable maps are out of
/// scope.
struct ProjectableAction {
  SmoothExpr forward_map;    // strictly monotone diffeomorphism of the line
  SmoothExpr inverse_map;
  SmoothExpr output_scale;   // alpha(x) > 0
  SmoothExpr output_offset;  // beta(x)

  static ProjectableAction identity_action() {
    return {identity(), identity(), constant(1.0), constant(0.0)};
  }

  static ProjectableAction vertical(double epsilon) {
    return {identity(), identity(), constant(1.0), constant(epsilon)};
  }

  static ProjectableAction translation(double c) {
    return {sum({identity(), constant(c)}), sum({identity(), constant(-c)}),
            constant(1.0), constant(0.0)};
  }
};

/// Checks the action invariants on a sample grid: round-trip of the
/// coordinate change within 1e-9, a derivative of constant sign (the
/// map must be a diffeomorphism), and positive output scale.
inline void validate_projectable(const ProjectableAction& act,
                                 Interval check_window = {-4.0, 4.0},
                                 int check_samples = 33) {
  const SmoothExpr slope = act.forward_map.derivative();
  bool seen_positive = false;
  bool seen_negative = false;
  for (int i = 0; i < check_samples; ++i) {
    const double x = check_window.lo +
                     (check_window.hi - check_window.lo) * i / (check_samples - 1);
    const double round_trip = act.forward_map.eval(act.inverse_map.eval(x));
    if (std::abs(round_trip - x) > 1e-9 * std::max(1.0, std::abs(x)))
      throw std::invalid_argument(
          "projectable action: forward and inverse maps do not round-trip");
    const double d = slope.eval(x);
    if (d > 0.0) seen_positive = true;
    if (d < 0.0) seen_negative = true;
    if (d == 0.0 || (seen_positive && seen_negative))
      throw std::invalid_argument(
          "projectable action: forward map is not strictly monotone");
    if (act.output_scale.eval(x) <= 0.0)
      throw std::invalid_argument(
          "projectable action: output scale must be positive");
  }
}

inline ProjectableAction make_projectable(SmoothExpr forward, SmoothExpr inverse,
                                          SmoothExpr output_scale,
                                          SmoothExpr output_offset) {
  ProjectableAction act{std::move(forward), std::move(inverse),
                        std::move(output_scale), std::move(output_offset)};
  validate_projectable(act);
  return act;
}

/// Action on functions: x -> scale(inv(x)) * U(inv(x)) + offset(inv(x)).
inline SmoothExpr apply_projectable(const ProjectableAction& act,
                                    const SmoothExpr& u) {
  validate_projectable(act);
  SmoothExpr pulled_u = compose(u, act.inverse_map);
  SmoothExpr pulled_scale = compose(act.output_scale, act.inverse_map);
  SmoothExpr pulled_offset = compose(act.output_offset, act.inverse_map);
  return sum({product({pulled_scale, pulled_u}), pulled_offset});
}

}  // namespace ndalg
