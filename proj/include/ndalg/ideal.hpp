#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "ndalg/algebra.hpp"
#include "ndalg/expr.hpp"
#include "ndalg/interval.hpp"

namespace ndalg {

/// Certificate data for membership in the nowhere-dense ideal: the
/// (finite) singular set, the shrink-radius profile, and optional
/// stabilization-index overrides per neighborhood.
struct IdealWitness {
  std::vector<double> gamma;   // sorted ascending, finite
  double radius_scale = 1.0;   // r_nu = radius_scale / (nu + 1)
  std::vector<std::pair<Interval, std::size_t>> stabilization_overrides;

  static IdealWitness for_points(std::vector<double> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    IdealWitness w;
    w.gamma = std::move(points);
    return w;
  }

  double radius(std::size_t nu) const {
    return radius_scale / static_cast<double>(nu + 1);
  }

  double distance_to_gamma(double x) const {
    double d = Interval::inf;
    for (double g : gamma) d = std::min(d, std::abs(x - g));
    return d;
  }

  /// Index from which terms are expected to vanish on the neighborhood.
  /// Defaults to the first nu whose shrink radius clears the distance
  /// from the neighborhood to the singular set.
  std::size_t stabilization_index(const Interval& neighborhood) const {
    for (const auto& [window, mu] : stabilization_overrides)
      if (window.contains(neighborhood)) return mu;
    double d = Interval::inf;
    for (double g : gamma) d = std::min(d, neighborhood.distance_to(g));
    if (d == Interval::inf) return 0;  // empty gamma
    if (d <= 0.0) return static_cast<std::size_t>(-1);
    double nu = std::ceil(radius_scale / d) - 1.0;
    return nu <= 0.0 ? 0 : static_cast<std::size_t>(nu);
  }
};

/// Finitization of the membership condition's quantifiers: where to look
/// (window), how densely (sample_count), how far up the sequence
/// (index_cap), how closely to approach singular points (margin), and
/// what counts as numerically vanished (vanish_tol).
struct CheckProtocol {
  Interval window{-3.0, 3.0};
  int sample_count = 41;
  int index_cap = 16;
  double margin = 0.25;
  double vanish_tol = 1e-9;
};

enum class Decision { Certified, Refuted, Inconclusive };

struct Counterexample {
  std::size_t nu = 0;
  double x = 0.0;
  double value = 0.0;
};

struct CheckReport {
  Decision decision = Decision::Inconclusive;
  std::optional<Counterexample> counterexample;
  std::vector<std::size_t> checked_indices;
  Interval window;
};

/// Checks whether the sequence w belongs to the nowhere-dense ideal, as
/// witnessed: every sampled point of the window away from gamma must own
/// a neighborhood on which all terms from the stabilization index up to
/// index_cap vanish — structurally when provable, else by sampling.
///
/// Certified and Refuted are sound for the constructed fragment (finite
/// gamma, terms that vanish exactly once their shrink bands clear the
/// neighborhood); Inconclusive is an honest refusal.
inline CheckReport ideal_member(const RepSequence& w, const IdealWitness& witness,
                                const CheckProtocol& protocol) {
  if (!protocol.window.valid() || !protocol.window.bounded())
    throw std::invalid_argument("ideal_member: window must be a nonempty compact interval");
  if (protocol.sample_count < 1)
    throw std::invalid_argument("ideal_member: sample_count must be positive");
  if (protocol.index_cap < 0)
    throw std::invalid_argument("ideal_member: index_cap must be nonnegative");
  if (protocol.margin <= 0.0)
    throw std::invalid_argument("ideal_member: margin must be positive");
  if (witness.radius_scale <= 0.0)
    throw std::invalid_argument("ideal_member: witness radius scale must be positive");

  CheckReport report;
  report.window = protocol.window;
  const std::size_t cap = static_cast<std::size_t>(protocol.index_cap);

  std::vector<std::optional<SmoothExpr>> terms(cap + 1);
  auto term = [&](std::size_t nu) -> const SmoothExpr& {
    if (!terms[nu]) terms[nu] = w.at(nu);
    return *terms[nu];
  };

  std::set<std::size_t> checked;
  bool all_verified = true;
  bool examined_any = false;

  for (int i = 0; i < protocol.sample_count; ++i) {
    const double x =
        protocol.sample_count == 1
            ? 0.5 * (protocol.window.lo + protocol.window.hi)
            : protocol.window.lo + (protocol.window.hi - protocol.window.lo) *
                                       i / (protocol.sample_count - 1);
    if (witness.distance_to_gamma(x) < protocol.margin) continue;

    const Interval hood{x - 0.5 * protocol.margin, x + 0.5 * protocol.margin};
    const std::size_t mu = witness.stabilization_index(hood);
    if (mu > cap) {
      all_verified = false;  // stabilized range out of reach of the cap
      continue;
    }
    examined_any = true;

    for (std::size_t nu = mu; nu <= cap; ++nu) {
      checked.insert(nu);
      const SmoothExpr& e = term(nu);
      if (is_zero_on(e, hood) == ZeroDecision::Yes) continue;
      const int samples = 32;
      for (int j = 0; j < samples; ++j) {
        const double xv =
            hood.lo + (hood.hi - hood.lo) * j / (samples - 1);
        const double v = e.eval(xv);
        if (std::abs(v) > protocol.vanish_tol) {
          report.decision = Decision::Refuted;
          report.counterexample = Counterexample{nu, xv, v};
          report.checked_indices.assign(checked.begin(), checked.end());
          return report;
        }
      }
    }
  }

  report.decision = (all_verified && examined_any) ? Decision::Certified
                                                   : Decision::Inconclusive;
  report.checked_indices.assign(checked.begin(), checked.end());
  return report;
}

/// Quotient equality: membership of the termwise difference.
inline CheckReport equiv(const GeneralizedFunction& a, const GeneralizedFunction& b,
                         const IdealWitness& witness, const CheckProtocol& protocol) {
  return ideal_member(seq_sum({a.rep, seq_scale(-1.0, b.rep)}), witness, protocol);
}

}  // namespace ndalg
