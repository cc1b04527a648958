#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ndalg/interval.hpp"
#include "ndalg/jet.hpp"

namespace ndalg {

enum class NodeKind {
  Constant,
  Identity,
  Sum,
  Product,
  Scale,
  Compose,
  AffineArg,
  Step,
  Glued,
};

enum class ZeroDecision { Yes, No, Unknown };

/// Exact symbolic representation of a C-infinity function of one real
/// variable. Values are immutable after construction and safe to share
/// across threads.
///
/// Every node carries its known flat zones: intervals on which the
/// function is exactly constant. Evaluation consults them first, so
/// structural zeros and ones are returned bit-exactly; everything else
/// is double-precision numerics.
class SmoothExpr {
 public:
  double eval(double x) const;

  /// Evaluation restricted to paths that only touch flat-zone lookups
  /// and double arithmetic on already-exact subresults. Returns nullopt
  /// when the value would require transcendental evaluation.
  std::optional<double> eval_exact(double x) const;

  SmoothExpr derivative() const;
  SmoothExpr derivative(int order) const;

  const std::vector<FlatZone>& flat_zones() const { return node_->zones; }

  /// Flat zone with value 0 containing x, if one is known.
  std::optional<Interval> zero_zone_at(double x) const;

  NodeKind kind() const { return node_->kind; }
  std::size_t child_count() const { return node_->kids.size(); }
  const SmoothExpr& child(std::size_t i) const { return node_->kids[i]; }

  double constant_value() const { return node_->p0; }  // Constant
  double scale_factor() const { return node_->p0; }    // Scale
  double affine_slope() const { return node_->p0; }    // AffineArg
  double affine_offset() const { return node_->p1; }   // AffineArg
  int step_order() const { return node_->order; }      // Step
  double breakpoint() const { return node_->p0; }      // Glued
  Interval deadzone() const { return {node_->p1, node_->p2}; }  // Glued

 private:
  struct Node {
    NodeKind kind;
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    int order = 0;
    std::vector<SmoothExpr> kids;
    std::vector<FlatZone> zones;
  };

  explicit SmoothExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static SmoothExpr make(Node n) {
    return SmoothExpr(std::make_shared<const Node>(std::move(n)));
  }

  std::shared_ptr<const Node> node_;

  friend SmoothExpr constant(double);
  friend SmoothExpr identity();
  friend SmoothExpr sum(std::vector<SmoothExpr>);
  friend SmoothExpr product(std::vector<SmoothExpr>);
  friend SmoothExpr scale(double, SmoothExpr);
  friend SmoothExpr compose(SmoothExpr, SmoothExpr);
  friend SmoothExpr affine_precompose(SmoothExpr, double, double);
  friend SmoothExpr make_smooth_step(int);
  friend SmoothExpr glued(double, SmoothExpr, SmoothExpr, Interval);
};

SmoothExpr constant(double value);
SmoothExpr identity();
SmoothExpr sum(std::vector<SmoothExpr> terms);
SmoothExpr product(std::vector<SmoothExpr> factors);
SmoothExpr scale(double factor, SmoothExpr e);
SmoothExpr compose(SmoothExpr outer, SmoothExpr inner);
SmoothExpr affine_precompose(SmoothExpr e, double slope, double offset);
SmoothExpr make_smooth_step(int derivative_order = 0);
SmoothExpr make_rho();
SmoothExpr glued(double breakpoint, SmoothExpr left, SmoothExpr right,
                 Interval deadzone);
ZeroDecision is_zero_on(const SmoothExpr& e, Interval where);

inline SmoothExpr operator+(SmoothExpr a, SmoothExpr b) {
  return sum({std::move(a), std::move(b)});
}
inline SmoothExpr operator*(SmoothExpr a, SmoothExpr b) {
  return product({std::move(a), std::move(b)});
}
inline SmoothExpr operator-(SmoothExpr a, SmoothExpr b) {
  return sum({std::move(a), scale(-1.0, std::move(b))});
}
inline SmoothExpr operator-(SmoothExpr a) { return scale(-1.0, std::move(a)); }

// ---------------------------------------------------------------------------
// evaluation

inline double SmoothExpr::eval(double x) const {
  const Node& n = *node_;
  for (const FlatZone& z : n.zones)
    if (z.span.contains(x)) return z.value;
  switch (n.kind) {
    case NodeKind::Constant:
      return n.p0;
    case NodeKind::Identity:
      return x;
    case NodeKind::Sum: {
      double acc = n.kids[0].eval(x);
      for (std::size_t i = 1; i < n.kids.size(); ++i) acc += n.kids[i].eval(x);
      return acc;
    }
    case NodeKind::Product: {
      double acc = n.kids[0].eval(x);
      for (std::size_t i = 1; i < n.kids.size(); ++i) acc *= n.kids[i].eval(x);
      return acc;
    }
    case NodeKind::Scale:
      return n.p0 * n.kids[0].eval(x);
    case NodeKind::Compose:
      return n.kids[0].eval(n.kids[1].eval(x));
    case NodeKind::AffineArg:
      return n.kids[0].eval(n.p0 * x + n.p1);
    case NodeKind::Step: {
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return n.order == 0 ? 1.0 : 0.0;
      if (n.order == 0) {
        const double a = std::exp(-1.0 / x);
        const double b = std::exp(-1.0 / (1.0 - x));
        return a / (a + b);
      }
      return detail::step_derivative_inside(static_cast<std::size_t>(n.order), x);
    }
    case NodeKind::Glued:
      return x <= n.p0 ? n.kids[0].eval(x) : n.kids[1].eval(x);
  }
  return 0.0;  // unreachable
}

inline std::optional<double> SmoothExpr::eval_exact(double x) const {
  const Node& n = *node_;
  for (const FlatZone& z : n.zones)
    if (z.span.contains(x)) return z.value;
  switch (n.kind) {
    case NodeKind::Constant:
      return n.p0;
    case NodeKind::Identity:
      return x;
    case NodeKind::Sum: {
      double acc = 0.0;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        auto v = n.kids[i].eval_exact(x);
        if (!v) return std::nullopt;
        acc = (i == 0) ? *v : acc + *v;
      }
      return acc;
    }
    case NodeKind::Product: {
      std::vector<std::optional<double>> vals;
      vals.reserve(n.kids.size());
      for (const SmoothExpr& k : n.kids) vals.push_back(k.eval_exact(x));
      for (const auto& v : vals)
        if (v && *v == 0.0) return 0.0;  // zero-factor propagation
      double acc = 0.0;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        if (!vals[i]) return std::nullopt;
        acc = (i == 0) ? *vals[i] : acc * *vals[i];
      }
      return acc;
    }
    case NodeKind::Scale: {
      auto v = n.kids[0].eval_exact(x);
      if (!v) return std::nullopt;
      return n.p0 * *v;
    }
    case NodeKind::Compose: {
      auto v = n.kids[1].eval_exact(x);
      if (!v) return std::nullopt;
      return n.kids[0].eval_exact(*v);
    }
    case NodeKind::AffineArg:
      return n.kids[0].eval_exact(n.p0 * x + n.p1);
    case NodeKind::Step:
      return std::nullopt;  // interior values are transcendental
    case NodeKind::Glued:
      return x <= n.p0 ? n.kids[0].eval_exact(x) : n.kids[1].eval_exact(x);
  }
  return std::nullopt;  // unreachable
}

inline std::optional<Interval> SmoothExpr::zero_zone_at(double x) const {
  for (const FlatZone& z : node_->zones)
    if (z.value == 0.0 && z.span.contains(x)) return z.span;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// construction

inline SmoothExpr constant(double value) {
  SmoothExpr::Node n{NodeKind::Constant};
  n.p0 = value;
  n.zones = {{Interval::whole_line(), value}};
  return SmoothExpr::make(std::move(n));
}

inline SmoothExpr identity() {
  return SmoothExpr::make(SmoothExpr::Node{NodeKind::Identity});
}

inline SmoothExpr sum(std::vector<SmoothExpr> terms) {
  std::vector<SmoothExpr> kept;
  kept.reserve(terms.size());
  for (SmoothExpr& t : terms) {
    if (t.kind() == NodeKind::Constant && t.constant_value() == 0.0) continue;
    kept.push_back(std::move(t));
  }
  if (kept.empty()) return constant(0.0);
  if (kept.size() == 1) return std::move(kept[0]);

  // zones: intersections across all terms, values folded in term order
  std::vector<FlatZone> zones = kept[0].flat_zones();
  for (std::size_t i = 1; i < kept.size(); ++i) {
    std::vector<FlatZone> next;
    for (const FlatZone& za : zones)
      for (const FlatZone& zb : kept[i].flat_zones()) {
        Interval common = intersect(za.span, zb.span);
        if (common.valid()) next.push_back({common, za.value + zb.value});
      }
    zones = std::move(next);
    if (zones.empty()) break;
  }
  SmoothExpr::Node n{NodeKind::Sum};
  n.kids = std::move(kept);
  n.zones = merge_flat_zones(std::move(zones));
  return SmoothExpr::make(std::move(n));
}

inline SmoothExpr product(std::vector<SmoothExpr> factors) {
  for (const SmoothExpr& f : factors)
    if (f.kind() == NodeKind::Constant && f.constant_value() == 0.0)
      return constant(0.0);
  std::vector<SmoothExpr> kept;
  kept.reserve(factors.size());
  for (SmoothExpr& f : factors) {
    if (f.kind() == NodeKind::Constant && f.constant_value() == 1.0) continue;
    kept.push_back(std::move(f));
  }
  if (kept.empty()) return constant(1.0);
  if (kept.size() == 1) return std::move(kept[0]);

  std::vector<FlatZone> zones;
  // zero zones of any factor annihilate the whole product
  for (const SmoothExpr& f : kept)
    for (const FlatZone& z : f.flat_zones())
      if (z.value == 0.0) zones.push_back({z.span, 0.0});
  // constant-on-common-interval combinations
  std::vector<FlatZone> combos = kept[0].flat_zones();
  for (std::size_t i = 1; i < kept.size() && !combos.empty(); ++i) {
    std::vector<FlatZone> next;
    for (const FlatZone& za : combos)
      for (const FlatZone& zb : kept[i].flat_zones()) {
        Interval common = intersect(za.span, zb.span);
        if (common.valid()) next.push_back({common, za.value * zb.value});
      }
    combos = std::move(next);
  }
  zones.insert(zones.end(), combos.begin(), combos.end());
  SmoothExpr::Node n{NodeKind::Product};
  n.kids = std::move(kept);
  n.zones = merge_flat_zones(std::move(zones));
  return SmoothExpr::make(std::move(n));
}

inline SmoothExpr scale(double factor, SmoothExpr e) {
  if (factor == 0.0) return constant(0.0);
  if (factor == 1.0) return e;
  if (e.kind() == NodeKind::Constant) return constant(factor * e.constant_value());
  SmoothExpr::Node n{NodeKind::Scale};
  n.p0 = factor;
  for (const FlatZone& z : e.flat_zones())
    n.zones.push_back({z.span, factor * z.value});
  n.kids = {std::move(e)};
  return SmoothExpr::make(std::move(n));
}

inline SmoothExpr compose(SmoothExpr outer, SmoothExpr inner) {
  SmoothExpr::Node n{NodeKind::Compose};
  std::vector<FlatZone> zones;
  for (const FlatZone& z : inner.flat_zones())
    zones.push_back({z.span, outer.eval(z.value)});
  for (const FlatZone& z : outer.flat_zones())
    if (z.span.contains(Interval::whole_line()))
      zones.push_back({Interval::whole_line(), z.value});
  n.zones = merge_flat_zones(std::move(zones));
  n.kids = {std::move(outer), std::move(inner)};
  return SmoothExpr::make(std::move(n));
}

/// x -> e(slope*x + offset). Flat zones are carried through the inverse
/// affine map, so structural zeros and ones survive reparametrization.
inline SmoothExpr affine_precompose(SmoothExpr e, double slope, double offset) {
  if (slope == 0.0)
    throw std::invalid_argument(
        "affine_precompose: slope must be nonzero (not a diffeomorphism)");
  if (slope == 1.0 && offset == 0.0) return e;
  SmoothExpr::Node n{NodeKind::AffineArg};
  n.p0 = slope;
  n.p1 = offset;
  for (const FlatZone& z : e.flat_zones()) {
    double a = (z.span.lo - offset) / slope;
    double b = (z.span.hi - offset) / slope;
    if (slope < 0.0) std::swap(a, b);
    n.zones.push_back({{a, b}, z.value});
  }
  n.zones = merge_flat_zones(std::move(n.zones));
  n.kids = {std::move(e)};
  return SmoothExpr::make(std::move(n));
}

/// The smooth step s(t) = f(t) / (f(t) + f(1-t)) with f(t) = exp(-1/t)
/// for t > 0 and 0 otherwise: identically 0 on (-inf, 0], identically 1
/// on [1, inf), strictly increasing in between, C-infinity everywhere.
/// derivative_order k > 0 selects the k-th derivative (flat value 0 on
/// both tails).
inline SmoothExpr make_smooth_step(int derivative_order) {
  if (derivative_order < 0)
    throw std::invalid_argument("make_smooth_step: negative derivative order");
  SmoothExpr::Node n{NodeKind::Step};
  n.order = derivative_order;
  n.zones = {{{-Interval::inf, 0.0}, 0.0},
             {{1.0, Interval::inf}, derivative_order == 0 ? 1.0 : 0.0}};
  return SmoothExpr::make(std::move(n));
}

inline SmoothExpr glued(double breakpoint, SmoothExpr left, SmoothExpr right,
                        Interval deadzone) {
  if (!deadzone.valid() || !deadzone.bounded() ||
      !deadzone.interior_contains(breakpoint))
    throw std::invalid_argument(
        "glued: breakpoint must lie strictly inside a bounded deadzone");
  SmoothExpr difference = sum({left, scale(-1.0, right)});
  if (is_zero_on(difference, deadzone) != ZeroDecision::Yes)
    throw std::invalid_argument(
        "glued: pieces are not provably identical on the deadzone");
  SmoothExpr::Node n{NodeKind::Glued};
  n.p0 = breakpoint;
  n.p1 = deadzone.lo;
  n.p2 = deadzone.hi;
  std::vector<FlatZone> zones;
  for (const FlatZone& z : left.flat_zones()) {
    Interval part = intersect(z.span, {-Interval::inf, breakpoint});
    if (part.valid()) zones.push_back({part, z.value});
  }
  for (const FlatZone& z : right.flat_zones()) {
    Interval part = intersect(z.span, {breakpoint, Interval::inf});
    if (part.valid()) zones.push_back({part, z.value});
  }
  n.zones = merge_flat_zones(std::move(zones));
  n.kids = {std::move(left), std::move(right)};
  return SmoothExpr::make(std::move(n));
}

/// Cutoff of the shrinking-jump construction: identically 0 on
/// [-1/2, 1/2], identically 1 outside (-1, 1), values in [0, 1], even by
/// construction (the left half is the mirrored right half).
inline SmoothExpr make_rho() {
  SmoothExpr rising = affine_precompose(make_smooth_step(), 2.0, -1.0);
  SmoothExpr mirrored = affine_precompose(rising, -1.0, 0.0);
  return glued(0.0, std::move(mirrored), std::move(rising), {-0.5, 0.5});
}

// ---------------------------------------------------------------------------
// derivation

inline SmoothExpr SmoothExpr::derivative() const {
  const Node& n = *node_;
  switch (n.kind) {
    case NodeKind::Constant:
      return constant(0.0);
    case NodeKind::Identity:
      return constant(1.0);
    case NodeKind::Sum: {
      std::vector<SmoothExpr> terms;
      terms.reserve(n.kids.size());
      for (const SmoothExpr& k : n.kids) terms.push_back(k.derivative());
      return sum(std::move(terms));
    }
    case NodeKind::Product: {
      std::vector<SmoothExpr> terms;
      for (std::size_t k = 0; k < n.kids.size(); ++k) {
        SmoothExpr dk = n.kids[k].derivative();
        if (dk.kind() == NodeKind::Constant && dk.constant_value() == 0.0)
          continue;
        std::vector<SmoothExpr> factors;
        factors.reserve(n.kids.size());
        for (std::size_t j = 0; j < n.kids.size(); ++j)
          factors.push_back(j == k ? dk : n.kids[j]);
        terms.push_back(product(std::move(factors)));
      }
      return sum(std::move(terms));
    }
    case NodeKind::Scale:
      return scale(n.p0, n.kids[0].derivative());
    case NodeKind::Compose:
      return product({compose(n.kids[0].derivative(), n.kids[1]),
                      n.kids[1].derivative()});
    case NodeKind::AffineArg:
      return scale(n.p0,
                   affine_precompose(n.kids[0].derivative(), n.p0, n.p1));
    case NodeKind::Step:
      return make_smooth_step(n.order + 1);
    case NodeKind::Glued:
      // valid piecewise: both pieces are identical on the deadzone, so
      // their derivatives are too, and the factory re-checks that.
      return glued(n.p0, n.kids[0].derivative(), n.kids[1].derivative(),
                   {n.p1, n.p2});
  }
  return constant(0.0);  // unreachable
}

inline SmoothExpr SmoothExpr::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("derivative: negative order");
  SmoothExpr e = *this;
  for (int i = 0; i < order; ++i) e = e.derivative();
  return e;
}

// ---------------------------------------------------------------------------
// zero decision

/// Yes  — a flat zone with value 0 covers the interval (sound proof).
/// No   — some exactly-evaluable sample point is nonzero (sound).
/// Unknown — anything else; an honest refusal rather than a guess.
inline ZeroDecision is_zero_on(const SmoothExpr& e, Interval where) {
  if (!where.valid())
    throw std::invalid_argument("is_zero_on: empty interval");
  if (!where.bounded())
    throw std::invalid_argument("is_zero_on: interval must be bounded");
  for (const FlatZone& z : e.flat_zones())
    if (z.value == 0.0 && z.span.contains(where)) return ZeroDecision::Yes;
  const int samples = 33;
  for (int i = 0; i < samples; ++i) {
    double x = where.lo == where.hi
                   ? where.lo
                   : where.lo + (where.hi - where.lo) * i / (samples - 1);
    auto v = e.eval_exact(x);
    if (v && *v != 0.0) return ZeroDecision::No;
  }
  return ZeroDecision::Unknown;
}

}  // namespace ndalg
