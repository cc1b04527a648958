#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ndalg/actions.hpp"
#include "ndalg/expr.hpp"
#include "ndalg/interval.hpp"

namespace ndalg {

enum class SeqKind {
  Embed,    // nu -> psi, the constant sequence of one smooth function
  Jump,     // one-point jump applied to an inner sequence
  Multi,    // multi-point jump applied to an inner sequence
  Shift,    // termwise addition of a constant
  Shrink,   // nu -> profile((nu+1)(x - center))
  Sum,
  Product,
  Scale,
  Derive,
};

/// An element of the sequence algebra: a deterministic rule nu -> smooth
/// function, stored as a finite description tree so that the rule can be
/// reconstructed exactly (and serialized) with no hidden state.
class RepSequence {
 public:
  SmoothExpr at(std::size_t nu) const;

  SeqKind kind() const { return node_->kind; }
  std::size_t child_count() const { return node_->kids.size(); }
  const RepSequence& child(std::size_t i) const { return node_->kids[i]; }
  const SmoothExpr& expr() const { return *node_->expr; }  // Embed, Shrink
  const JumpAction& jump() const { return node_->jump; }
  const MultiJumpAction& multi() const { return node_->multi; }
  double value() const { return node_->value; }  // Shift epsilon, Scale factor, Shrink center
  int order() const { return node_->order; }     // Derive

 private:
  struct Node {
    SeqKind kind;
    std::optional<SmoothExpr> expr;
    JumpAction jump;
    MultiJumpAction multi;
    double value = 0.0;
    int order = 0;
    std::vector<RepSequence> kids;
  };

  explicit RepSequence(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static RepSequence make(Node n) {
    return RepSequence(std::make_shared<const Node>(std::move(n)));
  }

  std::shared_ptr<const Node> node_;

  friend RepSequence constant_sequence(SmoothExpr);
  friend RepSequence seq_sum(std::vector<RepSequence>);
  friend RepSequence seq_product(std::vector<RepSequence>);
  friend RepSequence seq_scale(double, RepSequence);
  friend RepSequence seq_derive(int, RepSequence);
  friend RepSequence seq_shift(double, RepSequence);
  friend RepSequence seq_shrink(SmoothExpr, double);
  friend RepSequence apply_jump(const JumpAction&, RepSequence);
  friend RepSequence apply_multi(const MultiJumpAction&, RepSequence);
};

inline RepSequence constant_sequence(SmoothExpr psi) {
  RepSequence::Node n{SeqKind::Embed};
  n.expr = std::move(psi);
  return RepSequence::make(std::move(n));
}

inline RepSequence seq_sum(std::vector<RepSequence> terms) {
  if (terms.empty()) return constant_sequence(constant(0.0));
  if (terms.size() == 1) return std::move(terms[0]);
  RepSequence::Node n{SeqKind::Sum};
  n.kids = std::move(terms);
  return RepSequence::make(std::move(n));
}

inline RepSequence seq_product(std::vector<RepSequence> factors) {
  if (factors.empty()) return constant_sequence(constant(1.0));
  if (factors.size() == 1) return std::move(factors[0]);
  RepSequence::Node n{SeqKind::Product};
  n.kids = std::move(factors);
  return RepSequence::make(std::move(n));
}

inline RepSequence seq_scale(double factor, RepSequence s) {
  RepSequence::Node n{SeqKind::Scale};
  n.value = factor;
  n.kids = {std::move(s)};
  return RepSequence::make(std::move(n));
}

inline RepSequence seq_derive(int order, RepSequence s) {
  if (order < 0) throw std::invalid_argument("seq_derive: negative order");
  RepSequence::Node n{SeqKind::Derive};
  n.order = order;
  n.kids = {std::move(s)};
  return RepSequence::make(std::move(n));
}

inline RepSequence seq_shift(double epsilon, RepSequence s) {
  RepSequence::Node n{SeqKind::Shift};
  n.value = epsilon;
  n.kids = {std::move(s)};
  return RepSequence::make(std::move(n));
}

/// nu -> profile((nu+1)(x - center)); the shrinking-reparametrization
/// shapes the jump construction is made of, exposed for building test
/// sequences and ideal members.
inline RepSequence seq_shrink(SmoothExpr profile, double center) {
  RepSequence::Node n{SeqKind::Shrink};
  n.expr = std::move(profile);
  n.value = center;
  return RepSequence::make(std::move(n));
}

inline RepSequence apply_jump(const JumpAction& act, RepSequence s) {
  RepSequence::Node n{SeqKind::Jump};
  n.jump = act;
  n.kids = {std::move(s)};
  return RepSequence::make(std::move(n));
}

inline RepSequence apply_multi(const MultiJumpAction& act, RepSequence s) {
  RepSequence::Node n{SeqKind::Multi};
  n.multi = act;
  n.kids = {std::move(s)};
  return RepSequence::make(std::move(n));
}

namespace detail {

inline Interval shared_zero_zone(const SmoothExpr& left, const SmoothExpr& right,
                                 double x) {
  auto zl = left.zero_zone_at(x);
  auto zr = right.zero_zone_at(x);
  if (!zl || !zr)
    throw std::logic_error("jump construction lost its cutoff zero zone");
  Interval dz = intersect(*zl, *zr);
  dz.lo = std::max(dz.lo, x - 1.0);
  dz.hi = std::min(dz.hi, x + 1.0);
  return dz;
}

/// One term of the jump construction: cutoff * s on the left of the
/// location, cutoff * (s + h) on the right, glued across the band where
/// the cutoff vanishes identically.
inline SmoothExpr jump_term(const JumpAction& act, const SmoothExpr& s,
                            std::size_t nu) {
  const double m = static_cast<double>(nu + 1);
  SmoothExpr cutoff = affine_precompose(make_rho(), m, -m * act.location);
  SmoothExpr left = product({cutoff, s});
  SmoothExpr right = product({cutoff, sum({s, constant(act.height)})});
  Interval dz = shared_zero_zone(left, right, act.location);
  return glued(act.location, left, right, dz);
}

/// Multi-point term: a single product of per-location cutoffs multiplies
/// s plus the running height sum, glued at each location in ascending
/// order. Reduces to jump_term for a single entry and to s when empty.
inline SmoothExpr multi_term(const MultiJumpAction& act, const SmoothExpr& s,
                             std::size_t nu) {
  if (act.jumps.empty()) return s;
  const double m = static_cast<double>(nu + 1);
  std::vector<SmoothExpr> cutoffs;
  cutoffs.reserve(act.jumps.size());
  for (const auto& [a, h] : act.jumps)
    cutoffs.push_back(affine_precompose(make_rho(), m, -m * a));
  SmoothExpr shield = product(std::move(cutoffs));

  SmoothExpr current = product({shield, s});
  double cumulative = 0.0;
  for (const auto& [a, h] : act.jumps) {
    cumulative = cumulative + h;
    SmoothExpr piece = product({shield, sum({s, constant(cumulative)})});
    Interval dz = shared_zero_zone(current, piece, a);
    current = glued(a, current, piece, dz);
  }
  return current;
}

}  // namespace detail

inline SmoothExpr RepSequence::at(std::size_t nu) const {
  const Node& n = *node_;
  switch (n.kind) {
    case SeqKind::Embed:
      return *n.expr;
    case SeqKind::Jump:
      return detail::jump_term(n.jump, n.kids[0].at(nu), nu);
    case SeqKind::Multi:
      return detail::multi_term(n.multi, n.kids[0].at(nu), nu);
    case SeqKind::Shift:
      return sum({n.kids[0].at(nu), constant(n.value)});
    case SeqKind::Shrink: {
      const double m = static_cast<double>(nu + 1);
      return affine_precompose(*n.expr, m, -m * n.value);
    }
    case SeqKind::Sum: {
      std::vector<SmoothExpr> terms;
      terms.reserve(n.kids.size());
      for (const RepSequence& k : n.kids) terms.push_back(k.at(nu));
      return sum(std::move(terms));
    }
    case SeqKind::Product: {
      std::vector<SmoothExpr> factors;
      factors.reserve(n.kids.size());
      for (const RepSequence& k : n.kids) factors.push_back(k.at(nu));
      return product(std::move(factors));
    }
    case SeqKind::Scale:
      return scale(n.value, n.kids[0].at(nu));
    case SeqKind::Derive:
      return n.kids[0].at(nu).derivative(n.order);
  }
  return constant(0.0);  // unreachable
}

// ---------------------------------------------------------------------------
// quotient-level citizens

/// A representative sequence regarded modulo the nowhere-dense ideal.
/// The hint lists points where representatives are allowed to disagree
/// (it seeds default ideal witnesses; it is not consulted by evaluation).
struct GeneralizedFunction {
  RepSequence rep;
  std::vector<double> singular_hint;
};

namespace detail {
inline std::vector<double> merge_sorted_points(std::vector<double> a,
                                               const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}
}  // namespace detail

/// psi -> (psi, psi, psi, ...): the smooth functions sit inside the
/// algebra as constant sequences.
inline GeneralizedFunction embed(SmoothExpr psi) {
  return {constant_sequence(std::move(psi)), {}};
}

inline GeneralizedFunction add(const GeneralizedFunction& a,
                               const GeneralizedFunction& b) {
  return {seq_sum({a.rep, b.rep}),
          detail::merge_sorted_points(a.singular_hint, b.singular_hint)};
}

inline GeneralizedFunction mul(const GeneralizedFunction& a,
                               const GeneralizedFunction& b) {
  return {seq_product({a.rep, b.rep}),
          detail::merge_sorted_points(a.singular_hint, b.singular_hint)};
}

inline GeneralizedFunction scale(const GeneralizedFunction& a, double factor) {
  return {seq_scale(factor, a.rep), a.singular_hint};
}

inline GeneralizedFunction neg(const GeneralizedFunction& a) {
  return scale(a, -1.0);
}

/// Termwise p-fold derivation; descends to the quotient because the
/// ideal is stable under derivation.
inline GeneralizedFunction derive(const GeneralizedFunction& a, int order = 1) {
  return {seq_derive(order, a.rep), a.singular_hint};
}

inline double eval_representative(const GeneralizedFunction& w, std::size_t nu,
                                  double x) {
  return w.rep.at(nu).eval(x);
}

/// The classical one-parameter symmetry: add epsilon to every term.
inline GeneralizedFunction vertical_shift(double epsilon,
                                          const GeneralizedFunction& w) {
  return {seq_shift(epsilon, w.rep), w.singular_hint};
}

inline GeneralizedFunction apply_jump_gf(const JumpAction& act,
                                         const GeneralizedFunction& w) {
  return {apply_jump(act, w.rep),
          detail::merge_sorted_points(w.singular_hint, {act.location})};
}

inline GeneralizedFunction apply_multi_gf(const MultiJumpAction& act,
                                          const GeneralizedFunction& w) {
  std::vector<double> pts;
  pts.reserve(act.jumps.size());
  for (const auto& [a, h] : act.jumps) pts.push_back(a);
  return {apply_multi(act, w.rep),
          detail::merge_sorted_points(w.singular_hint, pts)};
}

}  // namespace ndalg
