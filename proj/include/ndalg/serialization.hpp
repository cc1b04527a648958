#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ndalg/actions.hpp"
#include "ndalg/algebra.hpp"
#include "ndalg/expr.hpp"
#include "ndalg/ideal.hpp"

namespace ndalg {

using json = nlohmann::json;

/// Parse failure that names the offending field (dotted path).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& reason)
      : std::runtime_error("field '" + field + "': " + reason),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "." + key, "missing");
  return *it;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

inline double number_field(const json& j, const char* key, const std::string& path) {
  return number(require(j, key, path), path + "." + key);
}

inline std::string string_field(const json& j, const char* key,
                                const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_string()) throw ParseError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// smooth expressions

SmoothExpr expr_from_json(const json& j, const std::string& path = "expr");

namespace detail {

inline SmoothExpr expr_list_combine(const json& j, const char* key,
                                    const std::string& path, bool as_sum) {
  const json& list = require(j, key, path);
  if (!list.is_array()) throw ParseError(path + "." + key, "expected an array");
  std::vector<SmoothExpr> items;
  items.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    items.push_back(expr_from_json(
        list[i], path + "." + key + "[" + std::to_string(i) + "]"));
  return as_sum ? sum(std::move(items)) : product(std::move(items));
}

}  // namespace detail

inline SmoothExpr expr_from_json(const json& j, const std::string& path) {
  const std::string tag = detail::string_field(j, "node", path);
  if (tag == "constant")
    return constant(detail::number_field(j, "value", path));
  if (tag == "identity") return identity();
  if (tag == "sum") return detail::expr_list_combine(j, "terms", path, true);
  if (tag == "product")
    return detail::expr_list_combine(j, "factors", path, false);
  if (tag == "scale")
    return scale(detail::number_field(j, "factor", path),
                 expr_from_json(detail::require(j, "arg", path), path + ".arg"));
  if (tag == "compose")
    return compose(
        expr_from_json(detail::require(j, "outer", path), path + ".outer"),
        expr_from_json(detail::require(j, "inner", path), path + ".inner"));
  if (tag == "affine")
    return affine_precompose(
        expr_from_json(detail::require(j, "arg", path), path + ".arg"),
        detail::number_field(j, "slope", path),
        detail::number_field(j, "offset", path));
  if (tag == "step") {
    int order = 0;
    if (j.contains("order")) {
      const json& o = j.at("order");
      if (!o.is_number_integer() || o.get<int>() < 0)
        throw ParseError(path + ".order", "expected a nonnegative integer");
      order = o.get<int>();
    }
    return make_smooth_step(order);
  }
  if (tag == "rho") return make_rho();  // input convenience; never emitted
  if (tag == "poly") {
    // input convenience: coefficient list c0 + c1 x + c2 x^2 + ...
    const json& coeffs = detail::require(j, "coeffs", path);
    if (!coeffs.is_array() || coeffs.empty())
      throw ParseError(path + ".coeffs", "expected a nonempty array");
    std::vector<SmoothExpr> terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const double c = detail::number(coeffs[k],
                                      path + ".coeffs[" + std::to_string(k) + "]");
      if (c == 0.0) continue;
      std::vector<SmoothExpr> factors(k, identity());
      terms.push_back(scale(c, product(std::move(factors))));
    }
    return sum(std::move(terms));
  }
  if (tag == "glued") {
    const json& dz = detail::require(j, "deadzone", path);
    if (!dz.is_array() || dz.size() != 2)
      throw ParseError(path + ".deadzone", "expected [lo, hi]");
    return glued(
        detail::number_field(j, "breakpoint", path),
        expr_from_json(detail::require(j, "left", path), path + ".left"),
        expr_from_json(detail::require(j, "right", path), path + ".right"),
        {detail::number(dz[0], path + ".deadzone[0]"),
         detail::number(dz[1], path + ".deadzone[1]")});
  }
  throw ParseError(path + ".node", "unknown node tag '" + tag + "'");
}

inline json expr_to_json(const SmoothExpr& e) {
  json j;
  switch (e.kind()) {
    case NodeKind::Constant:
      j["node"] = "constant";
      j["value"] = e.constant_value();
      break;
    case NodeKind::Identity:
      j["node"] = "identity";
      break;
    case NodeKind::Sum: {
      j["node"] = "sum";
      json terms = json::array();
      for (std::size_t i = 0; i < e.child_count(); ++i)
        terms.push_back(expr_to_json(e.child(i)));
      j["terms"] = std::move(terms);
      break;
    }
    case NodeKind::Product: {
      j["node"] = "product";
      json factors = json::array();
      for (std::size_t i = 0; i < e.child_count(); ++i)
        factors.push_back(expr_to_json(e.child(i)));
      j["factors"] = std::move(factors);
      break;
    }
    case NodeKind::Scale:
      j["node"] = "scale";
      j["factor"] = e.scale_factor();
      j["arg"] = expr_to_json(e.child(0));
      break;
    case NodeKind::Compose:
      j["node"] = "compose";
      j["outer"] = expr_to_json(e.child(0));
      j["inner"] = expr_to_json(e.child(1));
      break;
    case NodeKind::AffineArg:
      j["node"] = "affine";
      j["slope"] = e.affine_slope();
      j["offset"] = e.affine_offset();
      j["arg"] = expr_to_json(e.child(0));
      break;
    case NodeKind::Step:
      j["node"] = "step";
      j["order"] = e.step_order();
      break;
    case NodeKind::Glued:
      j["node"] = "glued";
      j["breakpoint"] = e.breakpoint();
      j["deadzone"] = json::array({e.deadzone().lo, e.deadzone().hi});
      j["left"] = expr_to_json(e.child(0));
      j["right"] = expr_to_json(e.child(1));
      break;
  }
  return j;
}

// ---------------------------------------------------------------------------
// action descriptors

using ActionDescriptor =
    std::variant<JumpAction, MultiJumpAction, VerticalShiftAction>;

inline MultiJumpAction multi_from_json(const json& j, const std::string& path) {
  const json& list = detail::require(j, "jumps", path);
  if (!list.is_array()) throw ParseError(path + ".jumps", "expected an array");
  MultiJumpAction act;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string item = path + ".jumps[" + std::to_string(i) + "]";
    const json& pair = list[i];
    if (!pair.is_array() || pair.size() != 2)
      throw ParseError(item, "expected [location, height]");
    const double a = detail::number(pair[0], item + "[0]");
    const double h = detail::number(pair[1], item + "[1]");
    if (act.jumps.count(a))
      throw ParseError(item, "duplicate jump location");
    act.jumps[a] = h;
  }
  return act;
}

inline ActionDescriptor action_from_json(const json& j,
                                         const std::string& path = "action") {
  const std::string type = detail::string_field(j, "type", path);
  if (type == "jump")
    return JumpAction{detail::number_field(j, "a", path),
                      detail::number_field(j, "h", path)};
  if (type == "multi") return multi_from_json(j, path);
  if (type == "vertical")
    return VerticalShiftAction{detail::number_field(j, "epsilon", path)};
  throw ParseError(path + ".type", "unknown action type '" + type + "'");
}

inline json action_to_json(const ActionDescriptor& act) {
  json j;
  if (const auto* jump = std::get_if<JumpAction>(&act)) {
    j["type"] = "jump";
    j["a"] = jump->location;
    j["h"] = jump->height;
  } else if (const auto* multi = std::get_if<MultiJumpAction>(&act)) {
    j["type"] = "multi";
    json jumps = json::array();
    for (const auto& [a, h] : multi->jumps) jumps.push_back(json::array({a, h}));
    j["jumps"] = std::move(jumps);
  } else {
    j["type"] = "vertical";
    j["epsilon"] = std::get<VerticalShiftAction>(act).epsilon;
  }
  return j;
}

// ---------------------------------------------------------------------------
// sequences

RepSequence sequence_from_json(const json& j, const std::string& path = "seq");

namespace detail {

inline std::vector<RepSequence> sequence_list(const json& j, const char* key,
                                              const std::string& path) {
  const json& list = require(j, key, path);
  if (!list.is_array()) throw ParseError(path + "." + key, "expected an array");
  std::vector<RepSequence> items;
  items.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    items.push_back(sequence_from_json(
        list[i], path + "." + key + "[" + std::to_string(i) + "]"));
  return items;
}

}  // namespace detail

inline RepSequence sequence_from_json(const json& j, const std::string& path) {
  const std::string tag = detail::string_field(j, "seq", path);
  if (tag == "embed")
    return constant_sequence(
        expr_from_json(detail::require(j, "expr", path), path + ".expr"));
  if (tag == "jump")
    return apply_jump(
        JumpAction{detail::number_field(j, "a", path),
                   detail::number_field(j, "h", path)},
        sequence_from_json(detail::require(j, "of", path), path + ".of"));
  if (tag == "multi")
    return apply_multi(
        multi_from_json(j, path),
        sequence_from_json(detail::require(j, "of", path), path + ".of"));
  if (tag == "shift")
    return seq_shift(
        detail::number_field(j, "epsilon", path),
        sequence_from_json(detail::require(j, "of", path), path + ".of"));
  if (tag == "shrink")
    return seq_shrink(
        expr_from_json(detail::require(j, "profile", path), path + ".profile"),
        detail::number_field(j, "center", path));
  if (tag == "sum") return seq_sum(detail::sequence_list(j, "terms", path));
  if (tag == "product")
    return seq_product(detail::sequence_list(j, "factors", path));
  if (tag == "scale")
    return seq_scale(
        detail::number_field(j, "factor", path),
        sequence_from_json(detail::require(j, "of", path), path + ".of"));
  if (tag == "derive") {
    const json& o = detail::require(j, "order", path);
    if (!o.is_number_integer() || o.get<int>() < 0)
      throw ParseError(path + ".order", "expected a nonnegative integer");
    return seq_derive(o.get<int>(), sequence_from_json(
                                        detail::require(j, "of", path),
                                        path + ".of"));
  }
  throw ParseError(path + ".seq", "unknown sequence tag '" + tag + "'");
}

inline json sequence_to_json(const RepSequence& s) {
  json j;
  switch (s.kind()) {
    case SeqKind::Embed:
      j["seq"] = "embed";
      j["expr"] = expr_to_json(s.expr());
      break;
    case SeqKind::Jump:
      j["seq"] = "jump";
      j["a"] = s.jump().location;
      j["h"] = s.jump().height;
      j["of"] = sequence_to_json(s.child(0));
      break;
    case SeqKind::Multi: {
      j["seq"] = "multi";
      json jumps = json::array();
      for (const auto& [a, h] : s.multi().jumps)
        jumps.push_back(json::array({a, h}));
      j["jumps"] = std::move(jumps);
      j["of"] = sequence_to_json(s.child(0));
      break;
    }
    case SeqKind::Shift:
      j["seq"] = "shift";
      j["epsilon"] = s.value();
      j["of"] = sequence_to_json(s.child(0));
      break;
    case SeqKind::Shrink:
      j["seq"] = "shrink";
      j["center"] = s.value();
      j["profile"] = expr_to_json(s.expr());
      break;
    case SeqKind::Sum: {
      j["seq"] = "sum";
      json terms = json::array();
      for (std::size_t i = 0; i < s.child_count(); ++i)
        terms.push_back(sequence_to_json(s.child(i)));
      j["terms"] = std::move(terms);
      break;
    }
    case SeqKind::Product: {
      j["seq"] = "product";
      json factors = json::array();
      for (std::size_t i = 0; i < s.child_count(); ++i)
        factors.push_back(sequence_to_json(s.child(i)));
      j["factors"] = std::move(factors);
      break;
    }
    case SeqKind::Scale:
      j["seq"] = "scale";
      j["factor"] = s.value();
      j["of"] = sequence_to_json(s.child(0));
      break;
    case SeqKind::Derive:
      j["seq"] = "derive";
      j["order"] = s.order();
      j["of"] = sequence_to_json(s.child(0));
      break;
  }
  return j;
}

// ---------------------------------------------------------------------------
// witnesses, protocols, reports

inline IdealWitness witness_from_json(const json& j,
                                      const std::string& path = "witness") {
  IdealWitness w;
  const json& gamma = detail::require(j, "gamma", path);
  if (!gamma.is_array()) throw ParseError(path + ".gamma", "expected an array");
  for (std::size_t i = 0; i < gamma.size(); ++i)
    w.gamma.push_back(
        detail::number(gamma[i], path + ".gamma[" + std::to_string(i) + "]"));
  std::sort(w.gamma.begin(), w.gamma.end());
  w.gamma.erase(std::unique(w.gamma.begin(), w.gamma.end()), w.gamma.end());
  if (j.contains("radius_scale")) {
    w.radius_scale = detail::number(j.at("radius_scale"), path + ".radius_scale");
    if (w.radius_scale <= 0.0)
      throw ParseError(path + ".radius_scale", "must be positive");
  }
  return w;
}

inline json witness_to_json(const IdealWitness& w) {
  json j;
  j["gamma"] = w.gamma;
  j["radius_scale"] = w.radius_scale;
  return j;
}

inline CheckProtocol protocol_from_json(const json& j,
                                        const std::string& path = "protocol") {
  CheckProtocol p;
  if (!j.is_object()) throw ParseError(path, "expected an object");
  if (j.contains("window")) {
    const json& win = j.at("window");
    if (!win.is_array() || win.size() != 2)
      throw ParseError(path + ".window", "expected [lo, hi]");
    p.window = {detail::number(win[0], path + ".window[0]"),
                detail::number(win[1], path + ".window[1]")};
    if (!p.window.valid()) throw ParseError(path + ".window", "empty window");
  }
  if (j.contains("sample_count")) {
    const json& n = j.at("sample_count");
    if (!n.is_number_integer() || n.get<int>() < 1)
      throw ParseError(path + ".sample_count", "expected a positive integer");
    p.sample_count = n.get<int>();
  }
  if (j.contains("index_cap")) {
    const json& n = j.at("index_cap");
    if (!n.is_number_integer() || n.get<int>() < 0)
      throw ParseError(path + ".index_cap", "expected a nonnegative integer");
    p.index_cap = n.get<int>();
  }
  if (j.contains("margin")) {
    p.margin = detail::number(j.at("margin"), path + ".margin");
    if (p.margin <= 0.0) throw ParseError(path + ".margin", "must be positive");
  }
  if (j.contains("vanish_tol")) {
    p.vanish_tol = detail::number(j.at("vanish_tol"), path + ".vanish_tol");
    if (p.vanish_tol < 0.0)
      throw ParseError(path + ".vanish_tol", "must be nonnegative");
  }
  return p;
}

inline json protocol_to_json(const CheckProtocol& p) {
  json j;
  j["window"] = json::array({p.window.lo, p.window.hi});
  j["sample_count"] = p.sample_count;
  j["index_cap"] = p.index_cap;
  j["margin"] = p.margin;
  j["vanish_tol"] = p.vanish_tol;
  return j;
}

inline const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Certified:
      return "certified";
    case Decision::Refuted:
      return "refuted";
    case Decision::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

inline json report_to_json(const CheckReport& r) {
  json j;
  j["decision"] = decision_name(r.decision);
  j["checked_indices"] = r.checked_indices;
  j["window"] = json::array({r.window.lo, r.window.hi});
  if (r.counterexample) {
    json c;
    c["nu"] = r.counterexample->nu;
    c["x"] = r.counterexample->x;
    c["value"] = r.counterexample->value;
    j["counterexample"] = std::move(c);
  }
  return j;
}

}  // namespace ndalg
