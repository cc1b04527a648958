#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ndalg/ode.hpp"
#include "ndalg/serialization.hpp"

namespace ndalg {

struct ExportSpec {
  enum class Format { Csv, Json };
  Format format = Format::Csv;
  std::vector<std::size_t> indices;  // sorted unique
  double grid_lo = 0.0;
  double grid_hi = 1.0;
  int grid_count = 2;
};

/// A complete experiment: the equation, a candidate classical solution,
/// an ordered chain of actions to apply to its embedding, the check
/// protocol, and an optional sampling request.
struct Scenario {
  FirstOrderODE equation;
  SmoothExpr solution;
  std::vector<ActionDescriptor> actions;
  CheckProtocol protocol;
  std::optional<ExportSpec> export_spec;
};

namespace detail {

inline ExportSpec export_from_json(const json& j, const std::string& path) {
  ExportSpec spec;
  const std::string format = string_field(j, "format", path);
  if (format == "csv" || format == "CSV")
    spec.format = ExportSpec::Format::Csv;
  else if (format == "json" || format == "JSON")
    spec.format = ExportSpec::Format::Json;
  else
    throw ParseError(path + ".format", "expected \"csv\" or \"json\"");

  const json& indices = require(j, "indices", path);
  if (!indices.is_array() || indices.empty())
    throw ParseError(path + ".indices", "expected a nonempty array");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const json& v = indices[i];
    const std::string item = path + ".indices[" + std::to_string(i) + "]";
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ParseError(item, "expected a nonnegative integer");
    spec.indices.push_back(v.get<std::size_t>());
  }
  std::sort(spec.indices.begin(), spec.indices.end());
  spec.indices.erase(std::unique(spec.indices.begin(), spec.indices.end()),
                     spec.indices.end());

  const json& grid = require(j, "grid", path);
  if (!grid.is_array() || grid.size() != 3)
    throw ParseError(path + ".grid", "expected [lo, hi, count]");
  spec.grid_lo = number(grid[0], path + ".grid[0]");
  spec.grid_hi = number(grid[1], path + ".grid[1]");
  if (!grid[2].is_number_integer() || grid[2].get<int>() < 2)
    throw ParseError(path + ".grid[2]", "count must be an integer >= 2");
  spec.grid_count = grid[2].get<int>();
  if (!(spec.grid_lo <= spec.grid_hi))
    throw ParseError(path + ".grid", "lo must not exceed hi");
  return spec;
}

inline std::vector<double> action_points(const std::vector<ActionDescriptor>& actions) {
  std::vector<double> pts;
  for (const ActionDescriptor& act : actions) {
    if (const auto* jump = std::get_if<JumpAction>(&act))
      pts.push_back(jump->location);
    else if (const auto* multi = std::get_if<MultiJumpAction>(&act))
      for (const auto& [a, h] : multi->jumps) pts.push_back(a);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

inline Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scenario", "expected an object");

  const json& equation = detail::require(j, "equation", "scenario");
  FirstOrderODE ode{expr_from_json(
      detail::require(equation, "rhs", "scenario.equation"),
      "scenario.equation.rhs")};

  SmoothExpr solution = expr_from_json(
      detail::require(j, "solution", "scenario"), "scenario.solution");

  std::vector<ActionDescriptor> actions;
  if (j.contains("actions")) {
    const json& list = j.at("actions");
    if (!list.is_array())
      throw ParseError("scenario.actions", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      actions.push_back(action_from_json(
          list[i], "scenario.actions[" + std::to_string(i) + "]"));
  }

  CheckProtocol protocol;
  bool window_given = false;
  if (j.contains("protocol")) {
    protocol = protocol_from_json(j.at("protocol"), "scenario.protocol");
    window_given = j.at("protocol").contains("window");
  }
  if (!window_given) {
    // default window: cover every action point with three units of slack
    std::vector<double> pts = detail::action_points(actions);
    double lo = pts.empty() ? 0.0 : pts.front();
    double hi = pts.empty() ? 0.0 : pts.back();
    protocol.window = {std::min(lo, 0.0) - 3.0, std::max(hi, 0.0) + 3.0};
  }

  std::optional<ExportSpec> export_spec;
  if (j.contains("export"))
    export_spec = detail::export_from_json(j.at("export"), "scenario.export");

  return Scenario{std::move(ode), std::move(solution), std::move(actions),
                  protocol, std::move(export_spec)};
}

/// Left-to-right application of the action chain to the embedded solution.
inline GeneralizedFunction apply_action_chain(const Scenario& s) {
  GeneralizedFunction w = embed(s.solution);
  for (const ActionDescriptor& act : s.actions) {
    if (const auto* jump = std::get_if<JumpAction>(&act))
      w = apply_jump_gf(*jump, w);
    else if (const auto* multi = std::get_if<MultiJumpAction>(&act))
      w = apply_multi_gf(*multi, w);
    else
      w = vertical_shift(std::get<VerticalShiftAction>(act).epsilon, w);
  }
  return w;
}

struct VerifyOutcome {
  CheckReport report;
  json report_json;
  int exit_code = 2;
};

/// Verifies the classical solution (throws DerivativeMismatch on
/// failure), applies the chain, and certifies the result against the
/// equation. Exit code 0: certified, 1: refuted, 2: inconclusive.
inline VerifyOutcome run_verify(const Scenario& s) {
  classical_solution(s.equation, s.solution, s.protocol.window);
  GeneralizedFunction w = apply_action_chain(s);
  IdealWitness witness = IdealWitness::for_points(w.singular_hint);
  CheckReport report =
      certify_generalized_solution(w, s.equation, witness, s.protocol);

  json probes = protocol_to_json(s.protocol);
  probes["checked_indices"] = report.checked_indices;

  json out;
  out["equation"] = json{{"rhs", expr_to_json(s.equation.rhs)}};
  json chain = json::array();
  for (const ActionDescriptor& act : s.actions) chain.push_back(action_to_json(act));
  out["action_chain"] = std::move(chain);
  out["witness"] = witness_to_json(witness);
  out["decision"] = decision_name(report.decision);
  out["probes"] = std::move(probes);
  if (report.counterexample) {
    json c;
    c["nu"] = report.counterexample->nu;
    c["x"] = report.counterexample->x;
    c["value"] = report.counterexample->value;
    out["counterexample"] = std::move(c);
  }

  int code = 2;
  if (report.decision == Decision::Certified) code = 0;
  if (report.decision == Decision::Refuted) code = 1;
  return VerifyOutcome{std::move(report), std::move(out), code};
}

namespace detail {
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// Samples the transformed representatives over the requested grid.
/// Ordering is fixed (index outer ascending, x inner ascending) and the
/// float formatting is 17 significant digits, so output is byte-stable.
inline std::string run_export(const Scenario& s) {
  if (!s.export_spec) throw ParseError("scenario.export", "missing");
  const ExportSpec& spec = *s.export_spec;
  GeneralizedFunction w = apply_action_chain(s);

  auto grid_point = [&](int i) {
    return spec.grid_lo +
           (spec.grid_hi - spec.grid_lo) * i / (spec.grid_count - 1);
  };

  if (spec.format == ExportSpec::Format::Csv) {
    std::string out = "nu,x,value\n";
    for (std::size_t nu : spec.indices) {
      const SmoothExpr term = w.rep.at(nu);
      for (int i = 0; i < spec.grid_count; ++i) {
        const double x = grid_point(i);
        out += std::to_string(nu);
        out += ',';
        out += detail::format_double(x);
        out += ',';
        out += detail::format_double(term.eval(x));
        out += '\n';
      }
    }
    return out;
  }

  json samples = json::array();
  for (std::size_t nu : spec.indices) {
    const SmoothExpr term = w.rep.at(nu);
    for (int i = 0; i < spec.grid_count; ++i) {
      const double x = grid_point(i);
      samples.push_back(json::array({nu, x, term.eval(x)}));
    }
  }
  json out;
  out["samples"] = std::move(samples);
  return out.dump(2) + "\n";
}

/// Folds a descriptor chain: jump and multi actions merge into one
/// multi-jump over the union of locations, vertical shifts fold by
/// adding their amounts. A single descriptor is echoed unchanged; a
/// mixed chain yields an array [multi, vertical].
inline json compose_descriptors(const std::vector<ActionDescriptor>& actions) {
  if (actions.size() == 1) return action_to_json(actions[0]);

  MultiJumpAction multi;
  bool any_jump = false;
  double epsilon = 0.0;
  bool any_vertical = false;
  for (const ActionDescriptor& act : actions) {
    if (const auto* jump = std::get_if<JumpAction>(&act)) {
      multi = compose_multi(multi, MultiJumpAction::single(*jump));
      any_jump = true;
    } else if (const auto* m = std::get_if<MultiJumpAction>(&act)) {
      multi = compose_multi(multi, *m);
      any_jump = true;
    } else {
      epsilon += std::get<VerticalShiftAction>(act).epsilon;
      any_vertical = true;
    }
  }

  if (any_jump && any_vertical) {
    json arr = json::array();
    arr.push_back(action_to_json(multi));
    arr.push_back(action_to_json(VerticalShiftAction{epsilon}));
    return arr;
  }
  if (any_vertical) return action_to_json(VerticalShiftAction{epsilon});
  return action_to_json(multi);
}

}  // namespace ndalg
