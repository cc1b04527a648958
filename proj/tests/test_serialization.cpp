#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ndalg/serialization.hpp"

using namespace ndalg;
using ndalg_test::ExprGen;
using ndalg_test::grid;

TEST_CASE("expression trees round-trip through JSON", "[serialization]") {
  ExprGen gen(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const SmoothExpr e = gen.gen(3);
    const SmoothExpr back = expr_from_json(expr_to_json(e));
    CHECK(back.kind() == e.kind());
    for (double x : grid(-3.0, 3.0, 41)) CHECK(back.eval(x) == e.eval(x));
  }
}

TEST_CASE("glued expressions round-trip with their certificates", "[serialization]") {
  const SmoothExpr rho = make_rho();
  const SmoothExpr back = expr_from_json(expr_to_json(rho));
  REQUIRE(back.kind() == NodeKind::Glued);
  CHECK(back.deadzone().lo == rho.deadzone().lo);
  CHECK(back.deadzone().hi == rho.deadzone().hi);
  for (double x : grid(-2.0, 2.0, 81)) CHECK(back.eval(x) == rho.eval(x));
}

TEST_CASE("rho and poly input shorthands expand", "[serialization]") {
  const SmoothExpr rho = expr_from_json(json{{"node", "rho"}});
  CHECK(rho.eval(0.25) == 0.0);
  CHECK(rho.eval(2.0) == 1.0);

  const SmoothExpr cubic = expr_from_json(
      json::parse(R"({"node":"poly","coeffs":[0,-1,0,1]})"));
  for (double x : grid(-2.0, 2.0, 17))
    CHECK(cubic.eval(x) == 1.0 * ((x * x) * x) + -1.0 * x);
}

TEST_CASE("expression parse errors name the offending field", "[serialization]") {
  auto field_of = [](const json& j) {
    try {
      expr_from_json(j, "expr");
    } catch (const ParseError& e) {
      return e.field();
    }
    return std::string("no error");
  };
  CHECK(field_of(json{{"value", 3}}) == "expr.node");
  CHECK(field_of(json{{"node", "constant"}}) == "expr.value");
  CHECK(field_of(json{{"node", "warp"}}) == "expr.node");
  CHECK(field_of(json::parse(R"({"node":"sum","terms":[{"node":"bad"}]})")) ==
        "expr.terms[0].node");
  CHECK(field_of(json::parse(R"({"node":"affine","slope":1,"offset":0})")) ==
        "expr.arg");
}

TEST_CASE("invalid glued JSON is rejected by the certificate", "[serialization]") {
  const json j = json::parse(R"({
    "node": "glued", "breakpoint": 0.0, "deadzone": [-0.5, 0.5],
    "left": {"node": "identity"}, "right": {"node": "constant", "value": 0.0}
  })");
  CHECK_THROWS_AS(expr_from_json(j), std::invalid_argument);
}

TEST_CASE("sequence descriptions reconstruct the rule exactly", "[serialization]") {
  const RepSequence original = seq_sum(
      {apply_jump({0.5, 2.0}, constant_sequence(identity())),
       seq_scale(-0.5,
                 seq_derive(1, apply_multi(MultiJumpAction{{{-1.0, 1.0}, {1.0, 3.0}}},
                                           constant_sequence(product(
                                               {identity(), identity()}))))),
       seq_shift(0.25, seq_shrink(make_smooth_step(), -0.5))});
  const RepSequence back = sequence_from_json(sequence_to_json(original));
  for (std::size_t nu : {0u, 1u, 4u, 9u})
    for (double x : grid(-3.0, 3.0, 61))
      CHECK(back.at(nu).eval(x) == original.at(nu).eval(x));
}

TEST_CASE("sequence parse errors name fields", "[serialization]") {
  try {
    sequence_from_json(json::parse(R"({"seq":"jump","a":0})"), "seq");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "seq.h");
  }
}

TEST_CASE("action descriptors round-trip", "[serialization]") {
  const json jump = json::parse(R"({"type":"jump","a":0.5,"h":-2})");
  const ActionDescriptor a = action_from_json(jump);
  REQUIRE(std::holds_alternative<JumpAction>(a));
  CHECK(std::get<JumpAction>(a).location == 0.5);
  CHECK(action_to_json(a)["h"] == -2.0);

  const json multi = json::parse(R"({"type":"multi","jumps":[[0,1],[1.5,2]]})");
  const ActionDescriptor m = action_from_json(multi);
  REQUIRE(std::holds_alternative<MultiJumpAction>(m));
  CHECK(std::get<MultiJumpAction>(m).jumps.size() == 2);
  CHECK(action_to_json(m)["jumps"][1][0] == 1.5);

  const json vertical = json::parse(R"({"type":"vertical","epsilon":0.25})");
  const ActionDescriptor v = action_from_json(vertical);
  REQUIRE(std::holds_alternative<VerticalShiftAction>(v));
  CHECK(std::get<VerticalShiftAction>(v).epsilon == 0.25);
}

TEST_CASE("action descriptor errors", "[serialization]") {
  CHECK_THROWS_AS(action_from_json(json::parse(R"({"type":"warp"})")), ParseError);
  CHECK_THROWS_AS(
      action_from_json(json::parse(R"({"type":"multi","jumps":[[0,1],[0,2]]})")),
      ParseError);  // duplicate location
  CHECK_THROWS_AS(action_from_json(json::parse(R"({"type":"jump","a":0})")),
                  ParseError);
}

TEST_CASE("witness and protocol round-trip", "[serialization]") {
  IdealWitness w = IdealWitness::for_points({1.0, -0.5, 1.0});
  CHECK(w.gamma == std::vector<double>{-0.5, 1.0});
  const IdealWitness back = witness_from_json(witness_to_json(w));
  CHECK(back.gamma == w.gamma);
  CHECK(back.radius_scale == w.radius_scale);

  CheckProtocol p;
  p.window = {-1.0, 5.0};
  p.sample_count = 21;
  p.index_cap = 8;
  p.margin = 0.125;
  p.vanish_tol = 1e-10;
  const CheckProtocol q = protocol_from_json(protocol_to_json(p));
  CHECK(q.window.lo == -1.0);
  CHECK(q.window.hi == 5.0);
  CHECK(q.sample_count == 21);
  CHECK(q.index_cap == 8);
  CHECK(q.margin == 0.125);
  CHECK(q.vanish_tol == 1e-10);

  CHECK_THROWS_AS(witness_from_json(json::parse(R"({"gamma":"nope"})")), ParseError);
  CHECK_THROWS_AS(protocol_from_json(json::parse(R"({"margin":-1})")), ParseError);
}

TEST_CASE("check reports serialize decisions and counterexamples", "[serialization]") {
  CheckReport r;
  r.decision = Decision::Refuted;
  r.counterexample = Counterexample{3, 0.5, 1.25};
  r.checked_indices = {0, 1, 2, 3};
  r.window = {-2.0, 2.0};
  const json j = report_to_json(r);
  CHECK(j["decision"] == "refuted");
  CHECK(j["counterexample"]["nu"] == 3);
  CHECK(j["counterexample"]["value"] == 1.25);
  CHECK(j["checked_indices"].size() == 4);
  CHECK(j["window"][0] == -2.0);
}
