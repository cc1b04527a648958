#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ndalg/algebra.hpp"
#include "ndalg/ideal.hpp"

using namespace ndalg;
using ndalg_test::grid;

namespace {

const std::vector<std::size_t> kIndices = {0, 1, 2, 3, 7, 15};

// dyadic grid: every value below stays exact under +, -, *
const std::vector<double> kDyadicGrid = grid(-2.0, 2.0, 17);

SmoothExpr x_squared() { return product({identity(), identity()}); }
SmoothExpr x_cubed() { return product({identity(), identity(), identity()}); }

}  // namespace

TEST_CASE("embedding is the constant sequence", "[algebra]") {
  const GeneralizedFunction w = embed(x_squared());
  for (std::size_t nu : kIndices) CHECK(eval_representative(w, nu, 3.0) == 9.0);
  CHECK(w.singular_hint.empty());
}

TEST_CASE("zero embedding is additively neutral", "[algebra]") {
  const GeneralizedFunction w = apply_jump_gf({0.0, 1.0}, embed(identity()));
  const GeneralizedFunction z = embed(constant(0.0));
  const GeneralizedFunction s = add(w, z);
  for (std::size_t nu : kIndices)
    for (double x : kDyadicGrid)
      CHECK(eval_representative(s, nu, x) == eval_representative(w, nu, x));
}

TEST_CASE("one embedding is multiplicatively neutral", "[algebra]") {
  const GeneralizedFunction w = apply_jump_gf({0.5, 2.0}, embed(x_squared()));
  const GeneralizedFunction p = mul(embed(constant(1.0)), w);
  for (std::size_t nu : kIndices)
    for (double x : kDyadicGrid)
      CHECK(eval_representative(p, nu, x) == eval_representative(w, nu, x));
}

TEST_CASE("termwise arithmetic is pointwise", "[algebra]") {
  const GeneralizedFunction a = embed(x_squared());
  const GeneralizedFunction b = apply_jump_gf({0.0, 1.0}, embed(identity()));
  for (std::size_t nu : kIndices)
    for (double x : kDyadicGrid) {
      const double va = eval_representative(a, nu, x);
      const double vb = eval_representative(b, nu, x);
      CHECK(eval_representative(add(a, b), nu, x) == va + vb);
      CHECK(eval_representative(mul(a, b), nu, x) == va * vb);
      CHECK(eval_representative(scale(a, -2.5), nu, x) == -2.5 * va);
      CHECK(eval_representative(neg(b), nu, x) == -vb);
    }
}

TEST_CASE("sum with own negation lands in the ideal with empty gamma", "[algebra]") {
  const GeneralizedFunction w = apply_jump_gf({1.0, 3.0}, embed(identity()));
  const auto report = ideal_member(add(w, neg(w)).rep, IdealWitness::for_points({}),
                                   CheckProtocol{});
  CHECK(report.decision == Decision::Certified);
}

TEST_CASE("product of cutoff embeddings keeps the zero zone", "[algebra]") {
  const GeneralizedFunction p = mul(embed(make_rho()), embed(make_rho()));
  CHECK(eval_representative(p, 0, 0.0) == 0.0);
  CHECK(eval_representative(p, 5, 0.25) == 0.0);
}

TEST_CASE("algebra laws hold exactly at the representative level", "[algebra]") {
  const GeneralizedFunction a = embed(x_squared());
  const GeneralizedFunction b = apply_jump_gf({0.0, 0.5}, embed(identity()));
  const GeneralizedFunction c = embed(sum({identity(), constant(0.75)}));
  for (std::size_t nu : {0u, 3u, 7u})
    for (double x : kDyadicGrid) {
      // associativity and commutativity of + and *
      CHECK(eval_representative(add(add(a, b), c), nu, x) ==
            eval_representative(add(a, add(b, c)), nu, x));
      CHECK(eval_representative(add(a, b), nu, x) ==
            eval_representative(add(b, a), nu, x));
      CHECK(eval_representative(mul(mul(a, b), c), nu, x) ==
            eval_representative(mul(a, mul(b, c)), nu, x));
      CHECK(eval_representative(mul(a, b), nu, x) ==
            eval_representative(mul(b, a), nu, x));
      // distributivity
      CHECK(eval_representative(mul(a, add(b, c)), nu, x) ==
            eval_representative(add(mul(a, b), mul(a, c)), nu, x));
      // units
      CHECK(eval_representative(add(a, embed(constant(0.0))), nu, x) ==
            eval_representative(a, nu, x));
      CHECK(eval_representative(mul(a, embed(constant(1.0))), nu, x) ==
            eval_representative(a, nu, x));
    }
}

TEST_CASE("derivation is termwise", "[algebra]") {
  const GeneralizedFunction w = embed(x_squared());
  const GeneralizedFunction d = derive(w, 1);
  for (std::size_t nu : kIndices)
    for (double x : kDyadicGrid)
      CHECK(eval_representative(d, nu, x) == 2.0 * x);

  const auto report = equiv(derive(embed(constant(4.25)), 1), embed(constant(0.0)),
                            IdealWitness::for_points({}), CheckProtocol{});
  CHECK(report.decision == Decision::Certified);
}

TEST_CASE("embedding is a homomorphism for products and derivation", "[algebra]") {
  const SmoothExpr psi = sum({x_squared(), constant(-0.5)});
  const SmoothExpr phi = sum({identity(), constant(1.25)});
  const GeneralizedFunction lhs_mul = embed(product({psi, phi}));
  const GeneralizedFunction rhs_mul = mul(embed(psi), embed(phi));
  const GeneralizedFunction lhs_diff = embed(psi.derivative());
  const GeneralizedFunction rhs_diff = derive(embed(psi), 1);
  for (std::size_t nu : kIndices)
    for (double x : kDyadicGrid) {
      CHECK(eval_representative(lhs_mul, nu, x) ==
            eval_representative(rhs_mul, nu, x));
      CHECK(eval_representative(lhs_diff, nu, x) ==
            eval_representative(rhs_diff, nu, x));
    }
}

TEST_CASE("Leibniz rule holds pointwise at the representative level",
          "[algebra]") {
  const GeneralizedFunction a = embed(x_squared());
  const GeneralizedFunction b = apply_jump_gf({0.25, 1.5}, embed(x_cubed()));
  const GeneralizedFunction lhs = derive(mul(a, b), 1);
  const GeneralizedFunction rhs = add(mul(derive(a, 1), b), mul(a, derive(b, 1)));
  for (std::size_t nu : {0u, 2u, 7u})
    for (double x : kDyadicGrid)
      CHECK(eval_representative(lhs, nu, x) == eval_representative(rhs, nu, x));
}

TEST_CASE("smooth embeddings multiply like the functions themselves",
          "[algebra]") {
  const auto report =
      equiv(mul(embed(x_squared()), embed(x_cubed())),
            embed(product({identity(), identity(), identity(), identity(),
                           identity()})),
            IdealWitness::for_points({}), CheckProtocol{});
  CHECK(report.decision == Decision::Certified);
}

TEST_CASE("sequence rule reconstruction is deterministic", "[algebra]") {
  const GeneralizedFunction w =
      apply_multi_gf(MultiJumpAction{{{-1.0, 2.0}, {0.5, -1.0}}},
                     embed(x_squared()));
  for (std::size_t nu : kIndices)
    for (double x : grid(-3.0, 3.0, 23))
      CHECK(w.rep.at(nu).eval(x) == w.rep.at(nu).eval(x));
}

TEST_CASE("shrink sequences reparametrize by index", "[algebra]") {
  const RepSequence tail = seq_shrink(make_smooth_step(), 0.0);
  // term nu is the step compressed to [0, 1/(nu+1)]
  CHECK(tail.at(3).eval(-0.1) == 0.0);
  CHECK(tail.at(3).eval(0.25) == 1.0);
  CHECK(tail.at(3).eval(0.125) == make_smooth_step().eval(0.5));
  CHECK(tail.at(7).eval(0.125) == 1.0);
}
