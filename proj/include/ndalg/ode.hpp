#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ndalg/algebra.hpp"
#include "ndalg/expr.hpp"
#include "ndalg/ideal.hpp"

namespace ndalg {

/// U'(x) = F(x) on the whole line, with smooth right-hand side F.
struct FirstOrderODE {
  SmoothExpr rhs;
};

class DerivativeMismatch : public std::runtime_error {
 public:
  DerivativeMismatch(double x, double got, double expected)
      : std::runtime_error(format(x, got, expected)),
        x_(x),
        got_(got),
        expected_(expected) {}

  double where() const { return x_; }
  double got() const { return got_; }
  double expected() const { return expected_; }

 private:
  static std::string format(double x, double got, double expected) {
    std::ostringstream os;
    os << "candidate is not an antiderivative: at x = " << x
       << " its derivative is " << got << " but the right-hand side is "
       << expected;
    return os.str();
  }

  double x_, got_, expected_;
};

class JumpNotStabilized : public std::runtime_error {
 public:
  JumpNotStabilized(double previous, double current)
      : std::runtime_error(format(previous, current)),
        previous_(previous),
        current_(current) {}

  double previous_estimate() const { return previous_; }
  double current_estimate() const { return current_; }

 private:
  static std::string format(double previous, double current) {
    std::ostringstream os;
    os << "jump magnitude did not stabilize: successive estimates " << previous
       << " and " << current << " disagree beyond 1e-9";
    return os.str();
  }

  double previous_, current_;
};

/// Verification, not synthesis: the caller supplies the candidate
/// antiderivative and we certify candidate' = F on a sample grid,
/// reporting the worst point on failure.
inline SmoothExpr classical_solution(const FirstOrderODE& ode, SmoothExpr candidate,
                                     Interval check_window = {-4.0, 4.0},
                                     int check_samples = 129, double tol = 1e-9) {
  const SmoothExpr d = candidate.derivative();
  double worst_err = 0.0;
  double worst_x = check_window.lo;
  double worst_got = 0.0;
  double worst_expected = 0.0;
  for (int i = 0; i < check_samples; ++i) {
    const double x = check_window.lo +
                     (check_window.hi - check_window.lo) * i / (check_samples - 1);
    const double got = d.eval(x);
    const double expected = ode.rhs.eval(x);
    const double err =
        std::abs(got - expected) / std::max(1.0, std::abs(expected));
    if (err > worst_err) {
      worst_err = err;
      worst_x = x;
      worst_got = got;
      worst_expected = expected;
    }
  }
  if (worst_err > tol)
    throw DerivativeMismatch(worst_x, worst_got, worst_expected);
  return candidate;
}

/// A verified classical solution enters the algebra as the constant
/// sequence; call after classical_solution has accepted the candidate.
inline GeneralizedFunction embed_solution(SmoothExpr u) {
  return embed(std::move(u));
}

/// W solves the equation in the quotient algebra iff its termwise
/// derivative is ideal-equivalent to the embedded right-hand side.
inline CheckReport certify_generalized_solution(const GeneralizedFunction& w,
                                                const FirstOrderODE& ode,
                                                const IdealWitness& witness,
                                                const CheckProtocol& protocol) {
  return equiv(derive(w, 1), embed(ode.rhs), witness, protocol);
}

/// Persistent two-sided gap of the representatives across `location`,
/// probed just outside the shrinking transition band. A nonzero value
/// certifies non-classicality: no single smooth function has a gap that
/// survives every index. Throws when successive index estimates
/// disagree (the probe limit has not stabilized at this index cap).
inline double jump_magnitude(const GeneralizedFunction& w, double location,
                             const CheckProtocol& protocol) {
  if (protocol.index_cap < 1)
    throw std::invalid_argument("jump_magnitude: index_cap must be at least 1");
  auto estimate = [&](std::size_t nu) {
    const double delta = 2.0 / static_cast<double>(nu + 1);
    const SmoothExpr e = w.rep.at(nu);
    return e.eval(location + delta) - e.eval(location - delta);
  };
  const std::size_t cap = static_cast<std::size_t>(protocol.index_cap);
  const double previous = estimate(cap - 1);
  const double current = estimate(cap);
  if (std::abs(current - previous) > 1e-9)
    throw JumpNotStabilized(previous, current);
  return current;
}

}  // namespace ndalg
