#pragma once

#include <random>
#include <vector>

#include "ndalg/ndalg.hpp"

namespace ndalg_test {

inline std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return out;
}

/// Dyadic rationals (multiples of 2^-10) stay exact under the additions
/// and subtractions the tests perform.
inline double random_dyadic(std::mt19937& rng, double lo, double hi) {
  std::uniform_int_distribution<int> dist(static_cast<int>(lo * 1024.0),
                                          static_cast<int>(hi * 1024.0));
  return dist(rng) / 1024.0;
}

inline double random_real(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

/// Random expression in the fragment the constructions generate:
/// polynomial-ish combinations of constants, the identity, steps,
/// cutoffs and their affine reparametrizations.
class ExprGen {
 public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  ndalg::SmoothExpr leaf() {
    switch (rng_() % 5) {
      case 0:
        return ndalg::constant(random_dyadic(rng_, -2.0, 2.0));
      case 1:
        return ndalg::identity();
      case 2:
        return ndalg::make_smooth_step();
      case 3:
        return ndalg::make_rho();
      default:
        return ndalg::affine_precompose(ndalg::make_rho(), pick_slope(),
                                        random_dyadic(rng_, -2.0, 2.0));
    }
  }

  ndalg::SmoothExpr gen(int depth) {
    if (depth <= 0) return leaf();
    switch (rng_() % 6) {
      case 0:
      case 1:
        return ndalg::sum({gen(depth - 1), gen(depth - 1)});
      case 2:
        return ndalg::product({gen(depth - 1), gen(depth - 1)});
      case 3:
        return ndalg::scale(random_dyadic(rng_, -2.0, 2.0), gen(depth - 1));
      case 4:
        return ndalg::affine_precompose(gen(depth - 1), pick_slope(),
                                        random_dyadic(rng_, -2.0, 2.0));
      default:
        return ndalg::compose(ndalg::make_smooth_step(), gen(depth - 1));
    }
  }

  std::mt19937& rng() { return rng_; }

 private:
  double pick_slope() {
    static const double slopes[] = {1.0, 2.0, 4.0, -1.0, -2.0, 0.5};
    return slopes[rng_() % 6];
  }

  std::mt19937 rng_;
};

/// Cumulative jump sum: total height strictly left of x, accumulated in
/// ascending location order (the reference for multi-point actions).
inline double cumulative_height(const ndalg::MultiJumpAction& act, double x) {
  double total = 0.0;
  for (const auto& [a, h] : act.jumps)
    if (a < x) total = total + h;
  return total;
}

}  // namespace ndalg_test
