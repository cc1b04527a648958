#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ndalg::detail {

/// Truncated Taylor series (a "jet"): c[i] = f^(i)(t0) / i!.
/// Used to evaluate derivatives of the smooth step through its closed
/// form at interior points; standard propagation recurrences.
struct Jet {
  std::vector<double> c;

  explicit Jet(std::size_t order) : c(order + 1, 0.0) {}
  std::size_t order() const { return c.size() - 1; }
};

inline Jet jet_constant(double v, std::size_t order) {
  Jet j(order);
  j.c[0] = v;
  return j;
}

inline Jet jet_variable(double t0, std::size_t order) {
  Jet j(order);
  j.c[0] = t0;
  if (order >= 1) j.c[1] = 1.0;
  return j;
}

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r(a.order());
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
  Jet r(a.order());
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r(a.order());
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = -a.c[i];
  return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r(a.order());
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += a.c[j] * b.c[i - j];
    r.c[i] = acc;
  }
  return r;
}

inline Jet operator/(const Jet& a, const Jet& b) {
  Jet r(a.order());
  r.c[0] = a.c[0] / b.c[0];
  for (std::size_t i = 1; i < r.c.size(); ++i) {
    double acc = a.c[i];
    for (std::size_t j = 1; j <= i; ++j) acc -= b.c[j] * r.c[i - j];
    r.c[i] = acc / b.c[0];
  }
  return r;
}

inline Jet jet_exp(const Jet& a) {
  Jet r(a.order());
  r.c[0] = std::exp(a.c[0]);
  for (std::size_t i = 1; i < r.c.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= i; ++j)
      acc += static_cast<double>(j) * a.c[j] * r.c[i - j];
    r.c[i] = acc / static_cast<double>(i);
  }
  return r;
}

/// exp(-1/t) as a jet around t0 > 0.
inline Jet jet_exp_inv(const Jet& t) {
  return jet_exp(-(jet_constant(1.0, t.order()) / t));
}

/// k-th derivative of s(t) = f(t) / (f(t) + f(1-t)), f(t) = exp(-1/t),
/// at an interior point 0 < t0 < 1.
inline double step_derivative_inside(std::size_t k, double t0) {
  Jet t = jet_variable(t0, k);
  Jet f = jet_exp_inv(t);
  Jet g = jet_exp_inv(jet_constant(1.0, k) - t);
  Jet s = f / (f + g);
  double factorial = 1.0;
  for (std::size_t i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
  return s.c[k] * factorial;
}

}  // namespace ndalg::detail
