#pragma once

#include <array>

namespace pfcme {

/// Fixed 8-point Gauss–Legendre rule on [-1, 1].
struct GaussLegendre8 {
  std::array<double, 8> nodes;
  std::array<double, 8> weights;
};

const GaussLegendre8& gauss_legendre8();

/// Integral of f over [a, b] with one application of the 8-point rule.
template <typename F>
double integrate_gl8(F&& f, double a, double b) {
  const auto& rule = gauss_legendre8();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return s * half;
}

}  // namespace pfcme
