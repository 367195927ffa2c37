#include "pfcme/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace pfcme {

namespace {

// Roots of P_8 by Newton iteration from the Chebyshev guesses.
GaussLegendre8 build_rule() {
  constexpr int n = 8;
  GaussLegendre8 rule{};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendre8& gauss_legendre8() {
  static const GaussLegendre8 rule = build_rule();
  return rule;
}

}  // namespace pfcme
