#pragma once

// Tabulated integral of the unnormalized base-cell profile
//
//   g(u) = e^{-u} W(omega (u - 1)),   0 <= u < h,
//
// on a uniform grid whose step resolves the fastest cosine (degree L)
// with at least 32 points per period. Each grid interval is integrated
// with an 8-point Gauss–Legendre rule; a second pass on the doubled grid
// checks the mass and the first two moments.

#include <cstddef>
#include <vector>

#include "pfcme/kernel.hpp"

namespace pfcme {

class BaseCellTable {
 public:
  /// Samples per period of the degree-L cosine.
  static constexpr int kPointsPerPeriod = 32;
  /// Relative agreement required between the grid and its refinement.
  static constexpr double kRefinementTolerance = 1e-9;

  explicit BaseCellTable(const FamilyParams& params);

  const FamilyParams& params() const { return params_; }
  double step() const { return step_; }
  std::size_t intervals() const { return cumulative_.size() - 1; }

  /// e^{-u} W(omega (u - 1)).
  double profile(double u) const;

  /// Raw integral of the profile over [0, h).
  double mass() const { return cumulative_.back(); }
  /// Raw integral over [0, u], u clamped to [0, h].
  double integral_to(double u) const;

  /// Normalized base-cell CDF G_Y(u) = integral_to(u) / mass().
  double cdf(double u) const { return integral_to(u) / mass(); }
  /// Inverse of G_Y by linear interpolation between grid nodes.
  double quantile(double p) const;

  /// E[Y] and Var(Y) of the normalized base-cell law.
  double mean() const { return 1.0 + centred_first_; }
  double variance() const { return centred_second_ - centred_first_ * centred_first_; }

 private:
  FamilyParams params_;
  double step_ = 0.0;
  std::vector<double> cumulative_;
  double centred_first_ = 0.0;   // E[Y - 1]
  double centred_second_ = 0.0;  // E[(Y - 1)^2]
};

}  // namespace pfcme
