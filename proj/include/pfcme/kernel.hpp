#pragma once

// Fejér kernel, its Fourier coefficients, and the r-fold powered kernel
//
//   Phi_m(theta) = 1 + 2 sum_{l=1}^{m-1} (1 - l/m) cos(l theta)
//                = (1/m) (sin(m theta/2) / sin(theta/2))^2
//
//   W(theta) = Phi_m(theta)^r = B_0 + 2 sum_{l=1}^{L} B_l cos(l theta),
//   L = r (m - 1).
//
// The B_l are kept unnormalized: B_0 + 2 sum B_l = W(0) = m^r.

#include <cstdint>
#include <span>
#include <vector>

namespace pfcme {

/// Index m and the quantities derived from it. Built by make_params().
struct FamilyParams {
  int m = 0;           // construction index, m >= 3 for a family member
  int r = 0;           // kernel power ceil(ln m)
  double h = 0.0;      // cell length 2 ln m + ln ln m
  double omega = 0.0;  // modulation frequency 2 pi / h
  int L = 0;           // trigonometric degree r (m - 1)
  std::int64_t n = 0;  // minimal ME order 2L + 1
};

/// gamma_k = 1 - |k|/m for |k| <= m-1, stored for k = -(m-1) .. (m-1).
struct FejerCoefficients {
  int m = 0;
  std::vector<double> gamma;

  /// gamma_k, zero outside the support.
  double at(int k) const;
};

/// Nonnegative-lag half B_0..B_L of the r-fold self-convolution of gamma.
struct PoweredKernelCoefficients {
  int m = 0;
  int r = 0;
  std::vector<double> B;

  int degree() const { return static_cast<int>(B.size()) - 1; }
};

/// Threshold on the peak mass m^r. Moment products square it, so beyond
/// 1e150 the SCV numerator would leave double range.
inline constexpr double kMaxPeakMass = 1e150;

/// Distance from 2 pi Z below which fejer_eval leaves the closed form.
inline constexpr double kFejerSingularBand = 1e-8;

/// Phi_m(theta). Closed form away from 2 pi Z, Taylor limit within
/// kFejerSingularBand of it. Throws DomainError for m < 2.
double fejer_eval(double theta, int m);

FejerCoefficients fejer_coefficients(int m);

/// r-fold convolution of the Fejér sequence. Direct convolution with
/// pairwise-summed dot products; deterministic for fixed (m, r).
/// Throws CapacityError when m^r > kMaxPeakMass.
PoweredKernelCoefficients power_coefficients(int m, int r);
PoweredKernelCoefficients power_coefficients(const FamilyParams& params);

/// W(theta) as fejer_eval(theta, m)^r.
double w_eval_direct(double theta, const FamilyParams& params);

/// W(theta) from the cosine expansion, compensated sum in ascending l.
double w_eval_series(double theta, const PoweredKernelCoefficients& coeffs);

/// Default route: the closed-form power.
inline double w_eval(double theta, const FamilyParams& params) {
  return w_eval_direct(theta, params);
}

}  // namespace pfcme
