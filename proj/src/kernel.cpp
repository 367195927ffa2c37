#include "pfcme/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pfcme/errors.hpp"
#include "pfcme/summation.hpp"

namespace pfcme {

namespace {

void require_order(int m) {
  if (m < 2) {
    throw DomainError("Fejér kernel needs m >= 2, got " + std::to_string(m));
  }
}

}  // namespace

double FejerCoefficients::at(int k) const {
  const int offset = m - 1;
  if (k < -offset || k > offset) return 0.0;
  return gamma[static_cast<std::size_t>(k + offset)];
}

double fejer_eval(double theta, int m) {
  require_order(m);
  const double delta = std::remainder(theta, 2.0 * std::numbers::pi);
  const double md = static_cast<double>(m);
  if (std::abs(delta) < kFejerSingularBand) {
    // m (sinc(m d/2) / sinc(d/2))^2 with sinc(d/2) = 1 - d^2/24 + O(d^4).
    const double y = 0.5 * md * delta;
    const double num = (y == 0.0) ? 1.0 : std::sin(y) / y;
    const double den = 1.0 - delta * delta / 24.0;
    const double ratio = num / den;
    return md * ratio * ratio;
  }
  const double ratio = std::sin(0.5 * md * delta) / std::sin(0.5 * delta);
  return ratio * ratio / md;
}

FejerCoefficients fejer_coefficients(int m) {
  require_order(m);
  FejerCoefficients out;
  out.m = m;
  out.gamma.resize(static_cast<std::size_t>(2 * m - 1));
  for (int k = -(m - 1); k <= m - 1; ++k) {
    out.gamma[static_cast<std::size_t>(k + m - 1)] =
        1.0 - static_cast<double>(std::abs(k)) / m;
  }
  return out;
}

PoweredKernelCoefficients power_coefficients(int m, int r) {
  require_order(m);
  if (r < 1) {
    throw DomainError("kernel power must be >= 1, got " + std::to_string(r));
  }
  if (r * std::log10(static_cast<double>(m)) > std::log10(kMaxPeakMass)) {
    throw CapacityError("peak mass m^r = " + std::to_string(m) + "^" +
                        std::to_string(r) + " exceeds 1e150");
  }

  const std::vector<double> gamma = fejer_coefficients(m).gamma;
  const std::size_t glen = gamma.size();  // 2m - 1

  // Full symmetric sequence of the current power, centred.
  std::vector<double> current = gamma;
  for (int step = 1; step < r; ++step) {
    const std::size_t alen = current.size();
    const std::size_t olen = alen + glen - 1;
    const std::size_t centre = (olen - 1) / 2;
    std::vector<double> next(olen);
    for (std::size_t j = centre; j < olen; ++j) {
      // out[j] = sum_k a[k] gamma[j-k]; gamma symmetric, so
      // gamma[j-k] = gamma[k + (glen-1) - j], increasing in k.
      const std::size_t k_lo = (j >= glen - 1) ? j - (glen - 1) : 0;
      const std::size_t k_hi = std::min(j, alen - 1);
      const std::size_t g_lo = k_lo + (glen - 1) - j;
      next[j] = pairwise_dot(current.data() + k_lo, gamma.data() + g_lo,
                             k_hi - k_lo + 1);
    }
    for (std::size_t j = 0; j < centre; ++j) next[j] = next[olen - 1 - j];
    current = std::move(next);
  }

  PoweredKernelCoefficients out;
  out.m = m;
  out.r = r;
  const std::size_t centre = (current.size() - 1) / 2;
  out.B.assign(current.begin() + static_cast<std::ptrdiff_t>(centre),
               current.end());
  return out;
}

PoweredKernelCoefficients power_coefficients(const FamilyParams& params) {
  return power_coefficients(params.m, params.r);
}

double w_eval_direct(double theta, const FamilyParams& params) {
  return std::pow(fejer_eval(theta, params.m), params.r);
}

double w_eval_series(double theta, const PoweredKernelCoefficients& coeffs) {
  CompensatedSum sum;
  sum.add(coeffs.B.front());
  for (std::size_t l = 1; l < coeffs.B.size(); ++l) {
    sum.add(2.0 * coeffs.B[l] * std::cos(static_cast<double>(l) * theta));
  }
  return sum.value();
}

}  // namespace pfcme
