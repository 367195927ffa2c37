#pragma once

// PF-CME family member
//
//   f(t) = C e^{-t} W(omega (t - 1)),   t >= 0,
//
// with W the powered Fejér kernel of FamilyParams. Moments come from the
// finite sums over the cosine coefficients B_l against the basis
// integrals J_k, S_k; C = 1 / M_0.

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "pfcme/base_cell.hpp"
#include "pfcme/kernel.hpp"

namespace pfcme {

/// r = ceil(ln m), h = 2 ln m + ln ln m, omega = 2 pi / h, L = r (m - 1),
/// n = 2L + 1. Throws DomainError for m < 3 (ln ln m <= 0 at m = 2).
FamilyParams make_params(int m);

/// Integrals of t^k e^{-t} cos(a t) (J_k) and t^k e^{-t} sin(a t) (S_k)
/// over [0, inf).
struct BasisIntegrals {
  double J0, S0, J1, S1, J2, S2;
};

BasisIntegrals basis_integrals(double a);

struct MomentSet {
  double M0 = 0.0;  // raw moment integrals of e^{-t} W(omega (t-1))
  double M1 = 0.0;
  double M2 = 0.0;
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double scv = 0.0;
};

/// Finite moment sums with compensated accumulation in ascending l; the
/// SCV numerator M2 M0 - M1^2 is formed in double-double.
/// Throws NumericError on a non-finite intermediate.
MomentSet moment_sums(const FamilyParams& params,
                      const PoweredKernelCoefficients& coeffs);

class PfCmeDistribution {
 public:
  /// Builds params, coefficients and moments for index m.
  explicit PfCmeDistribution(int m);

  const FamilyParams& params() const { return params_; }
  const PoweredKernelCoefficients& coeffs() const { return coeffs_; }
  double normalization() const { return C_; }
  const MomentSet& moments() const { return moments_; }
  /// Cell-decay ratio e^{-h}.
  double q() const { return q_; }

  /// f(t). Throws DomainError for t < 0.
  double density(double t) const;

  /// P(X <= t) from the base-cell table and the geometric cell masses.
  double cdf(double t) const;

  /// Base-cell table, built on first use.
  const BaseCellTable& base_cell() const;
  std::shared_ptr<const BaseCellTable> shared_base_cell() const;

 private:
  struct LazyTable {
    std::once_flag once;
    std::shared_ptr<const BaseCellTable> table;
  };

  FamilyParams params_;
  PoweredKernelCoefficients coeffs_;
  double C_ = 0.0;
  double q_ = 0.0;
  MomentSet moments_;
  std::shared_ptr<LazyTable> lazy_;
};

double density(const PfCmeDistribution& dist, double t);
double cdf(const PfCmeDistribution& dist, double t);

/// Smallest SCV over order-n phase-type laws, 1/n.
double erlang_scv(std::int64_t n);

struct Diagnostics {
  double scv_times_n;         // SCV n; below 1 beats Erlang
  double m2_over_logm_scv;    // (m^2 / ln m) SCV
  double n2_over_log3n_scv;   // (n^2 / ln^3 n) SCV
};

Diagnostics diagnostics(const PfCmeDistribution& dist);

/// Builds one member per index, possibly concurrently; result order
/// follows the input order.
std::vector<PfCmeDistribution> build_many(std::span<const int> m_values);

}  // namespace pfcme
