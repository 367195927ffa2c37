#include "pfcme/distribution.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>

#include "pfcme/errors.hpp"
#include "pfcme/summation.hpp"

namespace pfcme {

FamilyParams make_params(int m) {
  if (m < 3) {
    throw DomainError("PF-CME index must be m >= 3, got " + std::to_string(m));
  }
  const double lm = std::log(static_cast<double>(m));
  FamilyParams p;
  p.m = m;
  p.r = static_cast<int>(std::ceil(lm));
  p.h = 2.0 * lm + std::log(lm);
  p.omega = 2.0 * std::numbers::pi / p.h;
  p.L = p.r * (m - 1);
  p.n = 2 * static_cast<std::int64_t>(p.L) + 1;
  return p;
}

BasisIntegrals basis_integrals(double a) {
  const double a2 = a * a;
  const double d = 1.0 + a2;
  const double d2 = d * d;
  const double d3 = d2 * d;
  return {
      1.0 / d,
      a / d,
      (1.0 - a2) / d2,
      2.0 * a / d2,
      2.0 * (1.0 - 3.0 * a2) / d3,
      2.0 * a * (3.0 - a2) / d3,
  };
}

MomentSet moment_sums(const FamilyParams& params,
                      const PoweredKernelCoefficients& coeffs) {
  CompensatedSum m0, m1, m2;
  const auto& B = coeffs.B;
  for (std::size_t l = 0; l < B.size(); ++l) {
    const double a = static_cast<double>(l) * params.omega;
    const BasisIntegrals bi = basis_integrals(a);
    const double weight = (l == 0) ? B[0] : 2.0 * B[l];
    const double c = std::cos(a);
    const double s = std::sin(a);
    m0.add(weight * (c * bi.J0 + s * bi.S0));
    m1.add(weight * (c * bi.J1 + s * bi.S1));
    m2.add(weight * (c * bi.J2 + s * bi.S2));
  }

  MomentSet out;
  out.M0 = m0.value();
  out.M1 = m1.value();
  out.M2 = m2.value();
  if (!std::isfinite(out.M0) || !std::isfinite(out.M1) ||
      !std::isfinite(out.M2) || out.M0 <= 0.0 || out.M1 <= 0.0) {
    throw NumericError("non-finite or nonpositive moment sum for m=" +
                       std::to_string(params.m));
  }

  const DoubleDouble numerator = dd_add(dd_mul(m2.dd(), m0.dd()),
                                        dd_neg(dd_mul(m1.dd(), m1.dd())));
  const double num = numerator.value();
  out.mean = out.M1 / out.M0;
  out.second_moment = out.M2 / out.M0;
  out.variance = num / (out.M0 * out.M0);
  out.scv = num / (out.M1 * out.M1);
  if (!std::isfinite(out.scv)) {
    throw NumericError("non-finite SCV for m=" + std::to_string(params.m));
  }
  return out;
}

PfCmeDistribution::PfCmeDistribution(int m)
    : params_(make_params(m)),
      coeffs_(power_coefficients(params_)),
      moments_(moment_sums(params_, coeffs_)),
      lazy_(std::make_shared<LazyTable>()) {
  C_ = 1.0 / moments_.M0;
  q_ = std::exp(-params_.h);
}

namespace {

// t = k h + u with u = t - fl(k h) exact (Sterbenz for k >= 1), so the
// phase omega (u - 1) stays small and carries no 2 pi k rounding.
struct CellPoint {
  double k;
  double u;
};

CellPoint split_cell(double t, double h) {
  double k = std::floor(t / h);
  double u = t - k * h;
  if (u < 0.0) {
    k -= 1.0;
    u = t - k * h;
  } else if (u >= h) {
    k += 1.0;
    u = t - k * h;
  }
  return {k, u};
}

// Beyond this many cells q^k underflows for every admissible m.
constexpr double kMaxCells = 1e6;

}  // namespace

double PfCmeDistribution::density(double t) const {
  if (!(t >= 0.0)) {
    throw DomainError("density needs t >= 0, got " + std::to_string(t));
  }
  if (t / params_.h > kMaxCells) return 0.0;
  const CellPoint cp = split_cell(t, params_.h);
  const double base =
      std::exp(-cp.u) * w_eval_direct(params_.omega * (cp.u - 1.0), params_);
  return C_ * std::pow(q_, cp.k) * base;
}

double PfCmeDistribution::cdf(double t) const {
  if (!(t > 0.0)) return 0.0;
  if (t / params_.h > kMaxCells) return 1.0;
  const CellPoint cp = split_cell(t, params_.h);
  const BaseCellTable& table = base_cell();
  const double qk = std::pow(q_, cp.k);
  const double below = -std::expm1(cp.k * std::log(q_));  // 1 - q^k
  return below + qk * (1.0 - q_) * table.cdf(cp.u);
}

const BaseCellTable& PfCmeDistribution::base_cell() const {
  return *shared_base_cell();
}

std::shared_ptr<const BaseCellTable> PfCmeDistribution::shared_base_cell() const {
  std::call_once(lazy_->once, [this] {
    lazy_->table = std::make_shared<const BaseCellTable>(params_);
  });
  return lazy_->table;
}

double density(const PfCmeDistribution& dist, double t) {
  return dist.density(t);
}

double cdf(const PfCmeDistribution& dist, double t) { return dist.cdf(t); }

double erlang_scv(std::int64_t n) {
  if (n < 1) {
    throw DomainError("Erlang order must be >= 1, got " + std::to_string(n));
  }
  return 1.0 / static_cast<double>(n);
}

Diagnostics diagnostics(const PfCmeDistribution& dist) {
  const double scv = dist.moments().scv;
  const double m = dist.params().m;
  const double n = static_cast<double>(dist.params().n);
  const double ln_n = std::log(n);
  return {
      scv * n,
      m * m / std::log(m) * scv,
      n * n / (ln_n * ln_n * ln_n) * scv,
  };
}

std::vector<PfCmeDistribution> build_many(std::span<const int> m_values) {
  std::vector<std::future<PfCmeDistribution>> pending;
  pending.reserve(m_values.size());
  for (int m : m_values) {
    pending.push_back(
        std::async(std::launch::async, [m] { return PfCmeDistribution(m); }));
  }
  std::vector<PfCmeDistribution> out;
  out.reserve(pending.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

}  // namespace pfcme
