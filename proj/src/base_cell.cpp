#include "pfcme/base_cell.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pfcme/errors.hpp"
#include "pfcme/quadrature.hpp"
#include "pfcme/summation.hpp"

namespace pfcme {

namespace {

struct CellMoments {
  double mass = 0.0;
  double first = 0.0;   // E[Y - 1]
  double second = 0.0;  // E[(Y - 1)^2]
};

template <typename Profile>
CellMoments integrate_moments(const Profile& g, double h, std::size_t n,
                              std::vector<double>* cumulative) {
  const auto& rule = gauss_legendre8();
  const double step = h / static_cast<double>(n);
  CompensatedSum mass, first, second, running;
  if (cumulative != nullptr) {
    cumulative->assign(n + 1, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double a = step * static_cast<double>(i);
    const double mid = a + 0.5 * step;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double u = mid + 0.5 * step * rule.nodes[j];
      const double w = rule.weights[j] * g(u);
      const double d = u - 1.0;
      s0 += w;
      s1 += w * d;
      s2 += w * d * d;
    }
    s0 *= 0.5 * step;
    s1 *= 0.5 * step;
    s2 *= 0.5 * step;
    mass.add(s0);
    first.add(s1);
    second.add(s2);
    if (cumulative != nullptr) {
      running.add(s0);
      (*cumulative)[i + 1] = running.value();
    }
  }
  const double m0 = mass.value();
  return {m0, first.value() / m0, second.value() / m0};
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

BaseCellTable::BaseCellTable(const FamilyParams& params) : params_(params) {
  const std::size_t n = static_cast<std::size_t>(
      std::max(64, kPointsPerPeriod * params.L));
  step_ = params.h / static_cast<double>(n);
  auto g = [this](double u) { return profile(u); };

  const CellMoments coarse = integrate_moments(g, params.h, n, &cumulative_);
  const CellMoments fine = integrate_moments(g, params.h, 2 * n, nullptr);

  const double var_coarse = coarse.second - coarse.first * coarse.first;
  const double var_fine = fine.second - fine.first * fine.first;
  if (!std::isfinite(coarse.mass) || !std::isfinite(var_coarse) ||
      !close(coarse.mass, fine.mass, kRefinementTolerance) ||
      !close(1.0 + coarse.first, 1.0 + fine.first, kRefinementTolerance) ||
      !close(var_coarse, var_fine, kRefinementTolerance)) {
    throw NumericError("base-cell quadrature did not converge for m=" +
                       std::to_string(params.m));
  }
  centred_first_ = coarse.first;
  centred_second_ = coarse.second;
}

double BaseCellTable::profile(double u) const {
  return std::exp(-u) * w_eval_direct(params_.omega * (u - 1.0), params_);
}

double BaseCellTable::integral_to(double u) const {
  if (u <= 0.0) return 0.0;
  const std::size_t n = intervals();
  if (u >= params_.h) return cumulative_.back();
  std::size_t i = static_cast<std::size_t>(u / step_);
  i = std::min(i, n - 1);
  const double a = step_ * static_cast<double>(i);
  if (u <= a) return cumulative_[i];
  const double partial =
      integrate_gl8([this](double v) { return profile(v); }, a, u);
  return std::min(cumulative_[i] + partial, cumulative_[i + 1]);
}

double BaseCellTable::quantile(double p) const {
  p = std::clamp(p, 0.0, 1.0);
  const double target = p * mass();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) return params_.h;
  const std::size_t hi = static_cast<std::size_t>(it - cumulative_.begin());
  const std::size_t lo = hi - 1;
  const double c0 = cumulative_[lo];
  const double c1 = cumulative_[hi];
  const double frac = (c1 > c0) ? (target - c0) / (c1 - c0) : 0.0;
  return step_ * (static_cast<double>(lo) + frac);
}

}  // namespace pfcme
