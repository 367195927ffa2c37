#pragma once

// Geometric cell decomposition X = Y + K h: K ~ Geom(1 - q) on {0, 1, ...}
// with q = e^{-h}, independent of the base-cell variable Y on [0, h).
// Gives a quadrature route to the moments, independent of the finite
// moment sums, and an exact sampler.

#include <array>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "pfcme/base_cell.hpp"
#include "pfcme/distribution.hpp"

namespace pfcme {

struct CellDecomposition {
  double q = 0.0;  // e^{-h} = 1 / (m^2 ln m)
  double h = 0.0;
  double base_mass = 0.0;  // C * raw base-cell integral, ~ 1 - q
  double base_mean = 0.0;  // E[Y]
  double base_var = 0.0;   // Var(Y)
  std::shared_ptr<const BaseCellTable> base_cdf;

  /// Raw integral of e^{-t} W(omega (t - 1)) over [0, inf).
  double raw_total_mass() const { return base_cdf->mass() / (1.0 - q); }
};

CellDecomposition decompose(const PfCmeDistribution& dist);

/// Mean and variance from base-cell quadrature plus the geometric terms
///   E[X] = E[Y] + h q / (1 - q),   Var(X) = Var(Y) + h^2 q / (1 - q)^2.
/// M0 is the raw total mass; M1, M2 follow from mean and second moment.
MomentSet oracle_moments(const CellDecomposition& decomp);

/// xoshiro256** 1.0 (Blackman & Vigna), state seeded from a 64-bit seed by
/// four successive splitmix64 outputs. Uniform doubles in (0, 1) are
/// ((x >> 11) + 0.5) * 2^-53.
class SamplerState {
 public:
  static constexpr std::string_view kGeneratorName = "xoshiro256starstar";

  explicit SamplerState(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();
  double next_uniform();

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_;
};

/// i.i.d. draws of X. Each draw takes two uniforms from the state: the
/// first for Y = G_Y^{-1}(U1) (table inverse with linear interpolation),
/// the second for K = floor(ln U2 / ln q).
std::vector<double> sample(const CellDecomposition& decomp,
                           SamplerState& state, std::int64_t count);
std::vector<double> sample(const PfCmeDistribution& dist, SamplerState& state,
                           std::int64_t count);

}  // namespace pfcme
