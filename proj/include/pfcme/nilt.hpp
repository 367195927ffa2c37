#pragma once

// Laplace inversion with PF-CME nodes and weights.
//
// The density is f(t) = Re sum_l c_l e^{-lambda_l t} with decay rates
// lambda_l = 1 - i l omega (real part +1) and weights c_0 = C B_0,
// c_l = 2 C B_l e^{-i l omega}. For a transform G of g,
//
//   g(T) ~ E[g(T X)] = (1/T) sum_l Re[c_l G(lambda_l / T)],
//
// exact for the mixture and accurate to O(SCV) for smooth g since X
// concentrates at 1. f >= 0, so bounded g stays within its range.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfcme/distribution.hpp"

namespace pfcme {

using Complex = std::complex<double>;

struct PoleResidueForm {
  std::int64_t order = 0;
  std::vector<Complex> nodes;    // lambda_l, l = 0..L
  std::vector<Complex> weights;  // c_l

  /// Re sum_l c_l e^{-lambda_l t}.
  double reconstruct(double t) const;
};

/// Relative cutoff for the optional residue pruning.
inline constexpr double kResidueCutoff = 1e-16;

/// Poles and residues of the member. With prune_small set, weights with
/// |c_l| < 1e-16 max |c| are dropped; this perturbs the normalization by at
/// most L 1e-16 relative.
PoleResidueForm pole_residue(const PfCmeDistribution& dist,
                             bool prune_small = false);

struct TransformFunction {
  std::string name;
  std::string description;
  std::function<Complex(Complex)> transform;
  std::optional<std::function<double(double)>> inverse;
};

/// Rational transform num(s) / den(s), coefficients given highest power
/// first. Throws DomainError for an empty or all-zero denominator.
TransformFunction rational_transform(std::vector<double> numerator,
                                     std::vector<double> denominator,
                                     std::string name = "rational");

/// Parses "num=1; den=1,1" (either order, ';' separated, ',' between
/// coefficients, highest power first). Throws DomainError on bad input.
TransformFunction parse_rational(std::string_view text);

/// const 1/s, ramp 1/s^2, exp 1/(s+1), sin 1/(s^2+1), step e^{-s}/s.
const std::vector<TransformFunction>& catalog();
std::optional<TransformFunction> find_transform(std::string_view name);

/// Throws NumericError naming the node when F is not finite there.
double invert(const PoleResidueForm& form, const TransformFunction& F, double T);

}  // namespace pfcme
