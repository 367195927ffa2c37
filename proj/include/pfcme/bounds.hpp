#pragma once

// Finite-m verification of the scaled Fejér kernel bounds
//
//   peak:        m e^{-a2 m^2 x^2} <= Phi_m(x) <= m e^{-a1 m^2 x^2},  |x| <= 5/m
//   transition:  Phi_m(x) <= (6/25) m,                    5/m <= |x| <= 20/m
//   tail:        Phi_m(x) <= (pi^2/400) m,   20/m <= dist(x, 2 pi Z) <= pi
//
// Each check scans a uniform grid including the region endpoints. Margins
// are (bound - value) / m, so a negative worst margin marks a violation.

#include <numbers>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace pfcme {

inline constexpr double kTransitionConstant = 6.0 / 25.0;
inline constexpr double kTailConstant = std::numbers::pi * std::numbers::pi / 400.0;
inline constexpr double kPeakHalfWidth = 5.0;         // times 1/m
inline constexpr double kTransitionHalfWidth = 20.0;  // times 1/m
inline constexpr int kDefaultGridPoints = 10000;
inline constexpr int kRecommendedMinOrder = 8;
/// Default constants; they bracket the small-argument coefficient 1/12.
inline constexpr double kDefaultA1 = 0.08;
inline constexpr double kDefaultA2 = 0.13;

enum class KernelRegion { kPeak, kTransition, kTail };

/// Region of x on [-pi, pi] after reduction mod 2 pi.
KernelRegion classify_region(double x, int m);

struct RegionResult {
  bool checked = false;  // false when the region is empty for this m
  bool ok = true;
  double worst_margin = 0.0;
  double worst_x = 0.0;
  int points = 0;
};

struct BoundReport {
  int m = 0;
  double a1 = 0.0;
  double a2 = 0.0;
  RegionResult peak_upper;
  RegionResult peak_lower;
  RegionResult transition;
  RegionResult tail;
  bool below_recommended = false;  // m < 8: reported, not asserted

  bool peak_ok() const { return peak_upper.ok && peak_lower.ok; }
  bool transition_ok() const { return transition.ok; }
  bool tail_ok() const { return tail.ok; }
  bool ok() const { return peak_ok() && transition_ok() && tail_ok(); }
};

BoundReport verify_peak(int m, double a1, double a2,
                        int grid_points = kDefaultGridPoints);
BoundReport verify_transition(int m, int grid_points = kDefaultGridPoints);
BoundReport verify_tail(int m, int grid_points = kDefaultGridPoints);

/// All three regions in one report.
BoundReport verify_all(int m, double a1 = kDefaultA1, double a2 = kDefaultA2,
                       int grid_points = kDefaultGridPoints);

struct FittedConstants {
  double a1_max;
  double a2_min;
};

/// Largest a1 and smallest a2 (bisection to 1e-3) for which the peak
/// bounds hold on every listed m.
FittedConstants fit_constants(std::span<const int> m_values,
                              int grid_points = kDefaultGridPoints);

/// Region bound raised to the power r, checked against W = Phi^r at x.
bool powered_bound_holds(double x, int m, int r, double a1, double a2);

nlohmann::json to_json(const BoundReport& report);

}  // namespace pfcme
