#include "pfcme/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <nlohmann/json.hpp>

#include "pfcme/errors.hpp"
#include "pfcme/kernel.hpp"

namespace pfcme {

namespace {

// Rounding slack on the comparisons, relative to m.
constexpr double kSlack = 1e-13;
constexpr double kConstantResolution = 1e-3;

struct Segment {
  double lo;
  double hi;
};

// Uniform grid over the union of segments; every segment endpoint is a grid
// point. points_total is split evenly between segments.
template <typename Check>
RegionResult scan(std::span<const Segment> segments, int points_total,
                  Check&& margin_at) {
  RegionResult res;
  res.checked = !segments.empty();
  res.worst_margin = std::numeric_limits<double>::infinity();
  const int per_segment =
      std::max(2, points_total / std::max<int>(1, static_cast<int>(segments.size())));
  for (const Segment& seg : segments) {
    for (int i = 0; i < per_segment; ++i) {
      const double x = (i == per_segment - 1)
                           ? seg.hi
                           : seg.lo + (seg.hi - seg.lo) * i / (per_segment - 1);
      const double margin = margin_at(x);
      ++res.points;
      if (margin < res.worst_margin) {
        res.worst_margin = margin;
        res.worst_x = x;
      }
    }
  }
  if (!res.checked) res.worst_margin = 0.0;
  res.ok = res.worst_margin >= -kSlack;
  return res;
}

void require_m(int m) {
  if (m < 2) throw DomainError("bound verification needs m >= 2");
}

double peak_edge(int m) { return kPeakHalfWidth / m; }
double transition_edge(int m) {
  return std::min(kTransitionHalfWidth / m, std::numbers::pi);
}

RegionResult peak_side(int m, double a, bool upper, int grid_points) {
  const double md = m;
  const Segment seg{-peak_edge(m), peak_edge(m)};
  return scan(std::span<const Segment>(&seg, 1), grid_points, [&](double x) {
    const double phi = fejer_eval(x, m);
    const double gauss = md * std::exp(-a * md * md * x * x);
    return (upper ? gauss - phi : phi - gauss) / md;
  });
}

}  // namespace

KernelRegion classify_region(double x, int m) {
  const double d = std::abs(std::remainder(x, 2.0 * std::numbers::pi));
  if (d <= peak_edge(m)) return KernelRegion::kPeak;
  if (d <= kTransitionHalfWidth / m) return KernelRegion::kTransition;
  return KernelRegion::kTail;
}

BoundReport verify_peak(int m, double a1, double a2, int grid_points) {
  require_m(m);
  if (!(a1 > 0.0 && a1 < a2)) {
    throw DomainError("peak constants need 0 < a1 < a2");
  }
  BoundReport rep;
  rep.m = m;
  rep.a1 = a1;
  rep.a2 = a2;
  rep.below_recommended = m < kRecommendedMinOrder;
  rep.peak_upper = peak_side(m, a1, true, grid_points);
  rep.peak_lower = peak_side(m, a2, false, grid_points);
  return rep;
}

BoundReport verify_transition(int m, int grid_points) {
  require_m(m);
  BoundReport rep;
  rep.m = m;
  rep.below_recommended = m < kRecommendedMinOrder;
  const double lo = peak_edge(m);
  const double hi = transition_edge(m);
  std::vector<Segment> segs;
  if (hi > lo) segs = {{-hi, -lo}, {lo, hi}};
  rep.transition = scan(segs, grid_points, [m](double x) {
    return kTransitionConstant - fejer_eval(x, m) / m;
  });
  return rep;
}

BoundReport verify_tail(int m, int grid_points) {
  require_m(m);
  BoundReport rep;
  rep.m = m;
  rep.below_recommended = m < kRecommendedMinOrder;
  const double lo = kTransitionHalfWidth / m;
  const double hi = std::numbers::pi;
  std::vector<Segment> segs;
  if (hi > lo) segs = {{-hi, -lo}, {lo, hi}};
  rep.tail = scan(segs, grid_points, [m](double x) {
    return kTailConstant - fejer_eval(x, m) / m;
  });
  return rep;
}

BoundReport verify_all(int m, double a1, double a2, int grid_points) {
  BoundReport rep = verify_peak(m, a1, a2, grid_points);
  rep.transition = verify_transition(m, grid_points).transition;
  rep.tail = verify_tail(m, grid_points).tail;
  return rep;
}

FittedConstants fit_constants(std::span<const int> m_values, int grid_points) {
  if (m_values.empty()) throw DomainError("fit_constants needs at least one m");

  auto all_pass = [&](double a, bool upper) {
    return std::all_of(m_values.begin(), m_values.end(), [&](int m) {
      return peak_side(m, a, upper, grid_points).ok;
    });
  };

  // Upper bound: feasible for a1 in (0, a1*]. Keep lo feasible.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > kConstantResolution) {
    const double mid = 0.5 * (lo + hi);
    (all_pass(mid, true) ? lo : hi) = mid;
  }
  const double a1_max = lo;

  // Lower bound: feasible for a2 in [a2*, inf). Keep hi feasible.
  lo = 0.0;
  hi = 1.0;
  while (!all_pass(hi, false)) hi *= 2.0;
  while (hi - lo > kConstantResolution) {
    const double mid = 0.5 * (lo + hi);
    (all_pass(mid, false) ? hi : lo) = mid;
  }
  return {a1_max, hi};
}

bool powered_bound_holds(double x, int m, int r, double a1, double a2) {
  const double md = m;
  const double w = std::pow(fejer_eval(x, m), r);
  const double d = std::abs(std::remainder(x, 2.0 * std::numbers::pi));
  const double slack = 1.0 + r * kSlack;
  switch (classify_region(x, m)) {
    case KernelRegion::kPeak: {
      const double upper = std::pow(md * std::exp(-a1 * md * md * d * d), r);
      const double lower = std::pow(md * std::exp(-a2 * md * md * d * d), r);
      return w <= upper * slack && w * slack >= lower;
    }
    case KernelRegion::kTransition:
      return w <= std::pow(kTransitionConstant * md, r) * slack;
    case KernelRegion::kTail:
      return w <= std::pow(kTailConstant * md, r) * slack;
  }
  return false;
}

namespace {

nlohmann::json region_json(const RegionResult& r) {
  return {{"checked", r.checked},
          {"ok", r.ok},
          {"worst_margin", r.worst_margin},
          {"worst_x", r.worst_x},
          {"points", r.points}};
}

}  // namespace

nlohmann::json to_json(const BoundReport& report) {
  return {{"m", report.m},
          {"a1", report.a1},
          {"a2", report.a2},
          {"below_recommended", report.below_recommended},
          {"peak_ok", report.peak_ok()},
          {"transition_ok", report.transition_ok()},
          {"tail_ok", report.tail_ok()},
          {"ok", report.ok()},
          {"peak_upper", region_json(report.peak_upper)},
          {"peak_lower", region_json(report.peak_lower)},
          {"transition", region_json(report.transition)},
          {"tail", region_json(report.tail)}};
}

}  // namespace pfcme
