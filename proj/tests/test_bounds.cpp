#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>

#include "pfcme/bounds.hpp"
#include "pfcme/errors.hpp"
#include "pfcme/kernel.hpp"

using namespace pfcme;
constexpr double kPi = std::numbers::pi;

TEST_CASE("peak bounds with the default constants") {
  const auto rep = verify_peak(512, 0.08, 0.13);
  CHECK(rep.peak_ok());
  CHECK(rep.peak_upper.points >= kDefaultGridPoints);
  CHECK(rep.peak_upper.worst_margin >= 0.0);
  CHECK(rep.peak_lower.worst_margin >= 0.0);
}

TEST_CASE("an upper constant above 1/12 fails near the origin") {
  const auto rep = verify_peak(512, 0.20, 0.30);
  CHECK_FALSE(rep.peak_upper.ok);
  CHECK_FALSE(rep.peak_ok());
  CHECK(std::abs(rep.peak_upper.worst_x) < 5.0 / 512);
}

TEST_CASE("peak equality at x = 0") {
  for (int m : {8, 512}) {
    CHECK(fejer_eval(0.0, m) == m);
    CHECK(m * std::exp(-0.08 * 0.0) == m);
  }
  CHECK_THROWS_AS(verify_peak(64, 0.13, 0.08), DomainError);
}

TEST_CASE("transition bound") {
  const auto r512 = verify_transition(512);
  CHECK(r512.transition_ok());
  CHECK(r512.transition.worst_margin > 0.0);
  CHECK(verify_transition(64).transition_ok());
  const int m = 512;
  const double mid = fejer_eval(10.0 / m, m) / m;
  CHECK(mid < kTransitionConstant);
  CHECK(mid <= 0.04 * 1.5);
}

TEST_CASE("tail bound") {
  CHECK(kTailConstant == doctest::Approx(0.02467).epsilon(1e-3));
  CHECK(verify_tail(512).tail_ok());
  CHECK(verify_tail(8).tail_ok());
  for (int m : {8, 64, 512}) {
    CHECK(fejer_eval(kPi, m) <= 1.0 / m + 1e-15);
    CHECK(fejer_eval(kPi, m) < kTailConstant * m);
  }
}

TEST_CASE("regions cover [-pi, pi] without gaps") {
  for (int m : {8, 64, 512}) {
    for (int i = 0; i <= 100000; ++i) {
      const double x = -kPi + 2.0 * kPi * i / 100000.0;
      const double ax = std::abs(x);
      const KernelRegion region = classify_region(x, m);
      if (ax <= 5.0 / m) {
        CHECK(region == KernelRegion::kPeak);
      } else if (ax <= 20.0 / m) {
        CHECK(region == KernelRegion::kTransition);
      } else {
        CHECK(region == KernelRegion::kTail);
      }
    }
    CHECK(classify_region(2.0 * kPi + 1.0 / m, m) == KernelRegion::kPeak);
  }
}

TEST_CASE("fit_constants brackets the 1/12 expansion coefficient") {
  const std::vector<int> pair{64, 512};
  const auto fit = fit_constants(pair);
  CHECK(fit.a1_max > 0.06);
  CHECK(fit.a1_max < 1.0 / 12.0);
  CHECK(fit.a2_min > 1.0 / 12.0);
  CHECK(fit.a2_min < 0.20);
  CHECK(verify_peak(64, fit.a1_max, fit.a2_min).peak_ok());
  CHECK(verify_peak(512, fit.a1_max, fit.a2_min).peak_ok());

  const std::vector<int> single{64};
  const auto one = fit_constants(single);
  CHECK(one.a1_max < one.a2_min);

  const std::vector<int> wider{64, 512, 2048};
  const auto three = fit_constants(wider);
  CHECK(fit.a1_max <= one.a1_max);
  CHECK(three.a1_max <= fit.a1_max);
  CHECK(three.a2_min >= fit.a2_min);
  CHECK_THROWS_AS(fit_constants(std::vector<int>{}), DomainError);
}

TEST_CASE("powered kernel inherits the bounds") {
  std::mt19937_64 rng(3);
  for (auto [m, r] : {std::pair{64, 5}, std::pair{512, 7}}) {
    std::uniform_real_distribution<double> near(-20.0 / m, 20.0 / m);
    std::uniform_real_distribution<double> far(-kPi, kPi);
    for (int i = 0; i < 100; ++i) {
      const double x = (i % 2) ? near(rng) : far(rng);
      CHECK(powered_bound_holds(x, m, r, 0.08, 0.13));
    }
    CHECK_FALSE(powered_bound_holds(1e-3 / m + 1.0 / m, m, r, 0.5, 0.6));
  }
}

TEST_CASE("small m is flagged, not asserted") {
  const auto rep = verify_all(4);
  CHECK(rep.below_recommended);
  CHECK_FALSE(verify_all(8).below_recommended);
  CHECK(verify_all(8).ok());
}

TEST_CASE("report serialization") {
  const auto j = to_json(verify_all(64));
  CHECK(j["m"] == 64);
  CHECK(j["ok"] == true);
  CHECK(j["peak_ok"] == true);
  CHECK(j["transition_ok"] == true);
  CHECK(j["tail_ok"] == true);
  CHECK(j["tail"]["points"].get<int>() >= kDefaultGridPoints);
  CHECK(j["peak_upper"].contains("worst_margin"));
}
