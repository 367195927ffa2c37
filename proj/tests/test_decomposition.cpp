#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pfcme/decomposition.hpp"
#include "pfcme/errors.hpp"

using namespace pfcme;

TEST_CASE("decompose: cell ratio and base-cell mass") {
  const PfCmeDistribution d(200);
  const auto dec = decompose(d);
  CHECK(dec.q == doctest::Approx(4.718e-6).epsilon(1e-3));
  CHECK(std::abs(dec.q * 200.0 * 200.0 * std::log(200.0) - 1.0) < 1e-12);
  CHECK(dec.q > 0.0);
  CHECK(dec.q < 1.0);
  CHECK(std::abs(dec.base_mass - (1.0 - dec.q)) < 1e-10);
  CHECK(dec.h == d.params().h);
}

TEST_CASE("oracle moments agree with the finite moment sums") {
  for (int m : {10, 50, 200}) {
    const PfCmeDistribution d(m);
    const auto dec = decompose(d);
    const MomentSet exact = d.moments();
    const MomentSet oracle_set = oracle_moments(dec);
    const double mean_via_cells = dec.base_mean + dec.h * dec.q / (1.0 - dec.q);
    CHECK(std::abs(mean_via_cells / exact.mean - 1.0) < 1e-8);
    CHECK(std::abs(oracle_set.mean / exact.mean - 1.0) < 1e-8);
    CHECK(std::abs(oracle_set.variance / exact.variance - 1.0) < 1e-8);
    CHECK(std::abs(oracle_set.scv / exact.scv - 1.0) < 1e-8);
    CHECK(std::abs(oracle_set.M0 / exact.M0 - 1.0) < 1e-8);
    CHECK(std::abs(oracle_set.M2 / exact.M2 - 1.0) < 1e-8);
  }
}

TEST_CASE("oracle SCV reproduces the published m = 200 value") {
  const auto mo = oracle_moments(decompose(PfCmeDistribution(200)));
  CHECK(std::abs(mo.scv / 8.003e-4 - 1.0) < 1e-3);
}

TEST_CASE("variance split between base cell and geometric cells at m = 200") {
  const auto dec = decompose(PfCmeDistribution(200));
  const double geometric = dec.h * dec.h * dec.q / ((1.0 - dec.q) * (1.0 - dec.q));
  const double total = geometric + dec.base_var;
  // Both terms live on the ln m / m^2 scale.
  const double scale = std::log(200.0) / (200.0 * 200.0);
  CHECK(geometric / scale > 0.1);
  CHECK(geometric / scale < 10.0);
  CHECK(dec.base_var / scale > 0.1);
  CHECK(dec.base_var / scale < 10.0);
  // At this m the cell jumps carry most of the variance (~89%).
  CHECK(geometric / total == doctest::Approx(0.888).epsilon(0.01));
}

TEST_CASE("periodic factorization of the density") {
  for (int m : {50, 200}) {
    const PfCmeDistribution d(m);
    const double h = d.params().h;
    std::mt19937_64 rng(17 + m);
    std::uniform_real_distribution<double> cell(0.0, h);
    for (int k = 1; k <= 3; ++k) {
      for (int i = 0; i < 100; ++i) {
        // Pick u so that t - k h == u holds exactly in floating point.
        const double t = k * h + cell(rng);
        const double u = t - k * h;
        const double lhs = d.density(t);
        const double rhs = std::pow(d.q(), k) * d.density(u);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
      }
    }
  }
}

TEST_CASE("geometric cell masses") {
  for (int m : {50, 200}) {
    const PfCmeDistribution d(m);
    const auto& p = d.params();
    const double q = d.q();
    for (int k = 0; k <= 10; ++k) {
      const double mass = oracle::integrate([&](double t) { return d.density(t); },
                                            k * p.h, (k + 1) * p.h, 4 * p.L);
      const double expected = (1.0 - q) * std::pow(q, k);
      CHECK(std::abs(mass / expected - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("SamplerState reproduces the reference xoshiro256** stream") {
  SamplerState s(42);
  CHECK(s.next_u64() == 0x15780b2e0c2ec716ULL);
  CHECK(s.next_u64() == 0x6104d9866d113a7eULL);
  CHECK(s.next_u64() == 0xae17533239e499a1ULL);
  CHECK(s.next_u64() == 0xecb8ad4703b360a1ULL);
  SamplerState u(42);
  CHECK(u.next_uniform() == 0.08386297105988222);
  CHECK(SamplerState::kGeneratorName == "xoshiro256starstar");
}

TEST_CASE("sampling is deterministic per seed") {
  const PfCmeDistribution d(100);
  SamplerState a(7), b(7), c(8);
  const auto xa = sample(d, a, 2);
  const auto xb = sample(d, b, 2);
  CHECK(xa == xb);
  CHECK(xa != sample(d, c, 2));
  CHECK_THROWS_AS(sample(d, a, 0), DomainError);
}

TEST_CASE("sample moments match the exact moments at m = 100") {
  const PfCmeDistribution d(100);
  const auto dec = decompose(d);
  SamplerState state(20240601);
  const auto xs = sample(dec, state, 1'000'000);
  const double n = static_cast<double>(xs.size());
  const double mean = d.moments().mean;
  const double var = d.moments().variance;

  double s1 = 0.0;
  for (double x : xs) s1 += x;
  const double sample_mean = s1 / n;
  double c2 = 0.0, c4 = 0.0;
  for (double x : xs) {
    const double e = x - sample_mean;
    c2 += e * e;
    c4 += e * e * e * e;
  }
  const double sample_var = c2 / (n - 1.0);
  const double mu4 = c4 / n;

  CHECK(std::abs(sample_mean - mean) <= 4.0 * std::sqrt(var / n));
  CHECK(std::abs(sample_var - var) <= 5.0 * std::sqrt((mu4 - var * var) / n));
}

TEST_CASE("Kolmogorov-Smirnov distance against cdf()") {
  const PfCmeDistribution d(100);
  const auto dec = decompose(d);
  SamplerState state(99);
  auto xs = sample(dec, state, 100'000);
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double dmax = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = d.cdf(xs[i]);
    dmax = std::max({dmax, f - i / n, (i + 1) / n - f});
  }
  // Asymptotic 1% critical value 1.628 / sqrt(n).
  CHECK(dmax < 1.628 / std::sqrt(n));
}
