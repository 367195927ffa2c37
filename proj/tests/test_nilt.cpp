#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pfcme/errors.hpp"
#include "pfcme/nilt.hpp"
#include "pfcme/summation.hpp"

using namespace pfcme;

TEST_CASE("pole_residue structure") {
  const PfCmeDistribution d(50);
  const auto form = pole_residue(d);
  const double C = d.normalization();
  REQUIRE(form.nodes.size() == d.coeffs().B.size());
  CHECK(form.order == d.params().n);
  CHECK(form.weights[0].imag() == 0.0);
  CHECK(form.weights[0].real() == doctest::Approx(C * d.coeffs().B[0]));
  for (std::size_t l = 0; l < form.nodes.size(); ++l) {
    CHECK(form.nodes[l].real() == 1.0);
    CHECK(form.nodes[l].imag() == doctest::Approx(-double(l) * d.params().omega));
    if (l > 0) {
      CHECK(std::abs(form.weights[l]) ==
            doctest::Approx(2.0 * C * d.coeffs().B[l]).epsilon(1e-14));
    }
  }
  CompensatedSum mass;
  for (std::size_t l = 0; l < form.nodes.size(); ++l) {
    mass.add((form.weights[l] / form.nodes[l]).real());
  }
  CHECK(std::abs(mass.value() - 1.0) < 1e-10);
}

TEST_CASE("pole_residue reconstructs the density") {
  for (int m : {20, 50}) {
    const PfCmeDistribution d(m);
    const auto form = pole_residue(d);
    const double peak = d.density(1.0);
    std::mt19937_64 rng(m);
    std::uniform_real_distribution<double> where(0.0, 3.0 * d.params().h);
    for (int i = 0; i < 100; ++i) {
      const double t = where(rng);
      // Relative where the density is not at a kernel zero.
      CHECK(oracle::close(form.reconstruct(t), d.density(t), 1e-9, 1e-13 * peak));
    }
  }
}

TEST_CASE("pruning small residues") {
  const PfCmeDistribution d(200);
  const auto full = pole_residue(d);
  const auto pruned = pole_residue(d, true);
  CHECK(pruned.nodes.size() <= full.nodes.size());
  const auto F = *find_transform("const");
  CHECK(std::abs(invert(pruned, F, 1.0) - 1.0) < 1e-12);
}

TEST_CASE("inversion of the constant is exact") {
  const auto F = *find_transform("const");
  for (int m : {3, 10, 200, 1000}) {
    const auto form = pole_residue(PfCmeDistribution(m));
    for (double T : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      CHECK(std::abs(invert(form, F, T) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("inversion of the ramp returns T E[X]") {
  const PfCmeDistribution d(200);
  const auto form = pole_residue(d);
  const auto F = *find_transform("ramp");
  CHECK(std::abs(invert(form, F, 1.0) - d.moments().mean) <= 1e-12);
  CHECK(std::abs(invert(form, F, 2.5) - 2.5 * d.moments().mean) <= 1e-11);
}

TEST_CASE("inversion of 1/(s+1) is governed by the SCV") {
  const auto F = *find_transform("exp");
  double previous = 1.0;
  for (int m : {200, 400, 1000}) {
    const PfCmeDistribution d(m);
    const double err = std::abs(invert(pole_residue(d), F, 1.0) - std::exp(-1.0));
    CHECK(err <= 5.0 * d.moments().scv * std::exp(-1.0));
    CHECK(err <= previous);
    previous = err;
  }
}

TEST_CASE("step inversion stays within [0, 1] and is monotone in T") {
  const auto F = *find_transform("step");
  for (int m : {50, 200}) {
    const auto form = pole_residue(PfCmeDistribution(m));
    double prev = -1.0;
    for (int i = 1; i <= 400; ++i) {
      const double T = 0.01 * i;
      const double v = invert(form, F, T);
      CHECK(v >= -1e-9);
      CHECK(v <= 1.0 + 1e-9);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("catalog entries invert at T = 0.5, m = 1000") {
  const PfCmeDistribution d(1000);
  const auto form = pole_residue(d);
  const double scv = d.moments().scv;
  REQUIRE(catalog().size() == 5);
  for (const auto& F : catalog()) {
    REQUIRE(F.inverse.has_value());
    const double tol = (F.name == "step") ? 10.0 * std::sqrt(scv) : 10.0 * scv;
    CHECK_MESSAGE(std::abs(invert(form, F, 0.5) - (*F.inverse)(0.5)) <= tol, F.name);
  }
}

TEST_CASE("catalog lookup") {
  const auto step = find_transform("step");
  REQUIRE(step.has_value());
  const Complex s(0.7, -2.0);
  CHECK(std::abs(step->transform(s) - std::exp(-s) / s) < 1e-15);
  CHECK_FALSE(find_transform("gaver").has_value());
}

TEST_CASE("rational transforms") {
  const auto parsed = parse_rational("num=1; den=1,1");
  const auto exp_entry = *find_transform("exp");
  const auto form = pole_residue(PfCmeDistribution(300));
  for (double T : {0.5, 1.0, 3.0}) {
    CHECK(invert(form, parsed, T) == invert(form, exp_entry, T));
  }
  const auto swapped = parse_rational(" den = 1, 0, 1 ; num = 1 ");
  CHECK(swapped.transform(Complex(2.0, 0.0)).real() == doctest::Approx(0.2));
  CHECK_THROWS_AS(parse_rational("num=1"), DomainError);
  CHECK_THROWS_AS(parse_rational("num=1; den=x"), DomainError);
  CHECK_THROWS_AS(parse_rational("num=1; den=0,0"), DomainError);
  CHECK_THROWS_AS(parse_rational("foo=1; den=1"), DomainError);
}

TEST_CASE("non-finite transform values name the node") {
  const auto form = pole_residue(PfCmeDistribution(10));
  // Pole at s = 1 / T hits node 0 for T = 1.
  const auto bad = rational_transform({1.0}, {1.0, -1.0}, "pole");
  try {
    invert(form, bad, 1.0);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("node 0") != std::string::npos);
  }
  CHECK_THROWS_AS(invert(form, *find_transform("const"), 0.0), DomainError);
}
