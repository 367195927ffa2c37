#include "pfcme/decomposition.hpp"

#include <cmath>
#include <string>

#include "pfcme/errors.hpp"

namespace pfcme {

CellDecomposition decompose(const PfCmeDistribution& dist) {
  CellDecomposition d;
  d.h = dist.params().h;
  d.q = dist.q();
  d.base_cdf = dist.shared_base_cell();
  d.base_mass = dist.normalization() * d.base_cdf->mass();
  d.base_mean = d.base_cdf->mean();
  d.base_var = d.base_cdf->variance();
  return d;
}

MomentSet oracle_moments(const CellDecomposition& decomp) {
  const double q = decomp.q;
  const double one_minus_q = 1.0 - q;
  MomentSet out;
  out.mean = decomp.base_mean + decomp.h * q / one_minus_q;
  out.variance =
      decomp.base_var + decomp.h * decomp.h * q / (one_minus_q * one_minus_q);
  out.second_moment = out.variance + out.mean * out.mean;
  out.scv = out.variance / (out.mean * out.mean);
  out.M0 = decomp.raw_total_mass();
  out.M1 = out.M0 * out.mean;
  out.M2 = out.M0 * out.second_moment;
  if (!std::isfinite(out.scv) || !std::isfinite(out.M0)) {
    throw NumericError("non-finite oracle moments");
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

SamplerState::SamplerState(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) word = splitmix64(x);
}

std::uint64_t SamplerState::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double SamplerState::next_uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample(const CellDecomposition& decomp,
                           SamplerState& state, std::int64_t count) {
  if (count < 1) {
    throw DomainError("sample count must be >= 1, got " + std::to_string(count));
  }
  const double log_q = std::log(decomp.q);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const double y = decomp.base_cdf->quantile(state.next_uniform());
    const double k = std::floor(std::log(state.next_uniform()) / log_q);
    out.push_back(y + k * decomp.h);
  }
  return out;
}

std::vector<double> sample(const PfCmeDistribution& dist, SamplerState& state,
                           std::int64_t count) {
  return sample(decompose(dist), state, count);
}

}  // namespace pfcme
