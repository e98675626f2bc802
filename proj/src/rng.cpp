#include "detgeo/rng.hpp"

#include <cmath>
#include <numbers>

namespace detgeo {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

std::uint64_t fold(std::uint64_t a, std::uint64_t b) {
  return mix64(a + kGamma * (b + 1));
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), state_(fold(fold(seed + kGamma, 0x5eed), stream)) {}

Rng Rng::split(std::uint64_t k) const {
  return Rng(seed_, fold(stream_, k));
}

std::uint64_t Rng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double Rng::uniform() {
  // (0,1): offset by half an ulp so log() downstream never sees zero.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> Rng::cnormal() {
  double re = normal();
  double im = normal();
  return std::complex<double>(re, im) / std::sqrt(2.0);
}

}  // namespace detgeo
