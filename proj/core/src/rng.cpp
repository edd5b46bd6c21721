#include "stochopt/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace stochopt {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Substream RandomStream::at(index_t k, Purpose purpose) const {
  std::uint64_t h = mix64(run_seed_ + kGolden);
  h = mix64(h ^ (static_cast<std::uint64_t>(k) * kGolden));
  h = mix64(h ^ (static_cast<std::uint64_t>(purpose) * 0xd6e8feb86659fd93ULL));
  return Substream(h);
}

std::uint64_t Substream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Substream::uniform() {
  // (x >> 11) is uniform on [0, 2^53); the +0.5 shift keeps log() safe.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Substream::bounded(std::uint64_t n) {
  __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    std::uint64_t threshold = (-n) % n;
    while (lo < threshold) {
      m = static_cast<__uint128_t>(next_u64()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Substream::normal() {
  double u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace stochopt
