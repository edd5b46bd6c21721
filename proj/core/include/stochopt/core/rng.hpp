#pragma once

#include <cstdint>
#include <vector>

#include "stochopt/core/types.hpp"

namespace stochopt {

// Purpose tag separating the random streams consumed within one iteration.
// Adding a tag never perturbs existing streams.
enum class Purpose : std::uint64_t {
  BatchSampling = 1,
  GradientNoise = 2,
  Shuffle = 3,
  InnerIndex = 4,
  IterateChoice = 5,
  DataSynthesis = 6,
  Init = 7,
  HessianBatch = 8,
};

// Counter-based splittable generator.  The substream for (run_seed, k, tag)
// is obtained by feeding run_seed, k and the tag through the splitmix64
// finalizer; identical keys always yield identical sample sequences,
// independent of thread count, evaluation order or platform.
//
// Draws avoid std::*_distribution on purpose: their algorithms are
// implementation-defined, which would break cross-toolchain determinism.
class Substream {
 public:
  explicit Substream(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64();

  // Uniform in the open interval (0,1); 53-bit resolution.
  double uniform();

  // Uniform integer in [0, n) via Lemire's unbiased bounded draw.
  std::uint64_t bounded(std::uint64_t n);

  // Standard normal via Box-Muller (two uniforms per draw, no caching).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t run_seed) : run_seed_(run_seed) {}

  std::uint64_t run_seed() const { return run_seed_; }

  Substream at(index_t k, Purpose purpose) const;

 private:
  std::uint64_t run_seed_;
};

}  // namespace stochopt
