#pragma once

#include <vector>

#include "stochopt/core/rng.hpp"
#include "stochopt/core/types.hpp"

namespace stochopt {

enum class SamplingMode { WithReplacement, WithoutReplacement };

// The component indices drawn for iteration k.  Indices are 0-based over a
// population of n components and are a deterministic function of the
// random stream at (k, Purpose::BatchSampling).
struct Batch {
  index_t k = 0;
  std::vector<index_t> indices;
  SamplingMode mode = SamplingMode::WithReplacement;

  index_t size() const { return static_cast<index_t>(indices.size()); }
};

// Draws `size` indices uniformly from {0,...,n-1} per the requested mode.
// Without-replacement batches contain no duplicates and are emitted in
// ascending order (Floyd's subset sampling); with-replacement batches keep
// draw order.  Throws std::invalid_argument when size < 1, or when
// size > n in without-replacement mode.
Batch sample_batch(const RandomStream& stream, index_t k, index_t size,
                   SamplingMode mode, index_t n);

// A uniformly random permutation of {0,...,n-1} for iteration k; used by
// shuffled-cyclic coordinate rules.
std::vector<index_t> sample_permutation(const RandomStream& stream, index_t k,
                                        index_t n);

}  // namespace stochopt
