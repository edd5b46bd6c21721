#include "stochopt/core/batch.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace stochopt {

Batch sample_batch(const RandomStream& stream, index_t k, index_t size,
                   SamplingMode mode, index_t n) {
  if (n < 1) throw std::invalid_argument("sample_batch: population n must be >= 1");
  if (size < 1) throw std::invalid_argument("sample_batch: size must be >= 1");
  if (mode == SamplingMode::WithoutReplacement && size > n) {
    throw std::invalid_argument(
        "sample_batch: size exceeds population in without-replacement mode");
  }

  Substream rng = stream.at(k, Purpose::BatchSampling);
  Batch batch;
  batch.k = k;
  batch.mode = mode;
  batch.indices.reserve(static_cast<std::size_t>(size));

  if (mode == SamplingMode::WithReplacement) {
    for (index_t i = 0; i < size; ++i) {
      batch.indices.push_back(
          static_cast<index_t>(rng.bounded(static_cast<std::uint64_t>(n))));
    }
  } else {
    // Floyd's algorithm: a uniform size-subset of {0..n-1}.
    std::unordered_set<index_t> seen;
    seen.reserve(static_cast<std::size_t>(size) * 2);
    for (index_t j = n - size; j < n; ++j) {
      auto t = static_cast<index_t>(rng.bounded(static_cast<std::uint64_t>(j) + 1));
      index_t pick = seen.insert(t).second ? t : j;
      if (pick == j) seen.insert(j);
      batch.indices.push_back(pick);
    }
    std::sort(batch.indices.begin(), batch.indices.end());
  }
  return batch;
}

std::vector<index_t> sample_permutation(const RandomStream& stream, index_t k,
                                        index_t n) {
  std::vector<index_t> order(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  Substream rng = stream.at(k, Purpose::Shuffle);
  rng.shuffle(order);
  return order;
}

}  // namespace stochopt
