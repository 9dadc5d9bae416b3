#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace stats {

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

// Batch-means estimate, robust to the autocorrelation of a Markov chain.
inline Estimate batch_mean(const std::vector<double>& xs, std::size_t batches = 40) {
  const std::size_t len = xs.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t i = 0; i < len; ++i) means[b] += xs[b * len + i];
    means[b] /= static_cast<double>(len);
  }
  Estimate e;
  for (double m : means) e.mean += m;
  e.mean /= static_cast<double>(batches);
  double var = 0.0;
  for (double m : means) var += (m - e.mean) * (m - e.mean);
  var /= static_cast<double>(batches - 1);
  e.se = std::sqrt(var / static_cast<double>(batches));
  return e;
}

}  // namespace stats
