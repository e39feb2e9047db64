#pragma once

#include "tverberg/types.hpp"

#include <numeric>
#include <vector>

namespace tverberg {

/// Calls fn(const std::vector<Index>&) for every k-subset of {0..n-1} in
/// lexicographic order. Stops early when fn returns false. Returns false iff
/// stopped early.
template <typename Fn>
bool for_each_combination(Index n, Index k, Fn&& fn) {
  if (k < 0 || k > n) return true;
  std::vector<Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), Index{0});
  while (true) {
    if (!fn(static_cast<const std::vector<Index>&>(idx))) return false;
    Index i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (Index j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Binomial coefficient as double; exact for the small arguments used in
/// complexity guards.
inline double binomial_count(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (Index i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace tverberg
