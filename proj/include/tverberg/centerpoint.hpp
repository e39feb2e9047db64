#pragma once

// Approximate centerpoints from random Tverberg partitions.
//
// A common point of m class hulls has depth >= 1 in every class, hence
// Tukey depth >= m in the whole set.

#include "tverberg/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace tverberg {

enum class CenterpointMethod { Equipartition, Allocation };

std::string to_string(CenterpointMethod m);

struct CenterpointResult {
  Point point;
  Index certified_depth = 0;  // number of colors m
  std::optional<Index> measured_depth;
  int attempts = 0;
  CenterpointMethod method = CenterpointMethod::Equipartition;
};

/// Retry r colors the points with generator key stream_key(seed, r); the
/// first success in retry order is returned. measured_depth is filled for
/// d <= 4 (sweep for d <= 2, candidate enumeration above).
std::optional<CenterpointResult> centerpoint_equipartition(const PointSet& s, Index m, int retries,
                                                           std::uint64_t seed, bool measure_depth = true);

/// Uniform random coloring; a coloring with an empty color counts as a
/// failed attempt.
std::optional<CenterpointResult> centerpoint_allocation(const PointSet& s, Index m, int retries,
                                                        std::uint64_t seed, bool measure_depth = true);

/// Largest m with floor(n_points / m) >= ceil((1 + eps0) log2 m).
Index suggest_colors(Index n_points, Index d, double eps0 = 0.5);

/// Exact depth when d <= 2, enumerated depth for d <= 4, nullopt beyond.
std::optional<Index> measured_tukey_depth(const Point& q, const PointSet& s);

}  // namespace tverberg
