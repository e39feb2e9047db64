#pragma once

// Tolerance of partitions, minimum removals to strict separability,
// PertSEP*_0 and DegNSEP*.
//
// Index conventions: tolerance results index the union of a partition's
// classes in class order; removal results index dataset rows.

#include "tverberg/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tverberg {

struct ToleranceResult {
  // -1 when the hulls do not intersect at all (the empty set already breaks).
  int tolerance = -1;
  // A minimum set whose removal empties the intersection; size tolerance + 1.
  // Empty when at_cap.
  std::vector<Index> breaking_set;
  bool at_cap = false;
};

/// Largest t <= t_max such that removing any t points keeps a common point
/// in all class hulls, by exhaustive enumeration of removal sets in
/// increasing size. Refuses (GuardError) unless total points <= 24 or
/// t_max <= 3, or override_guard is set.
ToleranceResult tolerance_exact(const ColoredPartition& p, int t_max, bool override_guard = false);

struct SeparabilityOptions {
  bool homogeneous = false;  // hyperplanes through the origin only
  bool override_guard = false;
};

struct RemovalResult {
  Index count = 0;
  std::vector<Index> removed;  // dataset row indices
};

/// Exact minimum number of rows to drop so the two labels become strictly
/// separable. d = 1 uses a threshold sweep; d >= 2 enumerates hyperplanes
/// through d points (d - 1 points plus the origin when homogeneous), both
/// orientations, with on-plane points treated as movable to either side.
RemovalResult min_removals_to_separable(const LabeledDataset& ds, const SeparabilityOptions& opts = {});

/// Same quantity by enumerating removal subsets in increasing size, each
/// decided by an LP. Refuses n > 14 without override.
RemovalResult min_removals_brute_force(const LabeledDataset& ds, const SeparabilityOptions& opts = {});

/// Exact d = 1 threshold sweep (affine).
RemovalResult min_removals_sweep_1d(const LabeledDataset& ds);

struct CondNumberReport {
  Index n = 0;
  Index min_removals = 0;
  double pertsep0 = 0.0;  // min_removals / n
  std::vector<Index> removal_set;
  std::optional<int> tolerance;              // tolerance_exact of the induced partition
  std::optional<bool> removal_equivalence;   // min_removals == tolerance + 1
  std::optional<double> degnsep;             // exact, d <= 2 only
};

CondNumberReport pertsep0(const LabeledDataset& ds, const SeparabilityOptions& opts = {});

/// (1/n) sum_i [y_i beta'x_i]^-, with label 1 -> y = -1 and label 2 -> y = +1.
double degnsep_objective(const LabeledDataset& ds, const Point& beta);

/// Exact minimum of degnsep_objective over the unit sphere for d in {1, 2}.
double degnsep_exact_low_dim(const LabeledDataset& ds);

struct DegnsepEstimate {
  double value = 0.0;  // an upper bound on DegNSEP*
  Index directions = 0;
  Point best_direction;
};

DegnsepEstimate degnsep_sampled(const LabeledDataset& ds, Index directions, std::uint64_t seed);

/// True iff some beta != 0 has y_i beta'x_i >= 0 for all rows.
bool weakly_separable_through_origin(const LabeledDataset& ds);

/// Splits each class into floor(n_i / group_size) consecutive groups
/// (group_size defaults to 2d) and counts groups whose hull contains the
/// candidate. Returns (min count) - 1, a certified lower bound on the
/// tolerance, or nullopt when some class has no such group.
std::optional<int> tolerance_certificate_grouped(const ColoredPartition& p, const Point& candidate,
                                                 Index group_size = 0);

/// Two-class variant: splits the union into floor(k / group_size) groups
/// (group_size defaults to 2d + 2) and counts groups that are themselves
/// Radon partitions. Returns count - 1 or nullopt.
std::optional<int> radon_tolerance_certificate(const ColoredPartition& p, Index group_size = 0);

}  // namespace tverberg
