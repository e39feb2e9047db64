#pragma once

// Seeded Monte Carlo estimates of partition events, bound-sandwich
// experiments, threshold sweeps and PertSEP*_0 convergence.
//
// Trial i samples from the model with seed stream_key(seed, i), so results
// do not depend on how trials are distributed over worker threads.

#include "tverberg/formulas.hpp"
#include "tverberg/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tverberg {

enum class EventKind {
  Tverberg,           // all class hulls share a point
  CenterTverberg,     // the distribution center lies in every class hull
  TverbergTolerance,  // tolerance >= t
  Radon,              // two classes, hulls intersect
  RadonTolerance,     // two classes, tolerance >= t
  BoxTverberg,        // all class bounding boxes share a point
  PairwiseMle,        // every pair of class hulls intersects
};

struct EventSpec {
  EventKind kind = EventKind::Tverberg;
  int t = 0;  // tolerance events only

  std::string id() const;
};

std::string to_string(EventKind k);
EventKind event_from_string(const std::string& s);

struct TrialEstimate {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  std::string event_id;
  std::int64_t empty_class_trials = 0;  // allocation trials with an empty color

  double half_width() const { return 0.5 * (ci_high - ci_low); }
};

/// 95% Wilson score interval.
void wilson_interval(std::int64_t successes, std::int64_t trials, double& low, double& high);

struct RunOptions {
  unsigned threads = 1;
  bool override_guards = false;
};

/// Evaluates the event on one sampled partition. Empty classes make every
/// event false.
bool event_occurs(const ColoredPartition& p, const EventSpec& event, const Point& center,
                  bool override_guards = false);

TrialEstimate estimate_event(const ModelSpec& spec, const EventSpec& event, std::int64_t trials,
                             std::uint64_t seed, const RunOptions& opts = {});

struct SweepRow {
  std::int64_t m = 0;
  std::int64_t n = 0;  // per color (equipartition) or 0
  std::int64_t k = 0;  // total points (allocation) or m * n
  std::int64_t d = 0;
  std::int64_t t = 0;
  double c = 0.0;      // threshold sweeps only
  TrialEstimate est;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  bool violation = false;  // CI misses [lower, upper]
};

struct GridCell {
  std::int64_t m = 2;
  std::int64_t n = 3;
  std::int64_t d = 2;
};

/// Tverberg estimate per cell with the equipartition lower bound and, for
/// product-symmetric distributions, the upper bound. A row is a violation
/// when estimate + hw < lower or estimate - hw > upper.
std::vector<SweepRow> sandwich_experiment(const std::vector<GridCell>& grid, DistributionKind dist,
                                          std::int64_t trials, std::uint64_t seed,
                                          const RunOptions& opts = {});

/// n = max(1, ceil(c log2 m)) per color, or k = max(m, ceil(c m log2(m) ln ln m))
/// total points for allocations.
std::vector<SweepRow> threshold_sweep(std::int64_t d, const std::vector<std::int64_t>& m_list,
                                      const std::vector<double>& c_list, DistributionKind dist,
                                      std::int64_t trials, std::uint64_t seed, PartitionModel model,
                                      const RunOptions& opts = {});

struct PertsepRow {
  std::int64_t m = 0;
  std::int64_t k = 0;
  std::int64_t d = 0;
  std::int64_t trials = 0;
  double mean = 0.0;
  double p5 = 0.0;  // nearest-rank 5th percentile
  double min = 0.0;
  double max = 0.0;
};

/// Min over color pairs of pertsep0 on random allocations of k points. A
/// pair with an empty color scores 0.
double min_pairwise_pertsep0(const ColoredPartition& p, bool override_guards = false);

std::vector<PertsepRow> pertsep_convergence(std::int64_t m, std::int64_t d,
                                            const std::vector<std::int64_t>& k_list,
                                            DistributionKind dist, std::int64_t trials,
                                            std::uint64_t seed, const RunOptions& opts = {});

}  // namespace tverberg
