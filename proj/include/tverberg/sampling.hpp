#pragma once

// Random equi-partitions and random allocations over centrally symmetric
// distributions.
//
// Randomness is counter-based: every point draws from its own generator
// keyed by (seed, point index), so any index range can be produced
// independently and concatenated ranges reproduce serial output exactly.

#include "tverberg/types.hpp"

#include <cstdint>
#include <limits>
#include <string>

namespace tverberg {

/// SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Mixes a base seed with a stream identifier into a fresh 64-bit key.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

enum class DistributionKind {
  StandardGaussian,
  UniformBall,
  UniformSphere,
  UniformCube,
  SymmetricTwoGaussianMixture,
};

std::string to_string(DistributionKind k);
DistributionKind distribution_from_string(const std::string& s);

struct BalancedDistribution {
  DistributionKind kind = DistributionKind::StandardGaussian;
  Index dim = 2;
  Point center;  // empty means the origin

  /// Coordinate signs about the center are independent fair coins.
  bool product_symmetric() const {
    return kind == DistributionKind::StandardGaussian || kind == DistributionKind::UniformCube;
  }
  Point center_or_origin() const { return center.size() == dim ? center : Point(Point::Zero(dim)); }
  void validate() const;
};

enum class PartitionModel { Equipartition, Allocation };

std::string to_string(PartitionModel m);
PartitionModel partition_model_from_string(const std::string& s);

struct ModelSpec {
  PartitionModel model = PartitionModel::Equipartition;
  Index colors = 2;      // m
  Index per_color = 1;   // n (equipartition)
  Index total = 0;       // k (allocation)
  BalancedDistribution dist;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draws points [first, first + count) of the stream keyed by seed.
PointSet draw_points(const BalancedDistribution& dist, std::uint64_t seed, Index first, Index count);

/// Uniform color in [0, m) for point index i of the stream keyed by seed.
Index draw_color(Index m, std::uint64_t seed, Index i);

ColoredPartition sample_equipartition(const ModelSpec& spec);
ColoredPartition sample_allocation(const ModelSpec& spec);
ColoredPartition sample_partition(const ModelSpec& spec);

/// Replaces each point p by center + (p - center) / |p - center|.
ColoredPartition sphere_projection(const ColoredPartition& p, const Point& center);

}  // namespace tverberg
