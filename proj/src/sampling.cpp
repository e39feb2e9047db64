#include "tverberg/sampling.hpp"

#include <cmath>
#include <random>

namespace tverberg {

namespace {

constexpr std::uint64_t kPointStream = 0;
constexpr std::uint64_t kColorStream = 1;

// Offset of the two-component mixture along the first axis.
constexpr double kMixtureOffset = 2.0;

Point draw_gaussian(Index d, SplitMix64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Point x(d);
  for (Index k = 0; k < d; ++k) x(k) = normal(rng);
  return x;
}

Point draw_direction(Index d, SplitMix64& rng) {
  while (true) {
    Point x = draw_gaussian(d, rng);
    const double len = x.norm();
    if (len > 0.0) return x / len;
  }
}

Point draw_one(const BalancedDistribution& dist, SplitMix64& rng) {
  const Index d = dist.dim;
  switch (dist.kind) {
    case DistributionKind::StandardGaussian:
      return draw_gaussian(d, rng);
    case DistributionKind::UniformSphere:
      return draw_direction(d, rng);
    case DistributionKind::UniformBall: {
      Point dir = draw_direction(d, rng);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      return dir * std::pow(unif(rng), 1.0 / static_cast<double>(d));
    }
    case DistributionKind::UniformCube: {
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      Point x(d);
      for (Index k = 0; k < d; ++k) x(k) = unif(rng);
      return x;
    }
    case DistributionKind::SymmetricTwoGaussianMixture: {
      const bool flip = (rng() >> 63) != 0;
      Point x = draw_gaussian(d, rng);
      x(0) += flip ? -kMixtureOffset : kMixtureOffset;
      return x;
    }
  }
  throw InputError("unknown distribution kind");
}

}  // namespace

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  SplitMix64 g1(seed);
  SplitMix64 g2(g1() ^ (a * 0xD1B54A32D192ED03ULL));
  SplitMix64 g3(g2() ^ (b * 0x8CB92BA72F3D8DD7ULL));
  return g3();
}

std::string to_string(DistributionKind k) {
  switch (k) {
    case DistributionKind::StandardGaussian: return "standard_gaussian";
    case DistributionKind::UniformBall: return "uniform_ball";
    case DistributionKind::UniformSphere: return "uniform_sphere";
    case DistributionKind::UniformCube: return "uniform_cube";
    case DistributionKind::SymmetricTwoGaussianMixture: return "symmetric_two_gaussian_mixture";
  }
  return "unknown";
}

DistributionKind distribution_from_string(const std::string& s) {
  if (s == "standard_gaussian" || s == "gaussian") return DistributionKind::StandardGaussian;
  if (s == "uniform_ball" || s == "ball") return DistributionKind::UniformBall;
  if (s == "uniform_sphere" || s == "sphere") return DistributionKind::UniformSphere;
  if (s == "uniform_cube" || s == "cube") return DistributionKind::UniformCube;
  if (s == "symmetric_two_gaussian_mixture" || s == "mixture") return DistributionKind::SymmetricTwoGaussianMixture;
  throw InputError("unknown distribution '" + s + "'");
}

std::string to_string(PartitionModel m) {
  return m == PartitionModel::Equipartition ? "equipartition" : "allocation";
}

PartitionModel partition_model_from_string(const std::string& s) {
  if (s == "equipartition") return PartitionModel::Equipartition;
  if (s == "allocation") return PartitionModel::Allocation;
  throw InputError("unknown partition model '" + s + "'");
}

void BalancedDistribution::validate() const {
  if (dim < 1) throw InputError("distribution dimension must be >= 1");
  if (center.size() != 0 && center.size() != dim) throw InputError("distribution center has wrong dimension");
  if (center.size() != 0 && !center.allFinite()) throw InputError("distribution center must be finite");
}

void ModelSpec::validate() const {
  dist.validate();
  if (colors < 1) throw InputError("model needs at least one color");
  if (model == PartitionModel::Equipartition && per_color < 1)
    throw InputError("equipartition needs n >= 1 points per color");
  if (model == PartitionModel::Allocation && total < colors)
    throw InputError("allocation needs k >= m points");
}

PointSet draw_points(const BalancedDistribution& dist, std::uint64_t seed, Index first, Index count) {
  dist.validate();
  const Point center = dist.center_or_origin();
  PointSet out(dist.dim, count);
  for (Index j = 0; j < count; ++j) {
    SplitMix64 rng(stream_key(seed, kPointStream, static_cast<std::uint64_t>(first + j)));
    out.col(j) = draw_one(dist, rng) + center;
  }
  return out;
}

Index draw_color(Index m, std::uint64_t seed, Index i) {
  SplitMix64 rng(stream_key(seed, kColorStream, static_cast<std::uint64_t>(i)));
  std::uniform_int_distribution<Index> color(0, m - 1);
  return color(rng);
}

ColoredPartition sample_equipartition(const ModelSpec& spec) {
  spec.validate();
  if (spec.model != PartitionModel::Equipartition) throw InputError("spec is not an equipartition model");
  ColoredPartition p;
  p.dim = spec.dist.dim;
  for (Index c = 0; c < spec.colors; ++c)
    p.classes.push_back(draw_points(spec.dist, spec.seed, c * spec.per_color, spec.per_color));
  return p;
}

ColoredPartition sample_allocation(const ModelSpec& spec) {
  spec.validate();
  if (spec.model != PartitionModel::Allocation) throw InputError("spec is not an allocation model");
  const PointSet pts = draw_points(spec.dist, spec.seed, 0, spec.total);
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(spec.colors));
  for (Index i = 0; i < spec.total; ++i) members[draw_color(spec.colors, spec.seed, i)].push_back(i);

  ColoredPartition p;
  p.dim = spec.dist.dim;
  for (const auto& idx : members) {
    PointSet cls(p.dim, static_cast<Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) cls.col(static_cast<Index>(j)) = pts.col(idx[j]);
    p.classes.push_back(std::move(cls));
  }
  return p;
}

ColoredPartition sample_partition(const ModelSpec& spec) {
  return spec.model == PartitionModel::Equipartition ? sample_equipartition(spec) : sample_allocation(spec);
}

ColoredPartition sphere_projection(const ColoredPartition& p, const Point& center) {
  p.validate(false);
  if (center.size() != p.dim) throw InputError("sphere_projection: center has wrong dimension");
  ColoredPartition out = p;
  for (auto& cls : out.classes) {
    for (Index j = 0; j < cls.cols(); ++j) {
      const Point diff = cls.col(j) - center;
      const double len = diff.norm();
      if (!(len > 0.0)) throw InputError("sphere_projection: point coincides with the center");
      cls.col(j) = center + diff / len;
    }
  }
  return out;
}

}  // namespace tverberg
