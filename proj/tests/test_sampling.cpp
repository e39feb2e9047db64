#include "tverberg/geometry.hpp"
#include "tverberg/sampling.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace tverberg {
namespace {

ModelSpec equi(Index m, Index n, Index d, DistributionKind kind = DistributionKind::StandardGaussian,
               std::uint64_t seed = 1) {
  ModelSpec s;
  s.model = PartitionModel::Equipartition;
  s.colors = m;
  s.per_color = n;
  s.dist.kind = kind;
  s.dist.dim = d;
  s.seed = seed;
  return s;
}

ModelSpec alloc(Index m, Index k, Index d, std::uint64_t seed = 1) {
  ModelSpec s;
  s.model = PartitionModel::Allocation;
  s.colors = m;
  s.total = k;
  s.dist.dim = d;
  s.seed = seed;
  return s;
}

const DistributionKind kAllKinds[] = {DistributionKind::StandardGaussian, DistributionKind::UniformBall,
                                      DistributionKind::UniformSphere, DistributionKind::UniformCube,
                                      DistributionKind::SymmetricTwoGaussianMixture};

TEST(Equipartition, SizesAndDeterminism) {
  const auto p = sample_equipartition(equi(3, 4, 2));
  ASSERT_EQ(p.class_count(), 3);
  for (const auto& c : p.classes) {
    EXPECT_EQ(c.rows(), 2);
    EXPECT_EQ(c.cols(), 4);
  }
  for (auto kind : kAllKinds) {
    const auto a = sample_equipartition(equi(3, 5, 3, kind, 99));
    const auto b = sample_equipartition(equi(3, 5, 3, kind, 99));
    const auto c = sample_equipartition(equi(3, 5, 3, kind, 100));
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(a.classes[i], b.classes[i]);
      EXPECT_NE(a.classes[i], c.classes[i]);
    }
  }
}

TEST(Equipartition, GaussianMeanNearOrigin) {
  const auto p = sample_equipartition(equi(1, 100000, 2));
  const Point mean = p.classes[0].rowwise().mean();
  EXPECT_LT(mean.cwiseAbs().maxCoeff(), 0.02);
}

TEST(Equipartition, TranslatedCenter) {
  auto spec = equi(1, 50000, 2, DistributionKind::UniformCube);
  spec.dist.center = Point::Constant(2, 5.0);
  const auto p = sample_equipartition(spec);
  const Point mean = p.classes[0].rowwise().mean();
  EXPECT_NEAR(mean(0), 5.0, 0.02);
  EXPECT_NEAR(mean(1), 5.0, 0.02);
  EXPECT_LE(p.classes[0].maxCoeff(), 6.0);
  EXPECT_GE(p.classes[0].minCoeff(), 4.0);
}

TEST(Distributions, SupportContracts) {
  for (Index d : {1, 2, 5}) {
    const PointSet sphere = draw_points({DistributionKind::UniformSphere, d, {}}, 3, 0, 2000);
    const PointSet ball = draw_points({DistributionKind::UniformBall, d, {}}, 3, 0, 2000);
    const PointSet cube = draw_points({DistributionKind::UniformCube, d, {}}, 3, 0, 2000);
    for (Index j = 0; j < 2000; ++j) {
      EXPECT_NEAR(sphere.col(j).norm(), 1.0, 1e-12);
      EXPECT_LE(ball.col(j).norm(), 1.0);
      EXPECT_LE(cube.col(j).cwiseAbs().maxCoeff(), 1.0);
    }
  }
}

TEST(Distributions, SignBalanceForProductSymmetricKinds) {
  const int draws = 100000;
  const double sigma = std::sqrt(0.25 / draws);
  for (auto kind : {DistributionKind::StandardGaussian, DistributionKind::UniformCube}) {
    const PointSet x = draw_points({kind, 3, {}}, 17, 0, draws);
    for (Index k = 0; k < 3; ++k) {
      const double pos = static_cast<double>((x.row(k).array() > 0.0).count()) / draws;
      EXPECT_NEAR(pos, 0.5, 3 * sigma) << to_string(kind) << " coordinate " << k;
    }
  }
}

TEST(Distributions, CentralSymmetryOfEveryKind) {
  // Mass on each side of a fixed hyperplane through the center is one half.
  const int draws = 100000;
  for (auto kind : kAllKinds) {
    const PointSet x = draw_points({kind, 2, {}}, 5, 0, draws);
    Point u(2);
    u << 0.6, 0.8;
    const double pos = static_cast<double>(((u.transpose() * x).array() > 0.0).count()) / draws;
    EXPECT_NEAR(pos, 0.5, 4 * std::sqrt(0.25 / draws)) << to_string(kind);
  }
}

TEST(Distributions, RangesConcatenate) {
  const BalancedDistribution dist{DistributionKind::UniformBall, 3, {}};
  const PointSet whole = draw_points(dist, 42, 0, 30);
  PointSet parts(3, 30);
  parts << draw_points(dist, 42, 0, 7), draw_points(dist, 42, 7, 16), draw_points(dist, 42, 23, 7);
  EXPECT_EQ(whole, parts);
}

TEST(Distributions, NamesRoundTrip) {
  for (auto kind : kAllKinds) EXPECT_EQ(distribution_from_string(to_string(kind)), kind);
  EXPECT_THROW(distribution_from_string("cauchy"), InputError);
  EXPECT_EQ(partition_model_from_string("allocation"), PartitionModel::Allocation);
  EXPECT_THROW(partition_model_from_string("random"), InputError);
}

TEST(Allocation, SizesAndDeterminism) {
  const auto one = sample_allocation(alloc(1, 25, 2));
  ASSERT_EQ(one.class_count(), 1);
  EXPECT_EQ(one.classes[0].cols(), 25);

  const auto a = sample_allocation(alloc(4, 50, 2, 8));
  const auto b = sample_allocation(alloc(4, 50, 2, 8));
  EXPECT_EQ(a.total_size(), 50);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(a.classes[i], b.classes[i]);
}

TEST(Allocation, TwoColorBalance) {
  const Index k = 100000;
  const auto p = sample_allocation(alloc(2, k, 1));
  const double dev = std::abs(static_cast<double>(p.classes[0].cols()) - k / 2.0);
  EXPECT_LE(dev, 3 * std::sqrt(k / 4.0));
}

TEST(Allocation, ColorMarginalsPassChiSquare) {
  // 0.999 quantiles of chi-square with m - 1 degrees of freedom.
  const double q999[] = {0.0, 10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322};
  const Index k = 100000;
  for (Index m = 2; m <= 8; ++m) {
    std::vector<double> counts(static_cast<std::size_t>(m), 0.0);
    for (Index i = 0; i < k; ++i) counts[static_cast<std::size_t>(draw_color(m, 1234 + m, i))] += 1.0;
    const double expected = static_cast<double>(k) / m;
    double chi = 0.0;
    for (double c : counts) chi += (c - expected) * (c - expected) / expected;
    EXPECT_LT(chi, q999[m - 1]) << "m=" << m;
  }
}

TEST(Allocation, EmptyColorsAllowed) {
  int with_empty = 0;
  for (std::uint64_t s = 0; s < 50; ++s) with_empty += sample_allocation(alloc(6, 6, 2, s)).has_empty_class();
  EXPECT_GT(with_empty, 40);
}

TEST(ModelValidation, RejectsBadSpecs) {
  EXPECT_THROW(sample_equipartition(equi(0, 3, 2)), InputError);
  EXPECT_THROW(sample_equipartition(equi(2, 0, 2)), InputError);
  EXPECT_THROW(sample_equipartition(equi(2, 3, 0)), InputError);
  EXPECT_THROW(sample_allocation(alloc(5, 4, 2)), InputError);
  EXPECT_THROW(sample_equipartition(alloc(2, 4, 2)), InputError);
  auto bad_center = equi(2, 3, 2);
  bad_center.dist.center = Point::Zero(3);
  EXPECT_THROW(sample_equipartition(bad_center), InputError);
}

TEST(SphereProjection, OneDimensionalExample) {
  ColoredPartition p(1, {testing::from_rows(1, {-2, 3})});
  const auto q = sphere_projection(p, Point::Zero(1));
  EXPECT_EQ(q.classes[0](0, 0), -1.0);
  EXPECT_EQ(q.classes[0](0, 1), 1.0);
  ColoredPartition at_center(1, {testing::from_rows(1, {0, 3})});
  EXPECT_THROW(sphere_projection(at_center, Point::Zero(1)), InputError);
}

TEST(SphereProjection, PreservesCenterContainmentAndIsIdempotent) {
  testing::Rng rng(8);
  int contained = 0;
  for (int it = 0; it < 200; ++it) {
    const Index d = 1 + it % 3;
    const Point center = testing::gaussian_cloud(rng, d, 1).col(0);
    ColoredPartition p(d, {testing::gaussian_cloud(rng, d, 2 + it % 6), testing::gaussian_cloud(rng, d, 3)});
    for (auto& c : p.classes) c.colwise() += center;
    const auto q = sphere_projection(p, center);
    for (std::size_t i = 0; i < 2; ++i) {
      const bool before = hull_contains(p.classes[i], center).has_value();
      EXPECT_EQ(before, hull_contains(q.classes[i], center).has_value()) << "instance " << it;
      contained += before;
    }
    const auto twice = sphere_projection(q, center);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(twice.classes[i].isApprox(q.classes[i], 1e-14));
  }
  EXPECT_GT(contained, 20);
}

TEST(StreamKey, DistinctStreams) {
  std::set<std::uint64_t> keys;
  for (std::uint64_t s = 0; s < 20; ++s)
    for (std::uint64_t a = 0; a < 20; ++a)
      for (std::uint64_t b = 0; b < 4; ++b) keys.insert(stream_key(s, a, b));
  EXPECT_EQ(keys.size(), 20u * 20u * 4u);
}

}  // namespace
}  // namespace tverberg
