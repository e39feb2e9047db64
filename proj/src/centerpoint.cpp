#include "tverberg/centerpoint.hpp"

#include "tverberg/geometry.hpp"
#include "tverberg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace tverberg {

namespace {

constexpr Index kMaxMeasuredDim = 4;

std::optional<CenterpointResult> try_coloring(const PointSet& s, Index m,
                                              const std::vector<Index>& color) {
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(m));
  for (Index i = 0; i < s.cols(); ++i) members[color[i]].push_back(i);
  ColoredPartition p;
  p.dim = s.rows();
  for (const auto& idx : members) {
    if (idx.empty()) return std::nullopt;
    PointSet cls(s.rows(), static_cast<Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) cls.col(static_cast<Index>(j)) = s.col(idx[j]);
    p.classes.push_back(std::move(cls));
  }
  auto witness = hulls_common_point(p);
  if (!witness || !verify_witness(p, *witness, feasibility_tolerance<double>())) return std::nullopt;
  CenterpointResult r;
  r.point = witness->point;
  r.certified_depth = m;
  return r;
}

template <typename Colorer>
std::optional<CenterpointResult> run(const PointSet& s, Index m, int retries, std::uint64_t seed,
                                     bool measure_depth, CenterpointMethod method, Colorer colorer) {
  if (s.rows() < 1 || s.cols() == 0) throw InputError("centerpoint: empty point set");
  if (!s.allFinite()) throw InputError("centerpoint: non-finite coordinate");
  if (m < 1) throw InputError("centerpoint: m must be >= 1");
  if (s.cols() < m) throw InputError("centerpoint: fewer points than colors");
  if (retries < 1) throw InputError("centerpoint: retries must be >= 1");
  for (int r = 0; r < retries; ++r) {
    SplitMix64 rng(stream_key(seed, static_cast<std::uint64_t>(r)));
    auto res = try_coloring(s, m, colorer(rng));
    if (!res) continue;
    res->attempts = r + 1;
    res->method = method;
    if (measure_depth) res->measured_depth = measured_tukey_depth(res->point, s);
    return res;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(CenterpointMethod m) {
  return m == CenterpointMethod::Equipartition ? "equipartition" : "allocation";
}

std::optional<Index> measured_tukey_depth(const Point& q, const PointSet& s) {
  if (s.rows() <= 2) return tukey_depth_sweep(q, s);
  if (s.rows() <= kMaxMeasuredDim) return tukey_depth(q, s);
  return std::nullopt;
}

std::optional<CenterpointResult> centerpoint_equipartition(const PointSet& s, Index m, int retries,
                                                           std::uint64_t seed, bool measure_depth) {
  const Index n = s.cols();
  return run(s, m, retries, seed, measure_depth, CenterpointMethod::Equipartition, [&](SplitMix64& rng) {
    // Shuffled round-robin: class sizes are floor(n/m) or ceil(n/m).
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Index> color(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) color[order[i]] = i % m;
    return color;
  });
}

std::optional<CenterpointResult> centerpoint_allocation(const PointSet& s, Index m, int retries,
                                                        std::uint64_t seed, bool measure_depth) {
  const Index n = s.cols();
  return run(s, m, retries, seed, measure_depth, CenterpointMethod::Allocation, [&](SplitMix64& rng) {
    std::uniform_int_distribution<Index> pick(0, m - 1);
    std::vector<Index> color(static_cast<std::size_t>(n));
    for (auto& c : color) c = pick(rng);
    return color;
  });
}

Index suggest_colors(Index n_points, Index d, double eps0) {
  if (n_points < 1) throw InputError("suggest_colors: n_points must be >= 1");
  if (d < 1) throw InputError("suggest_colors: d must be >= 1");
  if (!(eps0 >= 0.0) || !std::isfinite(eps0)) throw InputError("suggest_colors: eps0 must be finite and >= 0");
  Index best = 1;
  for (Index m = 1; m <= n_points; ++m) {
    const auto need = static_cast<Index>(std::ceil((1.0 + eps0) * std::log2(static_cast<double>(m)) - 1e-12));
    if (n_points / m >= need) best = m;
  }
  return best;
}

}  // namespace tverberg
