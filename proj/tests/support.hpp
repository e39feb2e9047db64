#pragma once

// Test-only generators and oracles. Nothing here calls into the library's
// LP code or its random streams.

#include "tverberg/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace tverberg::testing {

using Rng = std::mt19937_64;

inline PointSet gaussian_cloud(Rng& rng, Index d, Index n, double shift = 0.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  PointSet s(d, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < d; ++k) s(k, j) = g(rng) + (k == 0 ? shift : 0.0);
  return s;
}

inline PointSet uniform_cloud(Rng& rng, Index d, Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  PointSet s(d, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < d; ++k) s(k, j) = u(rng);
  return s;
}

inline PointSet from_rows(Index d, std::initializer_list<double> coords) {
  const auto n = static_cast<Index>(coords.size()) / d;
  PointSet s(d, n);
  auto it = coords.begin();
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < d; ++k) s(k, j) = *it++;
  return s;
}

inline LabeledDataset dataset_1d(const std::vector<double>& a, const std::vector<double>& b) {
  LabeledDataset ds;
  ds.points.resize(1, static_cast<Index>(a.size() + b.size()));
  Index j = 0;
  for (double v : a) {
    ds.points(0, j++) = v;
    ds.labels.push_back(1);
  }
  for (double v : b) {
    ds.points(0, j++) = v;
    ds.labels.push_back(2);
  }
  ds.label_names = {"1", "2"};
  return ds;
}

// Convex polygon given counter-clockwise; returns half-planes a.x <= c.
struct HalfPlane {
  double a0, a1, c;
};

inline std::vector<HalfPlane> polygon_halfplanes(const PointSet& ccw) {
  std::vector<HalfPlane> out;
  const Index n = ccw.cols();
  for (Index i = 0; i < n; ++i) {
    const double x0 = ccw(0, i), y0 = ccw(1, i);
    const double x1 = ccw(0, (i + 1) % n), y1 = ccw(1, (i + 1) % n);
    // Interior lies to the left of each directed edge.
    const double a0 = y1 - y0, a1 = x0 - x1;
    out.push_back({a0, a1, a0 * x0 + a1 * y0});
  }
  return out;
}

/// Nonempty intersection of bounded polygons iff some pairwise crossing of
/// boundary lines (or some polygon vertex) satisfies every half-plane.
inline bool halfplanes_intersect(const std::vector<HalfPlane>& hp, const std::vector<PointSet>& polys,
                                 double tol = 1e-9) {
  auto inside = [&](double x, double y) {
    for (const auto& h : hp)
      if (h.a0 * x + h.a1 * y > h.c + tol) return false;
    return true;
  };
  for (const auto& p : polys)
    for (Index j = 0; j < p.cols(); ++j)
      if (inside(p(0, j), p(1, j))) return true;
  for (std::size_t i = 0; i < hp.size(); ++i)
    for (std::size_t j = i + 1; j < hp.size(); ++j) {
      const double det = hp[i].a0 * hp[j].a1 - hp[i].a1 * hp[j].a0;
      if (std::abs(det) < 1e-14) continue;
      const double x = (hp[i].c * hp[j].a1 - hp[i].a1 * hp[j].c) / det;
      const double y = (hp[i].a0 * hp[j].c - hp[i].c * hp[j].a0) / det;
      if (inside(x, y)) return true;
    }
  return false;
}

/// Andrew's monotone chain; counter-clockwise hull vertices, collinear
/// points dropped.
inline PointSet planar_hull(const PointSet& s) {
  std::vector<std::pair<double, double>> p;
  for (Index j = 0; j < s.cols(); ++j) p.emplace_back(s(0, j), s(1, j));
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) {
    PointSet out(2, static_cast<Index>(p.size()));
    for (std::size_t j = 0; j < p.size(); ++j) out.col(static_cast<Index>(j)) << p[j].first, p[j].second;
    return out;
  }
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  PointSet out(2, static_cast<Index>(h.size()));
  for (std::size_t j = 0; j < h.size(); ++j) out.col(static_cast<Index>(j)) << h[j].first, h[j].second;
  return out;
}

/// Half-planes describing conv(s) for any planar point set, including the
/// point and segment cases.
inline std::vector<HalfPlane> hull_halfplanes(const PointSet& hull) {
  if (hull.cols() >= 3) return polygon_halfplanes(hull);
  std::vector<HalfPlane> out;
  if (hull.cols() == 1) {
    const double x = hull(0, 0), y = hull(1, 0);
    out = {{1, 0, x}, {-1, 0, -x}, {0, 1, y}, {0, -1, -y}};
    return out;
  }
  const double x0 = hull(0, 0), y0 = hull(1, 0), x1 = hull(0, 1), y1 = hull(1, 1);
  const double nx = y1 - y0, ny = x0 - x1;
  out.push_back({nx, ny, nx * x0 + ny * y0});
  out.push_back({-nx, -ny, -(nx * x0 + ny * y0)});
  out.push_back({x1 - x0, y1 - y0, (x1 - x0) * x1 + (y1 - y0) * y1});
  out.push_back({x0 - x1, y0 - y1, (x0 - x1) * x0 + (y0 - y1) * y0});
  return out;
}

/// Whether the hulls of planar classes share a point, by half-plane
/// arithmetic only.
inline bool planar_hulls_meet(const std::vector<PointSet>& classes) {
  std::vector<HalfPlane> hp;
  std::vector<PointSet> hulls;
  for (const auto& c : classes) {
    if (c.cols() == 0) return false;
    hulls.push_back(planar_hull(c));
    for (const auto& h : hull_halfplanes(hulls.back())) hp.push_back(h);
  }
  return halfplanes_intersect(hp, hulls);
}

/// Counter-clockwise triangle with vertices at the given angles (degrees).
inline PointSet triangle(double radius, double a0, double a1, double a2, double cx = 0.0, double cy = 0.0) {
  PointSet t(2, 3);
  const double deg = std::numbers::pi / 180.0;
  const double angles[3] = {a0, a1, a2};
  for (Index j = 0; j < 3; ++j) {
    t(0, j) = cx + radius * std::cos(angles[j] * deg);
    t(1, j) = cy + radius * std::sin(angles[j] * deg);
  }
  return t;
}

/// Tukey depth in the plane by brute force over many equally spaced
/// directions; exact whenever no critical direction is hit exactly.
inline Index planar_depth_dense(const Point& q, const PointSet& s, int directions = 200000) {
  Index best = s.cols();
  for (int i = 0; i < directions; ++i) {
    const double th = 2.0 * std::numbers::pi * (i + 0.5) / directions;
    const double ux = std::cos(th), uy = std::sin(th);
    Index c = 0;
    for (Index j = 0; j < s.cols(); ++j)
      if ((s(0, j) - q(0)) * ux + (s(1, j) - q(1)) * uy >= 0) ++c;
    best = std::min(best, c);
  }
  return best;
}

/// All subsets of {0..n-1} of size k in lexicographic order.
inline void subsets(int n, int k, std::vector<int>& cur, int start, const auto& fn) {
  if (static_cast<int>(cur.size()) == k) {
    fn(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, cur, i + 1, fn);
    cur.pop_back();
  }
}

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace tverberg::testing
