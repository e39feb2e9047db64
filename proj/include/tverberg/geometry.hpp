#pragma once

// Convex-position primitives: hull membership, common points of several
// hulls, strict separation, box hulls and Tukey depth.
//
// Every LP-backed query first scales its data so that max |coord| = 1 and
// decides feasibility at feasibility_tolerance() in those units. Touching
// hulls count as intersecting.

#include "tverberg/combinatorics.hpp"
#include "tverberg/simplex.hpp"
#include "tverberg/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace tverberg {

namespace detail {

template <typename Scalar>
Scalar positive_scale(Scalar s) {
  return s > Scalar(0) ? s : Scalar(1);
}

template <typename Scalar>
Scalar partition_scale(const ColoredPartitionT<Scalar>& p) {
  Scalar s = 0;
  for (const auto& c : p.classes)
    if (c.size() > 0) s = std::max(s, c.cwiseAbs().maxCoeff());
  return positive_scale(s);
}

template <typename Scalar>
struct HullDistance {
  Scalar gap = 0;            // L-infinity distance from the query to the hull
  VectorT<Scalar> weights;   // convex weights of the nearest hull point
};

/// min_lambda || x - P lambda ||_inf  with lambda in the simplex.
template <typename Scalar>
HullDistance<Scalar> linf_distance_to_hull(const PointSetT<Scalar>& pts, const VectorT<Scalar>& x) {
  const Index d = pts.rows();
  const Index n = pts.cols();
  LinearProgram<Scalar> lp(n + 1);
  const Index s = n;
  lp.set_cost(s, Scalar(1));
  for (Index k = 0; k < d; ++k) {
    const Index up = lp.add_row(RowSense::LessEqual, x(k));
    const Index lo = lp.add_row(RowSense::LessEqual, -x(k));
    for (Index j = 0; j < n; ++j) {
      lp.add_coeff(up, j, pts(k, j));
      lp.add_coeff(lo, j, -pts(k, j));
    }
    lp.add_coeff(up, s, Scalar(-1));
    lp.add_coeff(lo, s, Scalar(-1));
  }
  const Index sum = lp.add_row(RowSense::Equal, Scalar(1));
  for (Index j = 0; j < n; ++j) lp.add_coeff(sum, j, Scalar(1));

  const auto res = lp.solve();
  if (!res.optimal()) throw SolverError("hull distance LP did not reach optimality");
  return {res.x(s), res.x.head(n)};
}

template <typename Scalar>
struct GapSolution {
  Scalar gap = 0;
  VectorT<Scalar> point;
  std::vector<VectorT<Scalar>> weights;  // aligned with the subset
};

/// min_x max_{i in subset} dist_inf(x, conv(classes[i])), as one LP over
/// (x, s, lambda_1, ..., lambda_|subset|).
template <typename Scalar>
GapSolution<Scalar> min_max_hull_gap(const std::vector<PointSetT<Scalar>>& classes,
                                     const std::vector<Index>& subset) {
  const Index d = classes[static_cast<std::size_t>(subset.front())].rows();
  Index nvars = d + 1;
  std::vector<Index> offset;
  for (Index i : subset) {
    offset.push_back(nvars);
    nvars += classes[static_cast<std::size_t>(i)].cols();
  }
  LinearProgram<Scalar> lp(nvars);
  for (Index k = 0; k < d; ++k) lp.set_free(k);
  const Index s = d;
  lp.set_cost(s, Scalar(1));
  for (std::size_t c = 0; c < subset.size(); ++c) {
    const auto& pts = classes[static_cast<std::size_t>(subset[c])];
    for (Index k = 0; k < d; ++k) {
      const Index up = lp.add_row(RowSense::LessEqual, Scalar(0));
      const Index lo = lp.add_row(RowSense::LessEqual, Scalar(0));
      lp.add_coeff(up, k, Scalar(1));
      lp.add_coeff(lo, k, Scalar(-1));
      lp.add_coeff(up, s, Scalar(-1));
      lp.add_coeff(lo, s, Scalar(-1));
      for (Index j = 0; j < pts.cols(); ++j) {
        lp.add_coeff(up, offset[c] + j, -pts(k, j));
        lp.add_coeff(lo, offset[c] + j, pts(k, j));
      }
    }
    const Index sum = lp.add_row(RowSense::Equal, Scalar(1));
    for (Index j = 0; j < pts.cols(); ++j) lp.add_coeff(sum, offset[c] + j, Scalar(1));
  }

  const auto res = lp.solve();
  if (!res.optimal()) throw SolverError("hull intersection LP did not reach optimality");
  GapSolution<Scalar> out;
  out.gap = res.x(s);
  out.point = res.x.head(d);
  for (std::size_t c = 0; c < subset.size(); ++c)
    out.weights.push_back(
        res.x.segment(offset[c], classes[static_cast<std::size_t>(subset[c])].cols()));
  return out;
}

template <typename Scalar>
VectorT<Scalar> clean_weights(VectorT<Scalar> w) {
  w = w.cwiseMax(Scalar(0));
  const Scalar total = w.sum();
  if (total > Scalar(0)) w /= total;
  return w;
}

/// Number of classes solved jointly before switching to constraint generation.
inline constexpr Index kJointClassLimit = 8;

}  // namespace detail

/// Decides q in conv(set). On success returns convex weights reproducing q.
template <typename Derived, typename DerivedQ>
std::optional<VectorT<typename Derived::Scalar>> hull_contains(const Eigen::MatrixBase<Derived>& set,
                                                               const Eigen::MatrixBase<DerivedQ>& q) {
  using Scalar = typename Derived::Scalar;
  if (set.cols() == 0) throw InputError("hull_contains: empty point set");
  if (set.rows() != q.size()) throw InputError("hull_contains: dimension mismatch");
  if (!set.allFinite() || !q.allFinite()) throw InputError("hull_contains: non-finite coordinate");

  for (Index j = 0; j < set.cols(); ++j) {
    if ((set.col(j) - q).cwiseAbs().maxCoeff() == Scalar(0)) {
      VectorT<Scalar> w = VectorT<Scalar>::Zero(set.cols());
      w(j) = Scalar(1);
      return w;
    }
  }
  const Scalar scale =
      detail::positive_scale(std::max(set.cwiseAbs().maxCoeff(), q.cwiseAbs().maxCoeff()));
  const PointSetT<Scalar> pts = set / scale;
  const VectorT<Scalar> x = q / scale;
  const auto dist = detail::linf_distance_to_hull(pts, x);
  if (dist.gap > feasibility_tolerance<Scalar>()) return std::nullopt;
  return detail::clean_weights<Scalar>(dist.weights);
}

/// Minimum over x of the largest L-infinity distance from x to a class hull,
/// in the scaled units used for feasibility decisions. Zero iff the hulls
/// share a point; for two classes it is half their L-infinity distance.
template <typename Scalar>
Scalar hulls_gap(const ColoredPartitionT<Scalar>& p) {
  p.validate();
  const Scalar scale = detail::partition_scale(p);
  std::vector<PointSetT<Scalar>> cls;
  for (const auto& c : p.classes) cls.push_back(c / scale);
  std::vector<Index> all(cls.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Index>(i);
  return detail::min_max_hull_gap(cls, all).gap;
}

/// Returns a point of the intersection of all class hulls, with per-class
/// convex weights, or nullopt when the intersection is empty.
///
/// Small partitions are solved as one LP. Larger ones use constraint
/// generation over classes: solve the joint LP on a working set, then add
/// the classes whose hulls are farthest from the current point. The working
/// set only grows, so this ends after at most m rounds with the same answer
/// as the joint program.
template <typename Scalar>
std::optional<HullWitnessT<Scalar>> hulls_common_point(const ColoredPartitionT<Scalar>& p) {
  p.validate();
  const Scalar tol = feasibility_tolerance<Scalar>();
  const Scalar scale = detail::partition_scale(p);
  const Index m = p.class_count();
  std::vector<PointSetT<Scalar>> cls;
  cls.reserve(static_cast<std::size_t>(m));
  for (const auto& c : p.classes) cls.push_back(c / scale);

  // Hulls lie in their bounding boxes; boxes apart by more than 2 tol in a
  // coordinate force an L-infinity gap above tol.
  for (Index k = 0; k < p.dim; ++k) {
    Scalar lo = -std::numeric_limits<Scalar>::infinity();
    Scalar hi = std::numeric_limits<Scalar>::infinity();
    for (const auto& c : cls) {
      lo = std::max(lo, c.row(k).minCoeff());
      hi = std::min(hi, c.row(k).maxCoeff());
    }
    if (lo - hi > 2 * tol) return std::nullopt;
  }

  std::vector<Index> working;
  std::vector<bool> in_working(static_cast<std::size_t>(m), false);
  const Index initial = m <= detail::kJointClassLimit ? m : std::min(m, p.dim + 1);
  for (Index i = 0; i < initial; ++i) {
    working.push_back(i);
    in_working[i] = true;
  }

  while (true) {
    auto sol = detail::min_max_hull_gap(cls, working);
    if (sol.gap > tol) return std::nullopt;

    std::vector<VectorT<Scalar>> weights(static_cast<std::size_t>(m));
    for (std::size_t c = 0; c < working.size(); ++c)
      weights[static_cast<std::size_t>(working[c])] = std::move(sol.weights[c]);

    std::vector<std::pair<Scalar, Index>> violators;
    for (Index i = 0; i < m; ++i) {
      if (in_working[i]) continue;
      auto dist = detail::linf_distance_to_hull(cls[i], sol.point);
      if (dist.gap > tol)
        violators.emplace_back(dist.gap, i);
      else
        weights[i] = std::move(dist.weights);
    }
    if (violators.empty()) {
      HullWitnessT<Scalar> w;
      w.point = sol.point * scale;
      for (auto& v : weights) w.weights.push_back(detail::clean_weights<Scalar>(std::move(v)));
      return w;
    }
    std::sort(violators.begin(), violators.end(),
              [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    const std::size_t add = std::min<std::size_t>(violators.size(), static_cast<std::size_t>(p.dim + 1));
    for (std::size_t v = 0; v < add; ++v) {
      working.push_back(violators[v].second);
      in_working[violators[v].second] = true;
    }
    std::sort(working.begin(), working.end());
  }
}

/// Re-checks a witness by direct arithmetic: weights nonnegative and summing
/// to one, and every class combination within tol of the witness point
/// (distances measured in the partition's scaled units).
template <typename Scalar>
bool verify_witness(const ColoredPartitionT<Scalar>& p, const HullWitnessT<Scalar>& w,
                    Scalar tol = feasibility_tolerance<Scalar>()) {
  if (static_cast<Index>(w.weights.size()) != p.class_count()) return false;
  if (w.point.size() != p.dim) return false;
  const Scalar scale = detail::partition_scale(p);
  for (Index i = 0; i < p.class_count(); ++i) {
    const auto& lam = w.weights[static_cast<std::size_t>(i)];
    const auto& pts = p.classes[static_cast<std::size_t>(i)];
    if (lam.size() != pts.cols()) return false;
    if (lam.minCoeff() < -tol) return false;
    if (std::abs(lam.sum() - Scalar(1)) > tol) return false;
    const VectorT<Scalar> combo = pts * lam;
    if ((combo - w.point).cwiseAbs().maxCoeff() / scale > tol) return false;
  }
  return true;
}

/// Axis-parallel bounding boxes of the classes: returns the center of their
/// common box, or nullopt when some coordinate range intersection is empty.
template <typename Scalar>
std::optional<VectorT<Scalar>> box_hulls_common_point(const ColoredPartitionT<Scalar>& p) {
  p.validate();
  VectorT<Scalar> lo = p.classes.front().rowwise().minCoeff();
  VectorT<Scalar> hi = p.classes.front().rowwise().maxCoeff();
  for (const auto& c : p.classes) {
    lo = lo.cwiseMax(c.rowwise().minCoeff());
    hi = hi.cwiseMin(c.rowwise().maxCoeff());
  }
  if ((lo.array() > hi.array()).any()) return std::nullopt;
  return VectorT<Scalar>((lo + hi) / Scalar(2));
}

/// Returns a strict separating hyperplane (unit normal; a-side negative)
/// iff conv(a) and conv(b) are disjoint. This is the logical negation of
/// hulls_common_point on {a, b}: the intersection test is run first and the
/// separator comes from the dual max-margin LP with ||w||_1 <= 1, whose
/// margin equals the gap computed by the intersection test.
template <typename DerivedA, typename DerivedB>
std::optional<SeparatingHyperplaneT<typename DerivedA::Scalar>> strictly_separable(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.cols() == 0 || b.cols() == 0) throw InputError("strictly_separable: empty point set");
  if (a.rows() != b.rows()) throw InputError("strictly_separable: dimension mismatch");
  ColoredPartitionT<Scalar> p(a.rows(), {PointSetT<Scalar>(a), PointSetT<Scalar>(b)});
  if (hulls_common_point(p)) return std::nullopt;

  const Scalar scale = detail::partition_scale(p);
  const Index d = p.dim;
  // Variables: w (free, d), beta (free), delta >= 0, u >= 0 (d) bounding |w|.
  LinearProgram<Scalar> lp(2 * d + 2);
  const Index beta = d;
  const Index delta = d + 1;
  for (Index k = 0; k <= d; ++k) lp.set_free(k);
  lp.set_cost(delta, Scalar(-1));
  auto add_point_row = [&](const auto& x, Scalar side) {
    const Index r = lp.add_row(RowSense::LessEqual, Scalar(0));
    for (Index k = 0; k < d; ++k) lp.add_coeff(r, k, side * x(k) / scale);
    lp.add_coeff(r, beta, -side);
    lp.add_coeff(r, delta, Scalar(1));
  };
  for (Index j = 0; j < a.cols(); ++j) add_point_row(a.col(j), Scalar(1));
  for (Index j = 0; j < b.cols(); ++j) add_point_row(b.col(j), Scalar(-1));
  for (Index k = 0; k < d; ++k) {
    const Index up = lp.add_row(RowSense::LessEqual, Scalar(0));
    lp.add_coeff(up, k, Scalar(1));
    lp.add_coeff(up, d + 2 + k, Scalar(-1));
    const Index lo = lp.add_row(RowSense::LessEqual, Scalar(0));
    lp.add_coeff(lo, k, Scalar(-1));
    lp.add_coeff(lo, d + 2 + k, Scalar(-1));
  }
  const Index norm = lp.add_row(RowSense::LessEqual, Scalar(1));
  for (Index k = 0; k < d; ++k) lp.add_coeff(norm, d + 2 + k, Scalar(1));

  const auto res = lp.solve();
  if (!res.optimal()) throw SolverError("separator LP did not reach optimality");
  VectorT<Scalar> w = res.x.head(d);
  const Scalar len = w.norm();
  if (!(len > Scalar(0))) throw SolverError("separator LP returned a zero normal");
  w /= len;

  const Scalar hi_a = (w.transpose() * a).maxCoeff();
  const Scalar lo_b = (w.transpose() * b).minCoeff();
  if (!(hi_a < lo_b)) throw SolverError("separator failed direct re-verification");
  return SeparatingHyperplaneT<Scalar>{w, (hi_a + lo_b) / Scalar(2), true};
}

/// Direct dot-product check that h puts every a strictly below and every b
/// strictly above its offset.
template <typename DerivedA, typename DerivedB, typename Scalar>
bool verify_separator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                      const SeparatingHyperplaneT<Scalar>& h) {
  if (h.normal.norm() == Scalar(0)) return false;
  for (Index j = 0; j < a.cols(); ++j)
    if (!(h.normal.dot(a.col(j)) < h.offset)) return false;
  for (Index j = 0; j < b.cols(); ++j)
    if (!(h.normal.dot(b.col(j)) > h.offset)) return false;
  return true;
}

namespace detail {

template <typename Scalar>
Index closed_halfspace_count(const PointSetT<Scalar>& diffs, const VectorT<Scalar>& u, Scalar eps,
                             const std::vector<Index>& skip = {}) {
  Index count = 0;
  const VectorT<Scalar> dots = diffs.transpose() * u;
  for (Index j = 0; j < dots.size(); ++j) {
    if (std::find(skip.begin(), skip.end(), j) != skip.end()) continue;
    if (dots(j) >= -eps) ++count;
  }
  return count;
}

}  // namespace detail

/// Tukey (half-space) depth of q in s with closed half-spaces.
///
/// Candidate normals are the directions orthogonal to (d-1)-subsets of
/// {p - q}, both orientations, plus the coordinate directions. Points that
/// define a candidate are tilted out of the half-space; any other point on
/// the boundary counts as inside. Exact for points in general position.
template <typename Derived, typename DerivedS>
Index tukey_depth(const Eigen::MatrixBase<Derived>& q, const Eigen::MatrixBase<DerivedS>& s) {
  using Scalar = typename DerivedS::Scalar;
  if (s.cols() == 0) throw InputError("tukey_depth: empty point set");
  if (s.rows() != q.size()) throw InputError("tukey_depth: dimension mismatch");
  const Index d = s.rows();
  const Scalar scale = detail::positive_scale((s.colwise() - q).cwiseAbs().maxCoeff());
  const PointSetT<Scalar> diffs = (s.colwise() - q) / scale;
  const Scalar eps = Scalar(1e-12);

  Index best = s.cols();
  for (Index k = 0; k < d; ++k) {
    VectorT<Scalar> u = VectorT<Scalar>::Zero(d);
    u(k) = Scalar(1);
    best = std::min(best, detail::closed_halfspace_count(diffs, u, eps));
    best = std::min(best, detail::closed_halfspace_count<Scalar>(diffs, -u, eps));
  }
  if (d == 1) return best;

  std::vector<Index> nonzero;
  for (Index j = 0; j < diffs.cols(); ++j)
    if (diffs.col(j).cwiseAbs().maxCoeff() > eps) nonzero.push_back(j);

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rowsys(d - 1, d);
  for_each_combination(static_cast<Index>(nonzero.size()), d - 1, [&](const std::vector<Index>& c) {
    std::vector<Index> defining;
    for (Index r = 0; r < d - 1; ++r) {
      defining.push_back(nonzero[c[r]]);
      rowsys.row(r) = diffs.col(nonzero[c[r]]).transpose();
    }
    VectorT<Scalar> u;
    if (d == 2) {
      u.resize(2);
      u << -rowsys(0, 1), rowsys(0, 0);
    } else {
      Eigen::FullPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(rowsys);
      if (lu.rank() < d - 1) return true;
      u = lu.kernel().col(0);
    }
    const Scalar len = u.norm();
    if (!(len > eps)) return true;
    u /= len;
    best = std::min(best, detail::closed_halfspace_count(diffs, u, eps, defining));
    best = std::min(best, detail::closed_halfspace_count<Scalar>(diffs, -u, eps, defining));
    return best > 0;
  });
  return best;
}

/// Exhaustive-direction Tukey depth for d <= 2: evaluates every critical
/// direction (normal orthogonal to some p - q) and the midpoint of every arc
/// between consecutive critical directions.
template <typename Derived, typename DerivedS>
Index tukey_depth_sweep(const Eigen::MatrixBase<Derived>& q, const Eigen::MatrixBase<DerivedS>& s) {
  using Scalar = typename DerivedS::Scalar;
  if (s.cols() == 0) throw InputError("tukey_depth_sweep: empty point set");
  if (s.rows() != q.size()) throw InputError("tukey_depth_sweep: dimension mismatch");
  if (s.rows() > 2) throw InputError("tukey_depth_sweep: only d <= 2 is supported");
  const Scalar scale = detail::positive_scale((s.colwise() - q).cwiseAbs().maxCoeff());
  const PointSetT<Scalar> diffs = (s.colwise() - q) / scale;
  const Scalar eps = Scalar(1e-12);

  if (s.rows() == 1) {
    Index right = 0, left = 0;
    for (Index j = 0; j < diffs.cols(); ++j) {
      if (diffs(0, j) >= -eps) ++right;
      if (diffs(0, j) <= eps) ++left;
    }
    return std::min(left, right);
  }

  const Scalar pi = std::numbers::pi_v<Scalar>;
  std::vector<Scalar> angles;
  for (Index j = 0; j < diffs.cols(); ++j) {
    if (diffs.col(j).cwiseAbs().maxCoeff() <= eps) continue;
    const Scalar a = std::atan2(diffs(1, j), diffs(0, j));
    for (Scalar off : {pi / 2, -pi / 2}) {
      Scalar t = a + off;
      while (t < 0) t += 2 * pi;
      while (t >= 2 * pi) t -= 2 * pi;
      angles.push_back(t);
    }
  }
  if (angles.empty()) return s.cols();
  std::sort(angles.begin(), angles.end());

  auto count_at = [&](Scalar theta) {
    VectorT<Scalar> u(2);
    u << std::cos(theta), std::sin(theta);
    return detail::closed_halfspace_count(diffs, u, Scalar(1e-10));
  };
  Index best = s.cols();
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const Scalar next = i + 1 < angles.size() ? angles[i + 1] : angles.front() + 2 * pi;
    best = std::min(best, count_at(angles[i]));
    best = std::min(best, count_at((angles[i] + next) / 2));
  }
  return best;
}

}  // namespace tverberg
