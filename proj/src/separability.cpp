#include "tverberg/separability.hpp"

#include "tverberg/combinatorics.hpp"
#include "tverberg/geometry.hpp"
#include "tverberg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tverberg {

namespace {

constexpr Index kToleranceGuardPoints = 24;
constexpr int kToleranceGuardT = 3;
constexpr Index kBruteForceGuard = 14;
constexpr Index kEnumerationMaxDim = 4;
constexpr double kEnumerationBudget = 5e8;
constexpr double kPlaneEps = 1e-9;

struct TwoClassView {
  std::vector<Index> a;  // rows labeled 1
  std::vector<Index> b;  // rows labeled 2
};

TwoClassView split_two_labels(const LabeledDataset& ds) {
  ds.validate();
  if (ds.label_count() != 2) throw InputError("operation needs exactly two labels");
  TwoClassView v;
  for (Index i = 0; i < ds.size(); ++i) (ds.labels[i] == 1 ? v.a : v.b).push_back(i);
  return v;
}

PointSet gather(const PointSet& pts, const std::vector<Index>& idx) {
  PointSet out(pts.rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Index>(j)) = pts.col(idx[j]);
  return out;
}

// Strict separation through the origin: LP feasibility of w'a <= -1, w'b >= 1.
bool homogeneous_separable(const PointSet& a, const PointSet& b) {
  const Index d = a.cols() > 0 ? a.rows() : b.rows();
  if (a.cols() == 0 && b.cols() == 0) return true;
  const double scale = detail::positive_scale(std::max(a.size() ? a.cwiseAbs().maxCoeff() : 0.0,
                                                       b.size() ? b.cwiseAbs().maxCoeff() : 0.0));
  LinearProgram<double> lp(d);
  for (Index k = 0; k < d; ++k) lp.set_free(k);
  for (Index j = 0; j < a.cols(); ++j) {
    const Index r = lp.add_row(RowSense::LessEqual, -1.0);
    for (Index k = 0; k < d; ++k) lp.add_coeff(r, k, a(k, j) / scale);
  }
  for (Index j = 0; j < b.cols(); ++j) {
    const Index r = lp.add_row(RowSense::GreaterEqual, 1.0);
    for (Index k = 0; k < d; ++k) lp.add_coeff(r, k, b(k, j) / scale);
  }
  const auto res = lp.solve();
  if (res.status == LpStatus::Infeasible) return false;
  if (!res.optimal()) throw SolverError("homogeneous separability LP failed");
  return true;
}

bool affine_separable(const PointSet& a, const PointSet& b) {
  if (a.cols() == 0 || b.cols() == 0) return true;
  ColoredPartition p(a.rows(), {a, b});
  return !hulls_common_point(p).has_value();
}

bool separable(const PointSet& a, const PointSet& b, bool homogeneous) {
  return homogeneous ? homogeneous_separable(a, b) : affine_separable(a, b);
}

// The margin objective only needs labels in {1, 2}; one label is allowed.
void require_binary_labels(const LabeledDataset& ds) {
  ds.validate();
  if (ds.size() == 0) throw InputError("dataset has no rows");
  if (ds.label_count() > 2) throw InputError("operation needs at most two labels");
}

std::vector<Index> complement_rows(Index n, const std::vector<Index>& removed) {
  std::vector<bool> gone(static_cast<std::size_t>(n), false);
  for (Index i : removed) gone[i] = true;
  std::vector<Index> keep;
  for (Index i = 0; i < n; ++i)
    if (!gone[i]) keep.push_back(i);
  return keep;
}

std::vector<double> signed_labels(const LabeledDataset& ds) {
  std::vector<double> y(static_cast<std::size_t>(ds.size()));
  for (Index i = 0; i < ds.size(); ++i) y[i] = ds.labels[i] == 1 ? -1.0 : 1.0;
  return y;
}

}  // namespace

ToleranceResult tolerance_exact(const ColoredPartition& p, int t_max, bool override_guard) {
  p.validate();
  if (t_max < 0) throw InputError("tolerance_exact: t_max must be >= 0");
  const Index total = p.total_size();
  if (!override_guard && total > kToleranceGuardPoints && t_max > kToleranceGuardT)
    throw GuardError("tolerance_exact: more than 24 points with t_max > 3; pass the override to proceed");

  ToleranceResult res;
  if (!hulls_common_point(p)) return res;

  Index smallest = 0;
  for (Index c = 1; c < p.class_count(); ++c)
    if (p.classes[c].cols() < p.classes[smallest].cols()) smallest = c;
  const Index min_size = p.classes[smallest].cols();

  std::vector<Index> class_of(static_cast<std::size_t>(total));
  std::vector<Index> col_of(static_cast<std::size_t>(total));
  for (Index c = 0, g = 0; c < p.class_count(); ++c)
    for (Index j = 0; j < p.classes[c].cols(); ++j, ++g) {
      class_of[g] = c;
      col_of[g] = j;
    }

  auto breaks = [&](const std::vector<Index>& removed) {
    std::vector<std::vector<bool>> gone(static_cast<std::size_t>(p.class_count()));
    for (Index c = 0; c < p.class_count(); ++c) gone[c].assign(static_cast<std::size_t>(p.classes[c].cols()), false);
    for (Index g : removed) gone[class_of[g]][col_of[g]] = true;
    ColoredPartition q;
    q.dim = p.dim;
    for (Index c = 0; c < p.class_count(); ++c) {
      std::vector<Index> keep;
      for (Index j = 0; j < p.classes[c].cols(); ++j)
        if (!gone[c][j]) keep.push_back(j);
      if (keep.empty()) return true;
      q.classes.push_back(gather(p.classes[c], keep));
    }
    return !hulls_common_point(q).has_value();
  };

  for (Index s = 1; s <= static_cast<Index>(t_max) + 1; ++s) {
    if (s == min_size) {
      // Removing the smallest class always breaks; no smaller set did.
      res.tolerance = static_cast<int>(s - 1);
      for (Index j = 0; j < min_size; ++j) res.breaking_set.push_back(p.global_index(smallest, j));
      return res;
    }
    std::vector<Index> found;
    for_each_combination(total, s, [&](const std::vector<Index>& c) {
      if (breaks(c)) {
        found = c;
        return false;
      }
      return true;
    });
    if (!found.empty()) {
      res.tolerance = static_cast<int>(s - 1);
      res.breaking_set = std::move(found);
      return res;
    }
  }
  res.tolerance = t_max;
  res.at_cap = true;
  return res;
}

RemovalResult min_removals_sweep_1d(const LabeledDataset& ds) {
  const auto v = split_two_labels(ds);
  if (ds.dim() != 1) throw InputError("min_removals_sweep_1d: needs d = 1");
  const Index n = ds.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return ds.points(0, i) < ds.points(0, j); });

  // Cut positions lie between distinct consecutive values (and at both
  // ends). For a cut after sorted position c: "a left" misclassifies the
  // b rows left of the cut and the a rows right of it.
  const auto na = static_cast<Index>(v.a.size());
  const auto nb = static_cast<Index>(v.b.size());
  Index best = std::min(na, nb);
  Index best_cut = -1;
  bool best_a_left = na <= nb;  // the trivial cut keeps only the larger class
  Index a_left = 0, b_left = 0;
  auto consider = [&](Index cut) {
    const Index cost_a_left = b_left + (na - a_left);
    const Index cost_b_left = a_left + (nb - b_left);
    if (cost_a_left < best) {
      best = cost_a_left;
      best_cut = cut;
      best_a_left = true;
    }
    if (cost_b_left < best) {
      best = cost_b_left;
      best_cut = cut;
      best_a_left = false;
    }
  };
  consider(0);
  for (Index c = 0; c < n; ++c) {
    (ds.labels[order[c]] == 1 ? a_left : b_left) += 1;
    if (c + 1 == n || ds.points(0, order[c + 1]) > ds.points(0, order[c])) consider(c + 1);
  }

  RemovalResult res;
  res.count = best;
  if (best_cut < 0) {
    res.removed = na <= nb ? v.a : v.b;
  } else {
    for (Index c = 0; c < n; ++c) {
      const bool left = c < best_cut;
      const bool is_a = ds.labels[order[c]] == 1;
      if ((best_a_left && left != is_a) || (!best_a_left && left == is_a)) res.removed.push_back(order[c]);
    }
    std::sort(res.removed.begin(), res.removed.end());
  }
  return res;
}

RemovalResult min_removals_to_separable(const LabeledDataset& ds, const SeparabilityOptions& opts) {
  const auto v = split_two_labels(ds);
  const Index n = ds.size();
  const Index d = ds.dim();
  if (!opts.homogeneous && (ds.points.colwise() - ds.points.col(0)).cwiseAbs().maxCoeff() == 0.0)
    throw InputError("min_removals_to_separable: all points coincide");
  if (d == 1 && !opts.homogeneous) return min_removals_sweep_1d(ds);

  const Index k = opts.homogeneous ? d - 1 : d;
  if (!opts.override_guard) {
    if (d > kEnumerationMaxDim) throw GuardError("min_removals_to_separable: exact mode limited to d <= 4");
    if (binomial_count(n, k) * static_cast<double>(n) > kEnumerationBudget)
      throw GuardError("min_removals_to_separable: hyperplane enumeration too large");
  }

  const PointSet a = gather(ds.points, v.a);
  const PointSet b = gather(ds.points, v.b);
  if (separable(a, b, opts.homogeneous)) return {};

  const double scale = detail::positive_scale(ds.points.cwiseAbs().maxCoeff());
  const PointSet pts = ds.points / scale;

  RemovalResult best;
  if (opts.homogeneous) {
    best.count = n;
    for (Index i = 0; i < n; ++i) best.removed.push_back(i);
  } else {
    best.count = static_cast<Index>(std::min(v.a.size(), v.b.size()));
    best.removed = v.a.size() <= v.b.size() ? v.a : v.b;
  }

  // A hyperplane through the origin can never be pushed off a point at the
  // origin, so such rows are misclassified by every homogeneous candidate.
  std::vector<bool> pinned(static_cast<std::size_t>(n), false);
  if (opts.homogeneous)
    for (Index i = 0; i < n; ++i) pinned[i] = pts.col(i).norm() <= kPlaneEps;

  auto misplaced = [&](Index i, double s) {
    return pinned[i] || (ds.labels[i] == 1 ? s > kPlaneEps : s < -kPlaneEps);
  };
  auto evaluate = [&](const Point& w, double offset) {
    const Eigen::VectorXd side = (pts.transpose() * w).array() - offset;
    for (double orient : {1.0, -1.0}) {
      Index wrong = 0;
      for (Index i = 0; i < n && wrong < best.count; ++i)
        if (misplaced(i, orient * side(i))) ++wrong;
      if (wrong < best.count) {
        best.count = wrong;
        best.removed.clear();
        for (Index i = 0; i < n; ++i)
          if (misplaced(i, orient * side(i))) best.removed.push_back(i);
      }
    }
  };

  if (k == 0) {
    Point w(1);
    w << 1.0;
    evaluate(w, 0.0);
    return best;
  }

  Eigen::MatrixXd sys(k, opts.homogeneous ? d : d + 1);
  bool spanning = false;
  for_each_combination(n, k, [&](const std::vector<Index>& c) {
    for (Index r = 0; r < k; ++r) {
      sys.row(r).head(d) = pts.col(c[r]).transpose();
      if (!opts.homogeneous) sys(r, d) = -1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (lu.rank() < k) return true;
    const Eigen::VectorXd ker = lu.kernel().col(0);
    Point w = ker.head(d);
    const double len = w.norm();
    if (!(len > kPlaneEps)) return true;
    spanning = true;
    evaluate(w / len, opts.homogeneous ? 0.0 : ker(d) / len);
    return best.count > 0;
  });
  if (!spanning && best.count > 0)
    throw InputError("min_removals_to_separable: degenerate dataset (no hyperplane through d affinely independent points)");
  return best;
}

RemovalResult min_removals_brute_force(const LabeledDataset& ds, const SeparabilityOptions& opts) {
  const auto v = split_two_labels(ds);
  const Index n = ds.size();
  if (!opts.override_guard && n > kBruteForceGuard)
    throw GuardError("min_removals_brute_force: more than 14 rows; pass the override to proceed");
  for (Index s = 0; s <= n; ++s) {
    RemovalResult found;
    bool hit = false;
    for_each_combination(n, s, [&](const std::vector<Index>& removed) {
      std::vector<Index> ka, kb;
      for (Index i : complement_rows(n, removed)) (ds.labels[i] == 1 ? ka : kb).push_back(i);
      if (separable(gather(ds.points, ka), gather(ds.points, kb), opts.homogeneous)) {
        found = {s, removed};
        hit = true;
        return false;
      }
      return true;
    });
    if (hit) return found;
  }
  return {n, complement_rows(n, {})};
}

CondNumberReport pertsep0(const LabeledDataset& ds, const SeparabilityOptions& opts) {
  CondNumberReport rep;
  const auto removal = min_removals_to_separable(ds, opts);
  rep.n = ds.size();
  rep.min_removals = removal.count;
  rep.removal_set = removal.removed;
  rep.pertsep0 = static_cast<double>(removal.count) / static_cast<double>(rep.n);
  if (!opts.homogeneous && 2 * removal.count > rep.n)
    throw SolverError("pertsep0: minimum removal count exceeds n / 2");

  if (!opts.homogeneous && (rep.n <= kToleranceGuardPoints || opts.override_guard)) {
    const auto tol = tolerance_exact(ds.to_partition(), static_cast<int>(rep.n), opts.override_guard);
    rep.tolerance = tol.tolerance;
    rep.removal_equivalence = static_cast<Index>(tol.tolerance) + 1 == removal.count;
  }
  if (ds.dim() <= 2) rep.degnsep = degnsep_exact_low_dim(ds);
  return rep;
}

double degnsep_objective(const LabeledDataset& ds, const Point& beta) {
  const auto y = signed_labels(ds);
  const Eigen::VectorXd margins = ds.points.transpose() * beta;
  double total = 0.0;
  for (Index i = 0; i < ds.size(); ++i) total += std::max(0.0, -y[i] * margins(i));
  return total / static_cast<double>(ds.size());
}

double degnsep_exact_low_dim(const LabeledDataset& ds) {
  require_binary_labels(ds);
  const Index d = ds.dim();
  if (d == 1) {
    Point plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    return std::min(degnsep_objective(ds, plus), degnsep_objective(ds, minus));
  }
  if (d != 2) throw InputError("degnsep_exact_low_dim: only d in {1, 2}; use degnsep_sampled");

  const double pi = std::numbers::pi;
  const auto y = signed_labels(ds);
  std::vector<double> angles;
  for (Index i = 0; i < ds.size(); ++i) {
    const auto x = ds.points.col(i);
    if (x.norm() == 0.0) continue;
    const double a = std::atan2(x(1), x(0));
    for (double off : {pi / 2, -pi / 2}) angles.push_back(std::remainder(a + off, 2 * pi));
  }
  auto at = [](double theta) {
    Point u(2);
    u << std::cos(theta), std::sin(theta);
    return u;
  };
  if (angles.empty()) return degnsep_objective(ds, at(0.0));
  std::sort(angles.begin(), angles.end());

  double best = INFINITY;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double next = i + 1 < angles.size() ? angles[i + 1] : angles.front() + 2 * pi;
    best = std::min(best, degnsep_objective(ds, at(angles[i])));
    // On the open arc the active set is fixed and the objective is g'beta.
    const Point mid = at(0.5 * (angles[i] + next));
    Point g = Point::Zero(2);
    for (Index r = 0; r < ds.size(); ++r) {
      const double margin = y[r] * ds.points.col(r).dot(mid);
      if (margin < 0) g -= y[r] * ds.points.col(r);
    }
    g /= static_cast<double>(ds.size());
    if (g.norm() > 0) best = std::min(best, degnsep_objective(ds, Point(-g / g.norm())));
  }
  return best;
}

DegnsepEstimate degnsep_sampled(const LabeledDataset& ds, Index directions, std::uint64_t seed) {
  require_binary_labels(ds);
  if (directions < 1) throw InputError("degnsep_sampled: directions must be >= 1");
  BalancedDistribution sphere{DistributionKind::UniformSphere, ds.dim(), {}};
  const PointSet dirs = draw_points(sphere, seed, 0, directions);
  DegnsepEstimate est;
  est.directions = directions;
  est.value = INFINITY;
  for (Index j = 0; j < directions; ++j) {
    const double v = degnsep_objective(ds, dirs.col(j));
    if (v < est.value) {
      est.value = v;
      est.best_direction = dirs.col(j);
    }
  }
  return est;
}

bool weakly_separable_through_origin(const LabeledDataset& ds) {
  require_binary_labels(ds);
  const Index d = ds.dim();
  const auto y = signed_labels(ds);
  const double scale = detail::positive_scale(ds.points.cwiseAbs().maxCoeff());
  for (Index k = 0; k < d; ++k) {
    for (double sgn : {1.0, -1.0}) {
      LinearProgram<double> lp(d);
      for (Index j = 0; j < d; ++j) {
        lp.set_free(j);
        const Index up = lp.add_row(RowSense::LessEqual, 1.0);
        lp.add_coeff(up, j, 1.0);
        const Index lo = lp.add_row(RowSense::GreaterEqual, -1.0);
        lp.add_coeff(lo, j, 1.0);
      }
      const Index fix = lp.add_row(RowSense::Equal, sgn);
      lp.add_coeff(fix, k, 1.0);
      for (Index i = 0; i < ds.size(); ++i) {
        const Index r = lp.add_row(RowSense::GreaterEqual, 0.0);
        for (Index j = 0; j < d; ++j) lp.add_coeff(r, j, y[i] * ds.points(j, i) / scale);
      }
      const auto res = lp.solve();
      if (res.optimal()) return true;
      if (res.status != LpStatus::Infeasible) throw SolverError("weak separability LP failed");
    }
  }
  return false;
}

std::optional<int> tolerance_certificate_grouped(const ColoredPartition& p, const Point& candidate,
                                                 Index group_size) {
  p.validate();
  if (candidate.size() != p.dim) throw InputError("tolerance_certificate_grouped: dimension mismatch");
  if (group_size <= 0) group_size = 2 * p.dim;
  Index min_count = -1;
  for (const auto& cls : p.classes) {
    const Index groups = cls.cols() / group_size;
    Index count = 0;
    for (Index g = 0; g < groups; ++g) {
      const Index first = g * group_size;
      const Index len = g + 1 == groups ? cls.cols() - first : group_size;
      if (hull_contains(cls.middleCols(first, len), candidate)) ++count;
    }
    min_count = min_count < 0 ? count : std::min(min_count, count);
  }
  if (min_count <= 0) return std::nullopt;
  return static_cast<int>(min_count - 1);
}

std::optional<int> radon_tolerance_certificate(const ColoredPartition& p, Index group_size) {
  p.validate();
  if (p.class_count() != 2) throw InputError("radon_tolerance_certificate: needs exactly two classes");
  if (group_size <= 0) group_size = 2 * p.dim + 2;
  const LabeledDataset ds = LabeledDataset::from_partition(p);
  const Index groups = ds.size() / group_size;
  Index count = 0;
  for (Index g = 0; g < groups; ++g) {
    const Index first = g * group_size;
    const Index len = g + 1 == groups ? ds.size() - first : group_size;
    std::vector<Index> ra, rb;
    for (Index i = first; i < first + len; ++i) (ds.labels[i] == 1 ? ra : rb).push_back(i);
    if (ra.empty() || rb.empty()) continue;
    if (!affine_separable(gather(ds.points, ra), gather(ds.points, rb))) ++count;
  }
  if (count == 0) return std::nullopt;
  return static_cast<int>(count - 1);
}

}  // namespace tverberg
