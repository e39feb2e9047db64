#pragma once

// Dense two-phase primal simplex on an Eigen tableau.
//
// Problems are small and dense (a few hundred rows at most), so a full
// tableau with row operations is both the simplest and the fastest option.
// Pricing is Dantzig's rule; after a run of degenerate pivots the solver
// switches to Bland's rule until it makes progress again.

#include "tverberg/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace tverberg {

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <typename Scalar>
struct SimplexTolerances {
  Scalar pivot = Scalar(1e-10);
  Scalar reduced_cost = Scalar(1e-10);
  Scalar feasibility = Scalar(1e-10);
};

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar objective = 0;
  VectorT<Scalar> x;
  int iterations = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

/// minimize c'x subject to linear rows and x_j >= 0 (or free when marked).
template <typename Scalar = double>
class LinearProgram {
 public:
  explicit LinearProgram(Index num_vars)
      : num_vars_(num_vars), free_(static_cast<std::size_t>(num_vars), false),
        cost_(VectorT<Scalar>::Zero(num_vars)) {}

  Index num_vars() const { return num_vars_; }
  Index num_rows() const { return static_cast<Index>(rows_.size()); }

  void set_free(Index j) { free_[static_cast<std::size_t>(j)] = true; }
  void set_cost(Index j, Scalar c) { cost_(j) = c; }

  /// Starts a new row; fill it with add_coeff.
  Index add_row(RowSense sense, Scalar rhs) {
    rows_.push_back(Row{sense, rhs, {}});
    return num_rows() - 1;
  }

  void add_coeff(Index row, Index var, Scalar value) {
    if (value != Scalar(0))
      rows_[static_cast<std::size_t>(row)].terms.emplace_back(var, value);
  }

  LpResult<Scalar> solve(const SimplexTolerances<Scalar>& tol = {}) const;

 private:
  struct Row {
    RowSense sense;
    Scalar rhs;
    std::vector<std::pair<Index, Scalar>> terms;
  };

  Index num_vars_;
  std::vector<bool> free_;
  VectorT<Scalar> cost_;
  std::vector<Row> rows_;
};

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Tableau(Index rows, Index cols) : t_(Matrix::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  Index rows() const { return t_.rows() - 1; }
  Index cols() const { return t_.cols() - 1; }
  Scalar& at(Index r, Index c) { return t_(r, c); }
  Scalar& rhs(Index r) { return t_(r, cols()); }
  Scalar rhs(Index r) const { return t_(r, cols()); }
  std::vector<Index>& basis() { return basis_; }

  /// Loads a cost vector into the objective row and prices out the basis.
  void load_costs(const VectorT<Scalar>& costs) {
    const Index obj = rows();
    t_.row(obj).setZero();
    t_.row(obj).head(cols()) = costs.transpose();
    for (Index r = 0; r < rows(); ++r) {
      const Scalar cb = costs(basis_[r]);
      if (cb != Scalar(0)) t_.row(obj) -= cb * t_.row(r);
    }
  }

  Scalar objective() const { return -t_(rows(), cols()); }

  void pivot(Index r, Index c) {
    t_.row(r) /= t_(r, c);
    for (Index i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, c);
      if (f != Scalar(0)) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
  }

  /// Runs primal simplex over columns [0, allowed). Returns Optimal,
  /// Unbounded or IterationLimit.
  LpStatus optimize(Index allowed, const SimplexTolerances<Scalar>& tol, int max_iter, int& iters) {
    const Index obj = rows();
    int degenerate_run = 0;
    bool bland = false;
    for (; iters < max_iter; ++iters) {
      Index enter = -1;
      if (bland) {
        for (Index j = 0; j < allowed; ++j)
          if (t_(obj, j) < -tol.reduced_cost) {
            enter = j;
            break;
          }
      } else {
        Scalar best = -tol.reduced_cost;
        for (Index j = 0; j < allowed; ++j)
          if (t_(obj, j) < best) {
            best = t_(obj, j);
            enter = j;
          }
      }
      if (enter < 0) return LpStatus::Optimal;

      Index leave = -1;
      Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
      Scalar best_pivot = 0;
      for (Index i = 0; i < rows(); ++i) {
        const Scalar a = t_(i, enter);
        if (a <= tol.pivot) continue;
        const Scalar ratio = std::max(rhs(i), Scalar(0)) / a;
        const bool better = ratio < best_ratio - tol.pivot;
        const bool tie = !better && ratio <= best_ratio + tol.pivot;
        if (better ||
            (tie && (bland ? basis_[i] < basis_[leave] : a > best_pivot))) {
          best_ratio = ratio;
          best_pivot = a;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;

      if (best_ratio <= tol.pivot) {
        if (++degenerate_run > 30) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leave, enter);
    }
    return LpStatus::IterationLimit;
  }

 private:
  Matrix t_;
  std::vector<Index> basis_;
};

}  // namespace detail

template <typename Scalar>
LpResult<Scalar> LinearProgram<Scalar>::solve(const SimplexTolerances<Scalar>& tol) const {
  // Column layout: structural (free variables split into +/-), slacks, artificials.
  std::vector<Index> pos_col(static_cast<std::size_t>(num_vars_));
  std::vector<Index> neg_col(static_cast<std::size_t>(num_vars_), -1);
  Index ncols = 0;
  for (Index j = 0; j < num_vars_; ++j) {
    pos_col[j] = ncols++;
    if (free_[j]) neg_col[j] = ncols++;
  }
  const Index m = num_rows();

  std::vector<Index> slack_col(static_cast<std::size_t>(m), -1);
  for (Index r = 0; r < m; ++r)
    if (rows_[r].sense != RowSense::Equal) slack_col[r] = ncols++;

  // A row gets an artificial unless its slack can start in the basis.
  std::vector<Scalar> sign(static_cast<std::size_t>(m), Scalar(1));
  std::vector<Index> art_col(static_cast<std::size_t>(m), -1);
  const Index first_art = ncols;
  for (Index r = 0; r < m; ++r) {
    const auto& row = rows_[r];
    if (row.rhs < 0) sign[r] = Scalar(-1);
    const bool slack_basic = (row.sense == RowSense::LessEqual && row.rhs >= 0) ||
                             (row.sense == RowSense::GreaterEqual && row.rhs < 0);
    if (!slack_basic) art_col[r] = ncols++;
  }

  detail::Tableau<Scalar> tab(m, ncols);
  for (Index r = 0; r < m; ++r) {
    const auto& row = rows_[r];
    const Scalar s = sign[r];
    for (const auto& [var, val] : row.terms) {
      tab.at(r, pos_col[var]) += s * val;
      if (neg_col[var] >= 0) tab.at(r, neg_col[var]) -= s * val;
    }
    if (slack_col[r] >= 0)
      tab.at(r, slack_col[r]) = s * (row.sense == RowSense::LessEqual ? Scalar(1) : Scalar(-1));
    tab.rhs(r) = s * row.rhs;
    if (art_col[r] >= 0) {
      tab.at(r, art_col[r]) = Scalar(1);
      tab.basis()[r] = art_col[r];
    } else {
      tab.basis()[r] = slack_col[r];
    }
  }

  LpResult<Scalar> result;
  const int max_iter = static_cast<int>(50 * (m + ncols) + 1000);
  int iters = 0;

  if (first_art < ncols) {
    VectorT<Scalar> phase1 = VectorT<Scalar>::Zero(ncols);
    phase1.tail(ncols - first_art).setOnes();
    tab.load_costs(phase1);
    const LpStatus st = tab.optimize(ncols, tol, max_iter, iters);
    if (st == LpStatus::IterationLimit) {
      result.status = st;
      result.iterations = iters;
      return result;
    }
    Scalar scale = 1;
    for (Index r = 0; r < m; ++r) scale = std::max(scale, std::abs(rows_[r].rhs));
    if (tab.objective() > tol.feasibility * scale * Scalar(100)) {
      result.status = LpStatus::Infeasible;
      result.iterations = iters;
      return result;
    }
    // Drive zero-valued artificials out of the basis where possible; rows
    // where that fails are redundant and keep a harmless zero artificial.
    for (Index r = 0; r < m; ++r) {
      if (tab.basis()[r] < first_art) continue;
      Index best = -1;
      Scalar best_abs = tol.pivot;
      for (Index j = 0; j < first_art; ++j) {
        const Scalar a = std::abs(tab.at(r, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best >= 0) tab.pivot(r, best);
    }
  }

  VectorT<Scalar> phase2 = VectorT<Scalar>::Zero(ncols);
  for (Index j = 0; j < num_vars_; ++j) {
    phase2(pos_col[j]) = cost_(j);
    if (neg_col[j] >= 0) phase2(neg_col[j]) = -cost_(j);
  }
  tab.load_costs(phase2);
  const LpStatus st = tab.optimize(first_art, tol, max_iter, iters);
  result.status = st;
  result.iterations = iters;
  if (st != LpStatus::Optimal) return result;

  VectorT<Scalar> z = VectorT<Scalar>::Zero(ncols);
  for (Index r = 0; r < m; ++r) z(tab.basis()[r]) = std::max(tab.rhs(r), Scalar(0));
  result.x.resize(num_vars_);
  for (Index j = 0; j < num_vars_; ++j)
    result.x(j) = z(pos_col[j]) - (neg_col[j] >= 0 ? z(neg_col[j]) : Scalar(0));
  result.objective = cost_.dot(result.x);
  return result;
}

}  // namespace tverberg
