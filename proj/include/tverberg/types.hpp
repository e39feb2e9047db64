#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tverberg {

using Index = Eigen::Index;

template <typename Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Points stored column-wise: a dim x count matrix. Column indices are stable.
template <typename Scalar>
using PointSetT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Point = VectorT<double>;
using PointSet = PointSetT<double>;

// Error taxonomy. The CLI maps these onto exit codes 2, 3 and 4.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Feasibility tolerance, applied after scaling data to max |coord| = 1.
template <typename Scalar>
constexpr Scalar feasibility_tolerance() {
  return Scalar(1e-9);
}

/// A point set split into color classes. Classes may be empty here (the
/// allocation model produces empty colors); geometric queries reject them.
template <typename Scalar>
struct ColoredPartitionT {
  Index dim = 0;
  std::vector<PointSetT<Scalar>> classes;

  ColoredPartitionT() = default;
  ColoredPartitionT(Index d, std::vector<PointSetT<Scalar>> cls)
      : dim(d), classes(std::move(cls)) {}

  Index class_count() const { return static_cast<Index>(classes.size()); }

  Index total_size() const {
    Index n = 0;
    for (const auto& c : classes) n += c.cols();
    return n;
  }

  bool has_empty_class() const {
    for (const auto& c : classes)
      if (c.cols() == 0) return true;
    return false;
  }

  /// Throws InputError on dimension mismatch, non-finite data, or (when
  /// require_nonempty) an empty class.
  void validate(bool require_nonempty = true) const {
    if (dim < 1) throw InputError("partition dimension must be >= 1");
    if (classes.empty()) throw InputError("partition has no classes");
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& c = classes[i];
      if (c.cols() > 0 && c.rows() != dim)
        throw InputError("dimension mismatch in class " + std::to_string(i));
      if (require_nonempty && c.cols() == 0)
        throw InputError("class " + std::to_string(i) + " is empty");
      if (c.size() > 0 && !c.allFinite())
        throw InputError("non-finite coordinate in class " + std::to_string(i));
    }
  }

  /// Global index of (class, column) when classes are laid out in order.
  Index global_index(Index cls, Index col) const {
    Index offset = 0;
    for (Index i = 0; i < cls; ++i) offset += classes[i].cols();
    return offset + col;
  }
};

using ColoredPartition = ColoredPartitionT<double>;

template <typename Scalar>
struct HullWitnessT {
  VectorT<Scalar> point;
  std::vector<VectorT<Scalar>> weights;  // one convex-weight vector per class
};

using HullWitness = HullWitnessT<double>;

template <typename Scalar>
struct SeparatingHyperplaneT {
  VectorT<Scalar> normal;
  Scalar offset = 0;
  bool strict = true;

  Scalar evaluate(const Eigen::Ref<const VectorT<Scalar>>& x) const {
    return normal.dot(x) - offset;
  }
};

using SeparatingHyperplane = SeparatingHyperplaneT<double>;

/// Labeled observations; labels are 1..m. label_names[l-1] keeps the
/// original spelling for datasets read from disk.
struct LabeledDataset {
  PointSet points;  // dim x n
  std::vector<int> labels;
  std::vector<std::string> label_names;

  Index dim() const { return points.rows(); }
  Index size() const { return points.cols(); }
  int label_count() const;

  void validate() const;
  /// Class l-1 holds the rows labeled l, in row order. When row_of is given
  /// it receives the dataset row of each partition index.
  ColoredPartition to_partition(std::vector<Index>* row_of = nullptr) const;
  static LabeledDataset from_partition(const ColoredPartition& p);
};

}  // namespace tverberg
