#include "tverberg/types.hpp"

#include <algorithm>

namespace tverberg {

int LabeledDataset::label_count() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
}

void LabeledDataset::validate() const {
  if (points.rows() < 1) throw InputError("dataset dimension must be >= 1");
  if (static_cast<Index>(labels.size()) != points.cols()) throw InputError("label count does not match row count");
  if (points.size() > 0 && !points.allFinite()) throw InputError("dataset has a non-finite coordinate");
  const int m = label_count();
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (int l : labels) {
    if (l < 1) throw InputError("labels must be >= 1");
    seen[l] = true;
  }
  for (int l = 1; l <= m; ++l)
    if (!seen[l]) throw InputError("labels must cover a contiguous range 1..m");
}

ColoredPartition LabeledDataset::to_partition(std::vector<Index>* row_of) const {
  validate();
  const int m = label_count();
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(m));
  for (Index i = 0; i < size(); ++i) members[labels[i] - 1].push_back(i);
  ColoredPartition p;
  p.dim = dim();
  if (row_of) row_of->clear();
  for (const auto& idx : members) {
    PointSet cls(dim(), static_cast<Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) {
      cls.col(static_cast<Index>(j)) = points.col(idx[j]);
      if (row_of) row_of->push_back(idx[j]);
    }
    p.classes.push_back(std::move(cls));
  }
  return p;
}

LabeledDataset LabeledDataset::from_partition(const ColoredPartition& p) {
  p.validate(false);
  LabeledDataset ds;
  ds.points.resize(p.dim, p.total_size());
  Index col = 0;
  for (Index c = 0; c < p.class_count(); ++c) {
    const auto& cls = p.classes[c];
    for (Index j = 0; j < cls.cols(); ++j) {
      ds.points.col(col++) = cls.col(j);
      ds.labels.push_back(static_cast<int>(c) + 1);
    }
    ds.label_names.push_back(std::to_string(c + 1));
  }
  return ds;
}

}  // namespace tverberg
