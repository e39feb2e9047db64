#pragma once

// RFC-4180 CSV for labeled datasets: header x1,...,xd,label; decimal point
// only; labels are arbitrary strings numbered 1..m by first appearance.

#include "tverberg/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tverberg {

/// Splits one CSV document into records. Throws InputError naming the line
/// of any malformed quoting.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

/// Shortest decimal text that reads back to exactly v.
std::string format_double(double v);

LabeledDataset read_dataset_csv(std::istream& in);
LabeledDataset read_dataset_csv(const std::string& path);

/// Writes a dataset so that read_dataset_csv reproduces it exactly.
void write_dataset_csv(std::ostream& out, const LabeledDataset& ds);

/// Reads an unlabeled point cloud: header x1..xd with an optional label
/// column, which is ignored.
PointSet read_points_csv(const std::string& path);

}  // namespace tverberg
