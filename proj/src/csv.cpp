#include "tverberg/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <system_error>

namespace tverberg {

namespace {

double parse_number(const std::string& field, std::size_t line) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw InputError("line " + std::to_string(line) + ": not a number: '" + field + "'");
  if (!std::isfinite(v)) throw InputError("line " + std::to_string(line) + ": non-finite value");
  return v;
}

struct Table {
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> lines;  // physical line where each record starts
};

Table parse_table(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
  Table t;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    if (!(record.size() == 1 && record[0].empty())) {
      t.records.push_back(std::move(record));
      t.lines.push_back(record_line);
    }
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
          if (i + 1 < text.size() && text[i + 1] != ',' && text[i + 1] != '\n' && text[i + 1] != '\r')
            throw InputError("line " + std::to_string(line) + ": characters after closing quote");
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field_started) throw InputError("line " + std::to_string(line) + ": quote inside unquoted field");
        quoted = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        throw InputError("line " + std::to_string(line) + ": bare carriage return");
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        field += ch;
        field_started = true;
    }
  }
  if (quoted) throw InputError("line " + std::to_string(record_line) + ": unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return t;
}

Index check_header(const Table& t, bool label_required) {
  if (t.records.empty()) throw InputError("line 1: missing header");
  const auto& h = t.records.front();
  const bool has_label = !h.empty() && h.back() == "label";
  if (label_required && !has_label) throw InputError("line 1: header must end with 'label'");
  const auto d = static_cast<Index>(h.size()) - (has_label ? 1 : 0);
  if (d < 1) throw InputError("line 1: header needs at least one coordinate column");
  for (Index k = 0; k < d; ++k)
    if (h[static_cast<std::size_t>(k)] != "x" + std::to_string(k + 1))
      throw InputError("line 1: expected column 'x" + std::to_string(k + 1) + "'");
  return d;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::istream& in) { return parse_table(in).records; }

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

LabeledDataset read_dataset_csv(std::istream& in) {
  const Table t = parse_table(in);
  const Index d = check_header(t, true);
  const auto n = static_cast<Index>(t.records.size()) - 1;
  LabeledDataset ds;
  ds.points.resize(d, n);
  std::map<std::string, int> ids;
  for (Index i = 0; i < n; ++i) {
    const auto& rec = t.records[static_cast<std::size_t>(i + 1)];
    const std::size_t line = t.lines[static_cast<std::size_t>(i + 1)];
    if (static_cast<Index>(rec.size()) != d + 1)
      throw InputError("line " + std::to_string(line) + ": expected " + std::to_string(d + 1) + " fields");
    for (Index k = 0; k < d; ++k) ds.points(k, i) = parse_number(rec[static_cast<std::size_t>(k)], line);
    const std::string& label = rec.back();
    if (label.empty()) throw InputError("line " + std::to_string(line) + ": empty label");
    auto [it, inserted] = ids.emplace(label, static_cast<int>(ids.size()) + 1);
    if (inserted) ds.label_names.push_back(label);
    ds.labels.push_back(it->second);
  }
  return ds;
}

LabeledDataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, const LabeledDataset& ds) {
  for (Index k = 0; k < ds.dim(); ++k) out << 'x' << (k + 1) << ',';
  out << "label\n";
  for (Index i = 0; i < ds.size(); ++i) {
    for (Index k = 0; k < ds.dim(); ++k) out << format_double(ds.points(k, i)) << ',';
    const int l = ds.labels[static_cast<std::size_t>(i)];
    const std::string name = static_cast<std::size_t>(l) <= ds.label_names.size()
                                 ? ds.label_names[static_cast<std::size_t>(l - 1)]
                                 : std::to_string(l);
    out << csv_escape(name) << '\n';
  }
}

PointSet read_points_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  const Table t = parse_table(in);
  const Index d = check_header(t, false);
  const std::size_t width = t.records.front().size();
  const auto n = static_cast<Index>(t.records.size()) - 1;
  PointSet pts(d, n);
  for (Index i = 0; i < n; ++i) {
    const auto& rec = t.records[static_cast<std::size_t>(i + 1)];
    const std::size_t line = t.lines[static_cast<std::size_t>(i + 1)];
    if (rec.size() != width)
      throw InputError("line " + std::to_string(line) + ": expected " + std::to_string(width) + " fields");
    for (Index k = 0; k < d; ++k) pts(k, i) = parse_number(rec[static_cast<std::size_t>(k)], line);
  }
  return pts;
}

}  // namespace tverberg
