#pragma once

// DMU datasets: m inputs and s outputs observed for n decision-making units.
//
// CSV layout (UTF-8, comma separated, first row is the header):
//
//   dmu,in:Researchers,in:Size,out:NSA,out:SB,out:HP
//   PKU,4868,274.112,54,43,5414
//
// Column roles come from the `in:` / `out:` prefixes and may appear in any
// order; the single unprefixed column holds the DMU names. Input and output
// order follows the order of appearance in the header.

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "facetbench/error.hpp"

namespace facetbench {

class Dataset {
 public:
  Dataset() = default;

  // inputs is m x n, outputs is s x n. Only shapes are checked here; the
  // domain invariants are reported by validate_dataset().
  Dataset(std::vector<std::string> names, std::vector<std::string> input_labels,
          std::vector<std::string> output_labels, Eigen::MatrixXd inputs,
          Eigen::MatrixXd outputs, std::string name_label = "dmu")
      : names_(std::move(names)),
        input_labels_(std::move(input_labels)),
        output_labels_(std::move(output_labels)),
        name_label_(std::move(name_label)),
        inputs_(std::move(inputs)),
        outputs_(std::move(outputs)) {
    const auto n = static_cast<Eigen::Index>(names_.size());
    if (inputs_.cols() != n || outputs_.cols() != n)
      throw DataError("dataset: matrix column count does not match number of DMUs");
    if (inputs_.rows() != static_cast<Eigen::Index>(input_labels_.size()) ||
        outputs_.rows() != static_cast<Eigen::Index>(output_labels_.size()))
      throw DataError("dataset: matrix row count does not match label count");
  }

  std::size_t size() const { return names_.size(); }
  std::size_t num_inputs() const { return input_labels_.size(); }
  std::size_t num_outputs() const { return output_labels_.size(); }
  bool empty() const { return names_.empty(); }

  const std::string& name(std::size_t j) const { return names_.at(j); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& input_labels() const { return input_labels_; }
  const std::vector<std::string>& output_labels() const { return output_labels_; }
  const std::string& name_label() const { return name_label_; }

  const Eigen::MatrixXd& inputs() const { return inputs_; }
  const Eigen::MatrixXd& outputs() const { return outputs_; }
  double x(std::size_t i, std::size_t j) const { return inputs_(idx(i), idx(j)); }
  double y(std::size_t r, std::size_t j) const { return outputs_(idx(r), idx(j)); }
  Eigen::VectorXd input(std::size_t j) const { return inputs_.col(idx(j)); }
  Eigen::VectorXd output(std::size_t j) const { return outputs_.col(idx(j)); }

  std::optional<std::size_t> index_of(std::string_view dmu) const {
    auto it = std::find(names_.begin(), names_.end(), dmu);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t require_index(std::string_view dmu) const {
    if (auto j = index_of(dmu)) return *j;
    throw DataError("unknown DMU '" + std::string(dmu) + "'");
  }

  // Number of DMUs spanning a full-dimensional facet: s + m - 1.
  std::size_t facet_rank() const { return num_inputs() + num_outputs() - 1; }

  // Same data with DMUs reordered: result column k is source column order[k].
  Dataset permuted(const std::vector<std::size_t>& order) const {
    std::vector<std::string> names;
    Eigen::MatrixXd in(inputs_.rows(), static_cast<Eigen::Index>(order.size()));
    Eigen::MatrixXd out(outputs_.rows(), static_cast<Eigen::Index>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) {
      names.push_back(names_.at(order[k]));
      in.col(idx(k)) = inputs_.col(idx(order[k]));
      out.col(idx(k)) = outputs_.col(idx(order[k]));
    }
    return Dataset(std::move(names), input_labels_, output_labels_, std::move(in),
                   std::move(out), name_label_);
  }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.names_ == b.names_ && a.input_labels_ == b.input_labels_ &&
           a.output_labels_ == b.output_labels_ && a.name_label_ == b.name_label_ &&
           a.inputs_.rows() == b.inputs_.rows() && a.inputs_.cols() == b.inputs_.cols() &&
           a.outputs_.rows() == b.outputs_.rows() && a.outputs_.cols() == b.outputs_.cols() &&
           a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_;
  }

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  std::vector<std::string> names_;
  std::vector<std::string> input_labels_;
  std::vector<std::string> output_labels_;
  std::string name_label_ = "dmu";
  Eigen::MatrixXd inputs_;
  Eigen::MatrixXd outputs_;
};

struct Violation {
  std::string rule;
  std::string dmu;        // empty when the rule concerns the whole dataset
  std::string dimension;  // column label, empty when not applicable
  std::string message;
};

inline std::vector<Violation> validate_dataset(const Dataset& ds) {
  std::vector<Violation> out;
  if (ds.num_inputs() < 1) out.push_back({"no-inputs", "", "", "dataset has no input columns"});
  if (ds.num_outputs() < 1) out.push_back({"no-outputs", "", "", "dataset has no output columns"});

  std::unordered_set<std::string> seen;
  for (std::size_t j = 0; j < ds.size(); ++j) {
    const auto& nm = ds.name(j);
    if (nm.empty())
      out.push_back({"empty-name", "", "", "DMU #" + std::to_string(j + 1) + " has an empty name"});
    else if (!seen.insert(nm).second)
      out.push_back({"duplicate-name", nm, "", "duplicate DMU name '" + nm + "'"});

    auto check = [&](double v, const std::string& label, const char* rule, const char* kind) {
      if (!std::isfinite(v)) {
        out.push_back({"non-finite", nm, label, "DMU '" + nm + "' " + kind + " '" + label + "' is not finite"});
      } else if (v <= 0.0) {
        std::ostringstream msg;
        msg << "DMU '" << nm << "' " << kind << " '" << label << "' must be strictly positive (got " << v
            << ")";
        out.push_back({rule, nm, label, msg.str()});
      }
    };
    for (std::size_t i = 0; i < ds.num_inputs(); ++i)
      check(ds.x(i, j), ds.input_labels()[i], "nonpositive-input", "input");
    for (std::size_t r = 0; r < ds.num_outputs(); ++r)
      check(ds.y(r, j), ds.output_labels()[r], "nonpositive-output", "output");
  }

  if (ds.num_inputs() >= 1 && ds.num_outputs() >= 1 && ds.size() < ds.facet_rank()) {
    out.push_back({"too-few-dmus", "", "",
                   "too few DMUs for any FDEF: n = " + std::to_string(ds.size()) + " < s + m - 1 = " +
                       std::to_string(ds.facet_rank())});
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.emplace_back(trim(cur));
  return cells;
}

inline bool blank(std::string_view line) { return trim(line).empty(); }

// Locale-independent decimal parse of the whole cell.
inline std::optional<double> parse_number(std::string_view cell) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) return std::nullopt;
  return v;
}

inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

inline Dataset read_dataset(std::istream& in, const std::string& origin = "<stream>") {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::vector<std::string>> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (detail::blank(line)) continue;
    header = detail::split_csv_line(line);
    break;
  }
  if (!header) throw DataError(origin + ": no data rows");

  std::optional<std::size_t> name_col;
  std::vector<std::size_t> in_cols, out_cols;
  std::vector<std::string> in_labels, out_labels;
  std::unordered_set<std::string> labels_seen;
  for (std::size_t c = 0; c < header->size(); ++c) {
    const std::string& h = (*header)[c];
    if (!labels_seen.insert(h).second)
      throw DataError(origin + ": duplicate header column '" + h + "'");
    if (h.rfind("in:", 0) == 0) {
      in_cols.push_back(c);
      in_labels.push_back(h.substr(3));
    } else if (h.rfind("out:", 0) == 0) {
      out_cols.push_back(c);
      out_labels.push_back(h.substr(4));
    } else {
      if (name_col)
        throw DataError(origin + ": header declares more than one name column ('" + (*header)[*name_col] +
                        "' and '" + h + "')");
      name_col = c;
    }
  }
  if (!name_col) throw DataError(origin + ": header has no DMU name column");
  if (in_cols.empty()) throw DataError(origin + ": header has no 'in:' column");
  if (out_cols.empty()) throw DataError(origin + ": header has no 'out:' column");

  std::vector<std::string> names;
  std::vector<std::vector<double>> xin, yout;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    auto cells = detail::split_csv_line(line);
    const std::string where = origin + ":" + std::to_string(lineno);
    if (cells.size() != header->size())
      throw DataError(where + ": expected " + std::to_string(header->size()) + " cells, got " +
                      std::to_string(cells.size()));
    const std::string& nm = cells[*name_col];
    if (nm.empty()) throw DataError(where + ": empty DMU name");
    if (!seen.insert(nm).second) throw DataError(where + ": duplicate DMU name '" + nm + "'");

    auto read = [&](std::size_t col) {
      auto v = detail::parse_number(cells[col]);
      if (!v || !std::isfinite(*v))
        throw DataError(where + ", column '" + (*header)[col] + "': non-numeric cell '" + cells[col] + "'");
      if (*v <= 0.0)
        throw DataError(where + ", column '" + (*header)[col] + "': nonpositive value " + cells[col] +
                        " for DMU '" + nm + "'");
      return *v;
    };
    std::vector<double> xr, yr;
    for (auto c : in_cols) xr.push_back(read(c));
    for (auto c : out_cols) yr.push_back(read(c));
    names.push_back(nm);
    xin.push_back(std::move(xr));
    yout.push_back(std::move(yr));
  }
  if (names.empty()) throw DataError(origin + ": no data rows");

  const auto n = static_cast<Eigen::Index>(names.size());
  Eigen::MatrixXd X(static_cast<Eigen::Index>(in_cols.size()), n);
  Eigen::MatrixXd Y(static_cast<Eigen::Index>(out_cols.size()), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, j) = xin[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    for (Eigen::Index r = 0; r < Y.rows(); ++r) Y(r, j) = yout[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
  }
  Dataset ds(std::move(names), std::move(in_labels), std::move(out_labels), std::move(X), std::move(Y),
             (*header)[*name_col]);
  if (auto v = validate_dataset(ds); !v.empty()) throw DataError(origin + ": " + v.front().message);
  return ds;
}

inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  return read_dataset(in, path);
}

// Writes the canonical CSV form: name column, inputs, outputs. Values use
// the shortest representation that reads back to the same double.
inline void write_dataset(std::ostream& out, const Dataset& ds) {
  out << detail::csv_cell(ds.name_label());
  for (const auto& l : ds.input_labels()) out << ',' << detail::csv_cell("in:" + l);
  for (const auto& l : ds.output_labels()) out << ',' << detail::csv_cell("out:" + l);
  out << '\n';
  for (std::size_t j = 0; j < ds.size(); ++j) {
    out << detail::csv_cell(ds.name(j));
    for (std::size_t i = 0; i < ds.num_inputs(); ++i) out << ',' << detail::format_number(ds.x(i, j));
    for (std::size_t r = 0; r < ds.num_outputs(); ++r) out << ',' << detail::format_number(ds.y(r, j));
    out << '\n';
  }
}

// One DMU name per line; blank lines and '#' comments are skipped.
inline std::vector<std::string> read_name_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open name list '" + path + "'");
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    names.emplace_back(t);
  }
  return names;
}

}  // namespace facetbench
