#include "pigc/data.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "pigc/error.hpp"

namespace pigc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kIndex: return "index error";
    case ErrorKind::kUnderflow: return "underflow error";
    case ErrorKind::kInsufficientSamples: return "insufficient samples";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kRank: return "rank error";
    case ErrorKind::kDegenerateModel: return "degenerate model";
    case ErrorKind::kInstability: return "instability";
    case ErrorKind::kUndefinedAuc: return "undefined AUC";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kIo: return "io error";
  }
  return "error";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_double(std::string_view cell, double& out) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

}  // namespace

TimeSeriesPanel::TimeSeriesPanel(Matrix values, std::vector<std::string> node_names)
    : values_(std::move(values)), node_names_(std::move(node_names)) {
  if (values_.rows() < 2 || values_.cols() < 2) {
    throw Error(ErrorKind::kShape, "panel needs at least 2 samples and 2 nodes, got " +
                                       std::to_string(values_.rows()) + "x" +
                                       std::to_string(values_.cols()));
  }
  if (static_cast<Eigen::Index>(node_names_.size()) != values_.cols()) {
    throw Error(ErrorKind::kSchema, "expected " + std::to_string(values_.cols()) +
                                        " node names, got " +
                                        std::to_string(node_names_.size()));
  }
  std::set<std::string_view> seen;
  for (const auto& name : node_names_) {
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::kSchema, "duplicate node name '" + name + "'");
    }
  }
  if (!values_.allFinite()) {
    throw Error(ErrorKind::kDegenerateInput, "panel contains NaN or Inf");
  }
}

Eigen::Index TimeSeriesPanel::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < node_names_.size(); ++i) {
    if (node_names_[i] == name) return static_cast<Eigen::Index>(i);
  }
  return -1;
}

TimeSeriesPanel ingest_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    for (auto cell : split_commas(line)) names.emplace_back(cell);
    break;
  }
  if (names.empty()) throw Error(ErrorKind::kFormat, "missing header row");
  for (const auto& n : names) {
    if (n.empty()) throw Error(ErrorKind::kSchema, "empty node name in header");
  }

  const std::size_t width = names.size();
  std::vector<double> flat;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != width) {
      throw Error(ErrorKind::kFormat, "ragged row at row " + std::to_string(line_no) +
                                          ": expected " + std::to_string(width) +
                                          " fields, got " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      if (!parse_double(cells[c], v) || !std::isfinite(v)) {
        throw Error(ErrorKind::kParse, "non-numeric cell at row " + std::to_string(line_no) +
                                           ", column " + std::to_string(c + 1) + ": '" +
                                           std::string(cells[c]) + "'");
      }
      flat.push_back(v);
    }
    ++rows;
  }

  Matrix values(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < width; ++c)
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = flat[r * width + c];
  return TimeSeriesPanel(std::move(values), std::move(names));
}

TimeSeriesPanel ingest_csv_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ingest_csv(in);
}

TimeSeriesPanel ingest_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  return ingest_csv(in);
}

void write_csv(std::ostream& out, const TimeSeriesPanel& panel) {
  const auto& names = panel.node_names();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  std::array<char, 64> buf{};
  const auto& v = panel.values();
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v(r, c));
      if (c) out << ',';
      out.write(buf.data(), ptr - buf.data());
    }
    out << '\n';
  }
}

Matrix normalize_columns(const Matrix& values, const std::vector<std::string>& names) {
  Matrix out(values.rows(), values.cols());
  const double n = static_cast<double>(values.rows());
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    const double mean = values.col(c).sum() / n;
    const Vector centered = values.col(c).array() - mean;
    const double var = centered.squaredNorm() / n;
    if (!(var > 0.0)) {
      const std::string who = c < static_cast<Eigen::Index>(names.size())
                                  ? "'" + names[static_cast<std::size_t>(c)] + "'"
                                  : "column " + std::to_string(c);
      throw Error(ErrorKind::kDegenerateInput, "zero variance in node " + who);
    }
    out.col(c) = centered / std::sqrt(var);
  }
  return out;
}

TimeSeriesPanel normalize(const TimeSeriesPanel& panel) {
  return TimeSeriesPanel(normalize_columns(panel.values(), panel.node_names()),
                         panel.node_names());
}

Matrix drop_column(const Matrix& values, Eigen::Index column) {
  if (column < 0 || column >= values.cols()) {
    throw Error(ErrorKind::kIndex, "column " + std::to_string(column) + " out of range [0, " +
                                       std::to_string(values.cols()) + ")");
  }
  Matrix out(values.rows(), values.cols() - 1);
  out.leftCols(column) = values.leftCols(column);
  out.rightCols(values.cols() - column - 1) = values.rightCols(values.cols() - column - 1);
  return out;
}

TimeSeriesPanel exclude_node(const TimeSeriesPanel& panel, Eigen::Index node) {
  if (node < 0 || node >= panel.nodes()) {
    throw Error(ErrorKind::kIndex, "node " + std::to_string(node) + " out of range [0, " +
                                       std::to_string(panel.nodes()) + ")");
  }
  if (panel.nodes() < 3) {
    throw Error(ErrorKind::kUnderflow,
                "excluding a node from a 2-node panel leaves a univariate series");
  }
  auto names = panel.node_names();
  names.erase(names.begin() + node);
  return TimeSeriesPanel(drop_column(panel.values(), node), std::move(names));
}

LaggedDesign lag_embed(const Matrix& series, int lag) {
  if (lag < 1) throw Error(ErrorKind::kConfig, "lag must be >= 1");
  const Eigen::Index t = series.rows();
  const Eigen::Index d = series.cols();
  if (t <= lag) {
    throw Error(ErrorKind::kInsufficientSamples,
                "lag " + std::to_string(lag) + " needs more than " + std::to_string(lag) +
                    " samples, got " + std::to_string(t));
  }
  const Eigen::Index rows = t - lag;
  LaggedDesign out;
  out.lag = lag;
  out.targets = series.bottomRows(rows);
  out.design.resize(rows, d * lag);
  for (int l = 1; l <= lag; ++l) {
    out.design.middleCols((l - 1) * d, d) = series.middleRows(lag - l, rows);
  }
  return out;
}

}  // namespace pigc
