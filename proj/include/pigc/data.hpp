#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pigc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// T×N panel of nodal measurements. Rows are time, columns are nodes.
///
/// Construction validates the invariants: all entries finite, T ≥ 2,
/// N ≥ 2, and one unique name per column.
class TimeSeriesPanel {
 public:
  TimeSeriesPanel(Matrix values, std::vector<std::string> node_names);

  const Matrix& values() const noexcept { return values_; }
  const std::vector<std::string>& node_names() const noexcept {
    return node_names_;
  }
  Eigen::Index samples() const noexcept { return values_.rows(); }
  Eigen::Index nodes() const noexcept { return values_.cols(); }

  // Position of a named node, or -1.
  Eigen::Index index_of(std::string_view name) const;

 private:
  Matrix values_;
  std::vector<std::string> node_names_;
};

/// Lagged regressors for a vector autoregression of depth L.
///
/// Row r pairs targets(r) = x_{L+r} with design(r) = [x_{L+r-1}, ..., x_{r}],
/// i.e. the lag-1 block occupies the first D columns, lag 2 the next D, etc.
struct LaggedDesign {
  Matrix design;
  Matrix targets;
  int lag = 1;
};

TimeSeriesPanel ingest_csv(std::istream& in);
TimeSeriesPanel ingest_csv_text(std::string_view text);
TimeSeriesPanel ingest_csv_file(const std::string& path);

// Writes with 17 significant digits so re-ingestion is lossless.
void write_csv(std::ostream& out, const TimeSeriesPanel& panel);

// Zero mean, unit population variance per column.
TimeSeriesPanel normalize(const TimeSeriesPanel& panel);
Matrix normalize_columns(const Matrix& values,
                         const std::vector<std::string>& names);

TimeSeriesPanel exclude_node(const TimeSeriesPanel& panel, Eigen::Index node);

// Column deletion on a bare matrix; no multivariate floor, used by the
// leave-one-out pipeline where a two-node panel leaves a single series.
Matrix drop_column(const Matrix& values, Eigen::Index column);

LaggedDesign lag_embed(const Matrix& series, int lag);

}  // namespace pigc
