#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pigc/causality.hpp"
#include "pigc/synthgen.hpp"

namespace pigc {

// Mann–Whitney AUC with ties counted one half.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// AUC of the off-diagonal delta entries against a binary ground truth.
double graph_auc(const Matrix& delta, const Eigen::MatrixXi& ground_truth);

enum class MethodKind { kPipeline, kLinearBaseline };

struct MethodSpec {
  std::string name;
  MethodKind kind = MethodKind::kPipeline;
  PipelineConfig config;  // kLinearBaseline reads only config.lag
};

CausalGraph run_method(const MethodSpec& method, const TimeSeriesPanel& panel,
                       Execution execution = Execution::kSerial);

struct BenchmarkRecord {
  std::string generator;
  std::string method;
  int samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> auc;  // empty when the cell failed
  std::string failure;
};

struct CellSummary {
  std::string generator;
  std::string method;
  int samples = 0;
  int count = 0;
  int failures = 0;
  bool omitted = false;  // fewer than two successful records
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double mean = 0.0;
  double ci95_half_width = 0.0;
};

struct BenchmarkReport {
  std::vector<BenchmarkRecord> records;
  std::vector<CellSummary> summaries;
};

struct SweepSpec {
  std::vector<GeneratorId> generators;
  std::vector<MethodSpec> methods;
  std::vector<int> samples;
  int seeds = 50;
  std::uint64_t seed_base = 0;
  int jobs = 0;  // 0 = OpenMP default

  std::size_t cell_count() const {
    return generators.size() * methods.size() * samples.size() *
           static_cast<std::size_t>(seeds < 0 ? 0 : seeds);
  }
};

using ProgressFn = std::function<void(const BenchmarkRecord&, std::size_t done,
                                      std::size_t total)>;

// Cells are ordered generator-major, then method, T, seed. The record
// order and content do not depend on `jobs`.
BenchmarkReport run_benchmark(const SweepSpec& spec, const ProgressFn& progress = {});

// Type-7 (linear interpolation) quantile of sorted values.
double quantile_sorted(const std::vector<double>& sorted, double p);

std::vector<CellSummary> summarize(const std::vector<BenchmarkRecord>& records);

}  // namespace pigc
