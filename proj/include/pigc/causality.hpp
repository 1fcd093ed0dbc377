#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pigc/data.hpp"
#include "pigc/kernels.hpp"
#include "pigc/preimage.hpp"
#include "pigc/varm.hpp"

namespace pigc {

// Identity features: the VAR runs directly on the normalized panel.
struct LinearIdentity {};

/// Kernel feature map. An unset bandwidth means the median heuristic,
/// evaluated on each (full or reduced) panel the map is fit on.
struct KernelFeatures {
  KernelKind kind = KernelKind::kRbf;
  std::optional<double> bandwidth;
  int degree = 2;
  double offset = 1.0;
};

using FeatureMap = std::variant<LinearIdentity, KernelFeatures>;

struct PipelineConfig {
  FeatureMap features = KernelFeatures{};
  ComponentSelection components;
  int lag = 1;
  double ridge_var = 1e-3;
  double ridge_preimage = 1e-3;
  bool normalize_input = true;

  void validate() const;
};

// Linear identity features, P = N, OLS everywhere.
PipelineConfig degenerate_linear_config(int lag);

/// delta(i, j) scores "i causes j": the log ratio of node j's residual
/// variance without node i to its variance in the full model, clamped at 0.
struct CausalGraph {
  Matrix delta;
  Matrix raw_log_ratios;
  std::vector<std::string> node_names;
};

/// Everything a single (full or reduced) pipeline run produces.
struct ModelOutcome {
  Matrix targets;         // input rows L .. T-1
  Matrix reconstruction;  // pre-image of the feature-space predictions
  Vector residual_variance;
  std::optional<KernelPcaModel> pca;
  VarModelFit var;
  PreimageMap preimage;
};

enum class Execution { kSerial, kParallel };

double causality_index(double var_reduced, double var_full);

// Pipeline on an already-prepared (normalized if requested) T×D matrix.
// Works for any D >= 1, so the reduced model of a two-node panel is a
// univariate run.
ModelOutcome run_model(const Matrix& prepared, const PipelineConfig& config);

ModelOutcome run_full_model(const TimeSeriesPanel& panel, const PipelineConfig& config);

CausalGraph infer_graph(const TimeSeriesPanel& panel, const PipelineConfig& config,
                        Execution execution = Execution::kParallel);

// Classical Granger causality: OLS VAR residuals on the full and reduced
// panels directly, no feature map and no pre-image.
CausalGraph linear_gc_baseline(const TimeSeriesPanel& panel, int lag);

}  // namespace pigc
