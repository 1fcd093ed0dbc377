#include "pigc/causality.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "pigc/error.hpp"

namespace pigc {

void PipelineConfig::validate() const {
  if (lag < 1) throw Error(ErrorKind::kConfig, "lag must be >= 1");
  if (!(ridge_var >= 0.0) || !(ridge_preimage >= 0.0)) {
    throw Error(ErrorKind::kConfig, "ridge values must be >= 0");
  }
  if (const auto* k = std::get_if<KernelFeatures>(&features)) {
    if (k->bandwidth && !(*k->bandwidth > 0.0)) {
      throw Error(ErrorKind::kConfig, "bandwidth must be positive");
    }
    if (k->kind == KernelKind::kPolynomial && k->degree < 1) {
      throw Error(ErrorKind::kConfig, "polynomial degree must be >= 1");
    }
  }
}

PipelineConfig degenerate_linear_config(int lag) {
  PipelineConfig c;
  c.features = LinearIdentity{};
  c.lag = lag;
  c.ridge_var = 0.0;
  c.ridge_preimage = 0.0;
  return c;
}

double causality_index(double var_reduced, double var_full) {
  if (!(var_reduced > 0.0) || !(var_full > 0.0)) {
    throw Error(ErrorKind::kDegenerateModel,
                "nonpositive residual variance; the model interpolates its training data, "
                "raise the ridge penalty");
  }
  const double ratio = std::log(var_reduced / var_full);
  return ratio > 0.0 ? ratio : 0.0;
}

namespace {

template <typename F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_stage(stage);
  }
}

KernelSpec resolve_kernel(const KernelFeatures& features, const Matrix& prepared) {
  switch (features.kind) {
    case KernelKind::kRbf:
      return KernelSpec::rbf(features.bandwidth ? *features.bandwidth
                                                : median_bandwidth(prepared));
    case KernelKind::kLinear:
      return KernelSpec::linear();
    case KernelKind::kPolynomial:
      return KernelSpec::polynomial(features.degree, features.offset);
  }
  return KernelSpec{};
}

Matrix prepare(const TimeSeriesPanel& panel, const PipelineConfig& config) {
  if (!config.normalize_input) return panel.values();
  return staged("normalize",
                [&] { return normalize_columns(panel.values(), panel.node_names()); });
}

void check_length(Eigen::Index samples, int lag) {
  if (samples < lag + 2) {
    throw Error(ErrorKind::kInsufficientSamples,
                "pipeline needs T >= lag + 2 = " + std::to_string(lag + 2) + ", got " +
                    std::to_string(samples));
  }
}

}  // namespace

ModelOutcome run_model(const Matrix& prepared, const PipelineConfig& config) {
  config.validate();
  check_length(prepared.rows(), config.lag);
  const int lag = config.lag;
  const Eigen::Index kept = prepared.rows() - lag;

  ModelOutcome out;
  Matrix features;
  if (const auto* k = std::get_if<KernelFeatures>(&config.features)) {
    out.pca = staged("pca", [&] {
      const KernelSpec spec = resolve_kernel(*k, prepared);
      ComponentSelection selection = config.components;
      selection.cap_at_rank = true;
      return fit_kernel_pca(spec, prepared, selection);
    });
    features = staged("pca", [&] { return out.pca->project(prepared); });
  } else {
    features = prepared;
  }

  out.var = staged("var", [&] { return fit_var(features, lag, config.ridge_var); });
  const Matrix predicted = features.bottomRows(kept) - out.var.residuals;

  out.targets = prepared.bottomRows(kept);
  out.preimage = staged("preimage", [&] {
    return learn_preimage(out.targets, features.bottomRows(kept), config.ridge_preimage);
  });
  out.reconstruction = reconstruct(out.preimage, predicted);
  out.residual_variance = residual_variance_about(out.targets, out.reconstruction);
  return out;
}

ModelOutcome run_full_model(const TimeSeriesPanel& panel, const PipelineConfig& config) {
  check_length(panel.samples(), config.lag);
  return run_model(prepare(panel, config), config);
}

namespace {

// Fills delta/raw from per-node residual variances of the full model and
// of each leave-one-out model. Rows are the excluded (cause) node.
CausalGraph assemble(const TimeSeriesPanel& panel, const Vector& full,
                     const std::vector<Vector>& reduced) {
  const Eigen::Index n = panel.nodes();
  CausalGraph g;
  g.node_names = panel.node_names();
  g.delta = Matrix::Zero(n, n);
  g.raw_log_ratios = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector& r = reduced[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const Eigen::Index jr = j < i ? j : j - 1;
      try {
        g.delta(i, j) = causality_index(r[jr], full[j]);
      } catch (const Error& e) {
        throw e.with_stage("index " + panel.node_names()[static_cast<std::size_t>(i)] + "->" +
                           panel.node_names()[static_cast<std::size_t>(j)]);
      }
      g.raw_log_ratios(i, j) = std::log(r[jr] / full[j]);
    }
  }
  return g;
}

// Runs body(i) for i in [0, n), in parallel when asked, and rethrows the
// lowest-index failure so errors do not depend on scheduling.
template <typename Body>
void for_each_node(Eigen::Index n, Execution execution, Body&& body) {
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n));
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (Eigen::Index i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
}

Error name_node(const Error& e, const TimeSeriesPanel& panel, Eigen::Index i) {
  return e.with_stage("model without '" + panel.node_names()[static_cast<std::size_t>(i)] + "'");
}

}  // namespace

CausalGraph infer_graph(const TimeSeriesPanel& panel, const PipelineConfig& config,
                        Execution execution) {
  config.validate();
  check_length(panel.samples(), config.lag);
  const Matrix prepared = prepare(panel, config);
  const ModelOutcome full = [&] {
    try {
      return run_model(prepared, config);
    } catch (const Error& e) {
      throw e.with_stage("full model");
    }
  }();

  const Eigen::Index n = panel.nodes();
  std::vector<Vector> reduced(static_cast<std::size_t>(n));
  for_each_node(n, execution, [&](Eigen::Index i) {
    try {
      reduced[static_cast<std::size_t>(i)] =
          run_model(drop_column(prepared, i), config).residual_variance;
    } catch (const Error& e) {
      throw name_node(e, panel, i);
    }
  });
  return assemble(panel, full.residual_variance, reduced);
}

CausalGraph linear_gc_baseline(const TimeSeriesPanel& panel, int lag) {
  check_length(panel.samples(), lag);
  const Matrix prepared = staged(
      "normalize", [&] { return normalize_columns(panel.values(), panel.node_names()); });
  const Vector full =
      staged("full model: var", [&] { return fit_var(prepared, lag, 0.0).residual_variance; });
  const Eigen::Index n = panel.nodes();
  std::vector<Vector> reduced(static_cast<std::size_t>(n));
  for_each_node(n, Execution::kSerial, [&](Eigen::Index i) {
    try {
      reduced[static_cast<std::size_t>(i)] =
          fit_var(drop_column(prepared, i), lag, 0.0).residual_variance;
    } catch (const Error& e) {
      throw name_node(e.with_stage("var"), panel, i);
    }
  });
  return assemble(panel, full, reduced);
}

}  // namespace pigc
