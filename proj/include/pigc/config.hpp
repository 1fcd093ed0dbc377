#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pigc/bench.hpp"
#include "pigc/causality.hpp"

namespace pigc {

/// Parsed run configuration.
///
/// The file is flat `key = value` text. `#` starts a comment. Top-level
/// keys configure the pipeline, I/O and the sweep grid; each
/// `[method NAME]` section defines one benchmark method and accepts the
/// pipeline keys plus `type = pipeline | linear_gc`. Unknown keys are
/// rejected.
struct RunConfig {
  PipelineConfig pipeline;
  std::optional<std::string> data_path;
  std::optional<std::string> out_dir;

  std::vector<GeneratorId> generators;
  std::vector<int> samples;
  int seeds = 50;
  std::uint64_t seed_base = 0;
  int jobs = 0;
  std::vector<MethodSpec> methods;

  SweepSpec sweep() const;
};

// `base_dir` resolves relative paths; pass "" to leave them untouched.
RunConfig parse_run_config(std::string_view text, const std::string& base_dir = "");
RunConfig load_run_config(const std::string& path);

}  // namespace pigc
