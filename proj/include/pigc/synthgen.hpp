#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pigc/data.hpp"

namespace pigc {

enum class GeneratorId { kLogistic2, kFanout3, kFanin3, kLinear5, kNonlinear5 };

std::string to_string(GeneratorId id);
GeneratorId parse_generator_id(const std::string& name);
const std::vector<GeneratorId>& all_generators();

using GeneratorParams = std::map<std::string, double>;

// Every generator's full parameter record with its defaults.
GeneratorParams default_params(GeneratorId id);

// Node count and ground truth (row = cause) for a generator.
int generator_nodes(GeneratorId id);
Eigen::MatrixXi generator_ground_truth(GeneratorId id);

struct SyntheticDataset {
  TimeSeriesPanel panel;
  Eigen::MatrixXi ground_truth;
  GeneratorId generator_id;
  std::uint64_t seed = 0;
  GeneratorParams params;
};

// `overrides` may only name keys present in default_params(id).
SyntheticDataset generate(GeneratorId id, int samples, std::uint64_t seed,
                          const GeneratorParams& overrides = {});

std::vector<std::pair<int, int>> ground_truth_edges(const Eigen::MatrixXi& ground_truth);

}  // namespace pigc
