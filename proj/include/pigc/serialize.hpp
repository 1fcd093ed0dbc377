#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "pigc/bench.hpp"
#include "pigc/causality.hpp"
#include "pigc/synthgen.hpp"

namespace pigc {

// {"node_names": [...], "delta": [[...]], "raw_log_ratios": [[...]]}, rows = cause.
nlohmann::json graph_to_json(const CausalGraph& graph);
CausalGraph graph_from_json(const nlohmann::json& j);

// cause,effect,delta for every off-diagonal pair, sorted by delta
// descending; ties keep row-major order.
void write_edge_csv(std::ostream& out, const CausalGraph& graph);

// Sidecar for a synthetic panel: generator_id, seed, T, node_names,
// ground_truth (row = cause) and params.
nlohmann::json dataset_sidecar(const SyntheticDataset& data);
Eigen::MatrixXi ground_truth_from_sidecar(const nlohmann::json& j);

// generator,method,T,seed,auc,status ; auc empty and status = failure reason
// for failed cells.
void write_records_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records);
std::vector<BenchmarkRecord> read_records_csv(std::istream& in);

nlohmann::json summaries_to_json(const std::vector<CellSummary>& summaries);

nlohmann::json read_json_file(const std::string& path);
// Writes `content` to path, creating parent directories.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pigc
