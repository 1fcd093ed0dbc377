// pigc: command-line front end for pre-image Granger causality.
//
//   pigc infer DATA.csv [--config FILE] [--out DIR]
//   pigc synth GENERATOR --T N --seed S [--out DIR]
//   pigc bench --config FILE [--out DIR] [--jobs N] [--dry-run]
//   pigc eval GRAPH.json SIDECAR.json
//
// Exit codes: 0 success, 1 runtime/numerical failure, 2 usage/config error.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "pigc/bench.hpp"
#include "pigc/causality.hpp"
#include "pigc/config.hpp"
#include "pigc/error.hpp"
#include "pigc/serialize.hpp"
#include "pigc/synthgen.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(const pigc::Error& e) {
  switch (e.kind()) {
    case pigc::ErrorKind::kConfig:
    case pigc::ErrorKind::kIo:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::is_regular_file(path)) {
    throw UsageError(std::string(what) + " not found: '" + path + "'");
  }
}

int default_jobs() {
  if (const char* env = std::getenv("PREIMAGE_GC_JOBS")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (...) {
      throw UsageError(std::string("PREIMAGE_GC_JOBS must be an integer, got '") + env + "'");
    }
  }
  return 0;
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

int cmd_infer(const std::string& data_arg, const std::string& config_path,
              const std::string& out_arg, int jobs) {
  pigc::RunConfig cfg;
  if (!config_path.empty()) {
    require_file(config_path, "config");
    cfg = pigc::load_run_config(config_path);
  }
  const std::string data = !data_arg.empty() ? data_arg : cfg.data_path.value_or("");
  if (data.empty()) throw UsageError("no data file given (argument or 'data' config key)");
  require_file(data, "data file");
  const std::string out = !out_arg.empty() ? out_arg : cfg.out_dir.value_or(".");
  if (jobs > 0) omp_set_num_threads(jobs);

  const pigc::TimeSeriesPanel panel = [&] {
    try {
      return pigc::ingest_csv_file(data);
    } catch (const pigc::Error& e) {
      throw e.with_stage("parse");
    }
  }();
  const pigc::CausalGraph graph = pigc::infer_graph(panel, cfg.pipeline);

  std::ostringstream edges;
  pigc::write_edge_csv(edges, graph);
  pigc::write_text_file(join(out, "graph.json"), pigc::graph_to_json(graph).dump(2) + "\n");
  pigc::write_text_file(join(out, "edges.csv"), edges.str());

  Eigen::Index bi = 0, bj = 1;
  double best = -1.0;
  for (Eigen::Index i = 0; i < graph.delta.rows(); ++i)
    for (Eigen::Index j = 0; j < graph.delta.cols(); ++j)
      if (i != j && graph.delta(i, j) > best) {
        best = graph.delta(i, j);
        bi = i;
        bj = j;
      }
  std::cout << "top edge: " << graph.node_names[static_cast<std::size_t>(bi)] << " -> "
            << graph.node_names[static_cast<std::size_t>(bj)] << " (delta "
            << std::setprecision(6) << std::fixed << best << ")\n";
  return 0;
}

int cmd_synth(const std::string& generator, int samples, std::uint64_t seed,
              const std::string& out) {
  const auto id = pigc::parse_generator_id(generator);
  if (samples < 50) throw UsageError("--T must be >= 50, got " + std::to_string(samples));
  const auto data = pigc::generate(id, samples, seed);
  const std::string stem =
      generator + "_T" + std::to_string(samples) + "_seed" + std::to_string(seed);
  std::ostringstream csv;
  pigc::write_csv(csv, data.panel);
  pigc::write_text_file(join(out, stem + ".csv"), csv.str());
  pigc::write_text_file(join(out, stem + ".json"), pigc::dataset_sidecar(data).dump(2) + "\n");
  std::cout << "wrote " << join(out, stem + ".csv") << " and " << join(out, stem + ".json")
            << "\n";
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_arg, int jobs,
              bool dry_run) {
  require_file(config_path, "config");
  const pigc::RunConfig cfg = pigc::load_run_config(config_path);
  if (cfg.methods.empty()) throw UsageError("config defines no [method ...] sections");
  if (cfg.generators.empty()) throw UsageError("config key 'generators' is empty");
  if (cfg.samples.empty()) throw UsageError("config key 'T' is empty");
  if (cfg.seeds < 1) throw UsageError("config key 'seeds' must be >= 1");
  pigc::SweepSpec spec = cfg.sweep();
  if (jobs > 0) spec.jobs = jobs;

  if (dry_run) {
    std::cout << "cells: " << spec.cell_count() << "\n";
    return 0;
  }
  const std::string out = !out_arg.empty() ? out_arg : cfg.out_dir.value_or(".");

  const auto report = pigc::run_benchmark(
      spec, [](const pigc::BenchmarkRecord& r, std::size_t done, std::size_t total) {
        std::cerr << "[" << done << "/" << total << "] " << r.generator << " " << r.method
                  << " T=" << r.samples << " seed=" << r.seed << " ";
        if (r.auc) {
          std::cerr << "auc=" << std::setprecision(4) << std::fixed << *r.auc << "\n";
        } else {
          std::cerr << "FAILED: " << r.failure << "\n";
        }
      });
  std::ostringstream records;
  pigc::write_records_csv(records, report.records);
  pigc::write_text_file(join(out, "records.csv"), records.str());
  pigc::write_text_file(join(out, "summaries.json"),
                        pigc::summaries_to_json(report.summaries).dump(2) + "\n");

  for (const auto& s : report.summaries) {
    std::cout << std::left << std::setw(12) << s.generator << std::setw(10) << s.method
              << " T=" << std::setw(5) << s.samples;
    if (s.omitted) {
      std::cout << " (omitted: " << s.count << " successful)\n";
    } else {
      std::cout << std::fixed << std::setprecision(3) << " mean=" << s.mean
                << " median=" << s.median << " ci95=" << s.ci95_half_width << "\n";
    }
  }
  return 0;
}

int cmd_eval(const std::string& graph_path, const std::string& sidecar_path) {
  require_file(graph_path, "graph");
  require_file(sidecar_path, "sidecar");
  const auto graph = pigc::graph_from_json(pigc::read_json_file(graph_path));
  const auto truth = pigc::ground_truth_from_sidecar(pigc::read_json_file(sidecar_path));
  if (truth.rows() != graph.delta.rows()) {
    throw UsageError("graph has " + std::to_string(graph.delta.rows()) +
                     " nodes but ground truth has " + std::to_string(truth.rows()));
  }
  std::cout << std::fixed << std::setprecision(6) << pigc::graph_auc(graph.delta, truth) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear Granger causality with kernel PCA and learned pre-images"};
  app.require_subcommand(1);

  std::string config_path, out_dir, data_path, generator, graph_path, sidecar_path;
  int samples = 0;
  std::uint64_t seed = 0;
  int jobs = -1;
  bool dry_run = false;

  auto* infer = app.add_subcommand("infer", "Infer a causal graph from a CSV panel");
  infer->add_option("data", data_path, "CSV file: header of node names, one row per sample");
  infer->add_option("--config", config_path, "Run configuration file");
  infer->add_option("--out", out_dir, "Output directory for graph.json and edges.csv");
  infer->add_option("--jobs", jobs, "Worker threads (default: PREIMAGE_GC_JOBS or all cores)");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic benchmark panel");
  synth->add_option("generator", generator, "logistic2, fanout3, fanin3, linear5, nonlinear5")
      ->required();
  synth->add_option("--T", samples, "Number of samples")->required();
  synth->add_option("--seed", seed, "Random seed")->required();
  synth->add_option("--out", out_dir, "Output directory")->default_val(".");

  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep");
  bench->add_option("--config", config_path, "Sweep configuration file")->required();
  bench->add_option("--out", out_dir, "Output directory for records.csv and summaries.json");
  bench->add_option("--jobs", jobs, "Worker threads (default: PREIMAGE_GC_JOBS or all cores)");
  bench->add_flag("--dry-run", dry_run, "Print the cell count and exit");

  auto* eval = app.add_subcommand("eval", "ROC-AUC of a graph against a ground-truth sidecar");
  eval->add_option("graph", graph_path, "graph.json written by infer")->required();
  eval->add_option("sidecar", sidecar_path, "sidecar JSON written by synth")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (jobs < 0) jobs = default_jobs();
    if (*infer) return cmd_infer(data_path, config_path, out_dir, jobs);
    if (*synth) return cmd_synth(generator, samples, seed, out_dir);
    if (*bench) return cmd_bench(config_path, out_dir, jobs, dry_run);
    if (*eval) return cmd_eval(graph_path, sidecar_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pigc::Error& e) {
    std::cerr << "error (" << pigc::to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
