#include "pigc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <tuple>

#include <omp.h>

#include "pigc/error.hpp"

namespace pigc {

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorKind::kShape, "roc_auc: scores and labels differ in length");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average ranks (1-based) over tie groups.
  std::vector<double> rank(n);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    const double avg = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) rank[order[k]] = avg;
    start = end;
  }

  double positives = 0.0;
  double negatives = 0.0;
  double rank_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (labels[k] != 0 && labels[k] != 1) {
      throw Error(ErrorKind::kShape, "roc_auc: labels must be 0 or 1");
    }
    if (labels[k] == 1) {
      positives += 1.0;
      rank_sum += rank[k];
    } else {
      negatives += 1.0;
    }
  }
  if (positives == 0.0 || negatives == 0.0) {
    throw Error(ErrorKind::kUndefinedAuc, "roc_auc needs both positive and negative labels");
  }
  return (rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

double graph_auc(const Matrix& delta, const Eigen::MatrixXi& ground_truth) {
  if (delta.rows() != ground_truth.rows() || delta.cols() != ground_truth.cols() ||
      delta.rows() != delta.cols()) {
    throw Error(ErrorKind::kShape, "graph AUC: score matrix is " +
                                       std::to_string(delta.rows()) + "x" +
                                       std::to_string(delta.cols()) + ", ground truth " +
                                       std::to_string(ground_truth.rows()) + "x" +
                                       std::to_string(ground_truth.cols()));
  }
  std::vector<double> scores;
  std::vector<int> labels;
  for (Eigen::Index i = 0; i < delta.rows(); ++i)
    for (Eigen::Index j = 0; j < delta.cols(); ++j) {
      if (i == j) continue;
      scores.push_back(delta(i, j));
      labels.push_back(ground_truth(i, j) != 0 ? 1 : 0);
    }
  return roc_auc(scores, labels);
}

CausalGraph run_method(const MethodSpec& method, const TimeSeriesPanel& panel,
                       Execution execution) {
  if (method.kind == MethodKind::kLinearBaseline)
    return linear_gc_baseline(panel, method.config.lag);
  return infer_graph(panel, method.config, execution);
}

BenchmarkReport run_benchmark(const SweepSpec& spec, const ProgressFn& progress) {
  if (spec.methods.empty()) throw Error(ErrorKind::kConfig, "benchmark needs at least one method");
  if (spec.generators.empty()) {
    throw Error(ErrorKind::kConfig, "benchmark needs at least one generator");
  }
  if (spec.samples.empty()) throw Error(ErrorKind::kConfig, "benchmark needs at least one T");
  if (spec.seeds < 1) throw Error(ErrorKind::kConfig, "benchmark needs at least one seed");

  const std::size_t total = spec.cell_count();
  std::vector<BenchmarkRecord> records(total);
  std::size_t cell = 0;
  for (auto gen : spec.generators)
    for (const auto& method : spec.methods)
      for (int t : spec.samples)
        for (int s = 0; s < spec.seeds; ++s) {
          auto& r = records[cell++];
          r.generator = to_string(gen);
          r.method = method.name;
          r.samples = t;
          r.seed = spec.seed_base + static_cast<std::uint64_t>(s);
        }

  const std::size_t per_generator = spec.methods.size() * spec.samples.size() *
                                    static_cast<std::size_t>(spec.seeds);
  const std::size_t per_method = spec.samples.size() * static_cast<std::size_t>(spec.seeds);
  const int threads = spec.jobs > 0 ? spec.jobs : omp_get_max_threads();
  std::size_t done = 0;
  const auto n_cells = static_cast<std::ptrdiff_t>(total);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t c = 0; c < n_cells; ++c) {
    auto& r = records[static_cast<std::size_t>(c)];
    const auto& gen = spec.generators[static_cast<std::size_t>(c) / per_generator];
    const auto& method =
        spec.methods[(static_cast<std::size_t>(c) % per_generator) / per_method];
    try {
      const SyntheticDataset data = generate(gen, r.samples, r.seed);
      const CausalGraph graph = run_method(method, data.panel, Execution::kSerial);
      r.auc = graph_auc(graph.delta, data.ground_truth);
    } catch (const std::exception& e) {
      r.auc.reset();
      r.failure = e.what();
    }
#pragma omp critical(pigc_bench_progress)
    {
      ++done;
      if (progress) progress(r, done, total);
    }
  }

  BenchmarkReport report;
  report.records = std::move(records);
  report.summaries = summarize(report.records);
  return report;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw Error(ErrorKind::kShape, "quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<CellSummary> summarize(const std::vector<BenchmarkRecord>& records) {
  using Key = std::tuple<std::string, std::string, int>;
  std::vector<Key> order;
  std::map<Key, std::pair<std::vector<double>, int>> cells;
  for (const auto& r : records) {
    Key key{r.generator, r.method, r.samples};
    auto [it, inserted] = cells.try_emplace(key);
    if (inserted) order.push_back(key);
    if (r.auc) {
      it->second.first.push_back(*r.auc);
    } else {
      ++it->second.second;
    }
  }

  std::vector<CellSummary> out;
  out.reserve(order.size());
  for (const auto& key : order) {
    auto& [values, failures] = cells.at(key);
    CellSummary s;
    std::tie(s.generator, s.method, s.samples) = key;
    s.count = static_cast<int>(values.size());
    s.failures = failures;
    if (values.size() < 2) {
      s.omitted = true;
      out.push_back(s);
      continue;
    }
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    s.median = quantile_sorted(values, 0.5);
    s.q25 = quantile_sorted(values, 0.25);
    s.q75 = quantile_sorted(values, 0.75);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    if (values.front() != values.back())
      for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    s.ci95_half_width = 1.96 * sd / std::sqrt(n);
    out.push_back(s);
  }
  return out;
}

}  // namespace pigc
