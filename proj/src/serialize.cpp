#include "pigc/serialize.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pigc/error.hpp"

namespace pigc {

using nlohmann::json;

namespace {

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_rows(const json& rows, Eigen::Index n, const char* field) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
    throw Error(ErrorKind::kShape, std::string(field) + " must have " + std::to_string(n) +
                                       " rows");
  }
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorKind::kShape, std::string(field) + " row " + std::to_string(i) +
                                         " must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

json graph_to_json(const CausalGraph& graph) {
  return json{{"node_names", graph.node_names},
              {"delta", matrix_rows(graph.delta)},
              {"raw_log_ratios", matrix_rows(graph.raw_log_ratios)}};
}

CausalGraph graph_from_json(const json& j) {
  try {
    CausalGraph g;
    g.node_names = j.at("node_names").get<std::vector<std::string>>();
    const auto n = static_cast<Eigen::Index>(g.node_names.size());
    g.delta = matrix_from_rows(j.at("delta"), n, "delta");
    g.raw_log_ratios = j.contains("raw_log_ratios")
                           ? matrix_from_rows(j.at("raw_log_ratios"), n, "raw_log_ratios")
                           : Matrix::Zero(n, n);
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("graph JSON: ") + e.what());
  }
}

void write_edge_csv(std::ostream& out, const CausalGraph& graph) {
  struct Edge {
    Eigen::Index cause, effect;
    double delta;
  };
  std::vector<Edge> edges;
  for (Eigen::Index i = 0; i < graph.delta.rows(); ++i)
    for (Eigen::Index j = 0; j < graph.delta.cols(); ++j)
      if (i != j) edges.push_back({i, j, graph.delta(i, j)});
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return a.delta > b.delta; });
  out << "cause,effect,delta\n";
  for (const auto& e : edges) {
    out << graph.node_names[static_cast<std::size_t>(e.cause)] << ','
        << graph.node_names[static_cast<std::size_t>(e.effect)] << ',' << format_double(e.delta)
        << '\n';
  }
}

json dataset_sidecar(const SyntheticDataset& data) {
  json gt = json::array();
  for (Eigen::Index i = 0; i < data.ground_truth.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < data.ground_truth.cols(); ++j) row.push_back(data.ground_truth(i, j));
    gt.push_back(std::move(row));
  }
  json params = json::object();
  for (const auto& [k, v] : data.params) params[k] = v;
  return json{{"generator_id", to_string(data.generator_id)},
              {"seed", data.seed},
              {"T", data.panel.samples()},
              {"node_names", data.panel.node_names()},
              {"ground_truth", gt},
              {"params", params}};
}

Eigen::MatrixXi ground_truth_from_sidecar(const json& j) {
  try {
    const auto& rows = j.at("ground_truth");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXi g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != n) {
        throw Error(ErrorKind::kShape, "ground_truth must be square");
      }
      for (Eigen::Index k = 0; k < n; ++k) g(i, k) = row[static_cast<std::size_t>(k)].get<int>();
    }
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("sidecar JSON: ") + e.what());
  }
}

void write_records_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records) {
  out << "generator,method,T,seed,auc,status\n";
  for (const auto& r : records) {
    std::string status = r.auc ? "ok" : r.failure;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out << r.generator << ',' << r.method << ',' << r.samples << ',' << r.seed << ','
        << (r.auc ? format_double(*r.auc) : "") << ',' << status << '\n';
  }
}

std::vector<BenchmarkRecord> read_records_csv(std::istream& in) {
  std::vector<BenchmarkRecord> out;
  std::string line;
  std::getline(in, line);  // header
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() == 5) f.emplace_back();
    if (f.size() != 6) {
      throw Error(ErrorKind::kFormat, "records CSV row " + std::to_string(line_no) +
                                          " has " + std::to_string(f.size()) + " fields");
    }
    BenchmarkRecord r;
    r.generator = f[0];
    r.method = f[1];
    r.samples = std::stoi(f[2]);
    r.seed = std::stoull(f[3]);
    if (!f[4].empty()) {
      double v = 0.0;
      std::from_chars(f[4].data(), f[4].data() + f[4].size(), v);
      r.auc = v;
    } else {
      r.failure = f[5];
    }
    out.push_back(std::move(r));
  }
  return out;
}

json summaries_to_json(const std::vector<CellSummary>& summaries) {
  json cells = json::array();
  for (const auto& s : summaries) {
    json c{{"generator", s.generator}, {"method", s.method}, {"T", s.samples},
           {"count", s.count},         {"failures", s.failures}, {"omitted", s.omitted}};
    if (!s.omitted) {
      c["median"] = s.median;
      c["q25"] = s.q25;
      c["q75"] = s.q75;
      c["mean"] = s.mean;
      c["ci95_half_width"] = s.ci95_half_width;
    }
    cells.push_back(std::move(c));
  }
  return json{{"summaries", cells}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, "'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path + "'");
}

}  // namespace pigc
