#include "pigc/synthgen.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "pigc/error.hpp"

namespace pigc {

std::string to_string(GeneratorId id) {
  switch (id) {
    case GeneratorId::kLogistic2: return "logistic2";
    case GeneratorId::kFanout3: return "fanout3";
    case GeneratorId::kFanin3: return "fanin3";
    case GeneratorId::kLinear5: return "linear5";
    case GeneratorId::kNonlinear5: return "nonlinear5";
  }
  return "unknown";
}

const std::vector<GeneratorId>& all_generators() {
  static const std::vector<GeneratorId> ids = {GeneratorId::kLogistic2, GeneratorId::kFanout3,
                                               GeneratorId::kFanin3, GeneratorId::kLinear5,
                                               GeneratorId::kNonlinear5};
  return ids;
}

GeneratorId parse_generator_id(const std::string& name) {
  for (auto id : all_generators())
    if (to_string(id) == name) return id;
  throw Error(ErrorKind::kConfig, "unknown generator '" + name +
                                      "' (expected logistic2, fanout3, fanin3, linear5, "
                                      "nonlinear5)");
}

GeneratorParams default_params(GeneratorId id) {
  switch (id) {
    case GeneratorId::kLogistic2:
      return {{"coupling", 0.4}, {"obs_noise", 0.01}, {"burn_in", 1000}};
    case GeneratorId::kFanout3:
      return {{"hub_ar", 0.5},          {"tanh_coupling", 0.7}, {"tanh_self", 0.3},
              {"square_coupling", 0.7}, {"square_self", -0.3},  {"noise", 0.1},
              {"burn_in", 1000}};
    case GeneratorId::kFanin3:
      return {{"root_ar", 0.5},         {"tanh_coupling", 0.5}, {"square_coupling", 0.5},
              {"sink_self", 0.2},       {"noise", 0.1},         {"burn_in", 1000}};
    case GeneratorId::kLinear5:
    case GeneratorId::kNonlinear5:
      return {{"self0", 0.5}, {"self1", 0.4}, {"self2", 0.3}, {"self3", 0.4},
              {"self4", 0.3}, {"c01", 0.5},   {"c12", 0.6},   {"c13", 0.5},
              {"c34", 0.6},   {"noise", 0.1}, {"burn_in", 1000}};
  }
  return {};
}

int generator_nodes(GeneratorId id) {
  switch (id) {
    case GeneratorId::kLogistic2: return 2;
    case GeneratorId::kFanout3:
    case GeneratorId::kFanin3: return 3;
    case GeneratorId::kLinear5:
    case GeneratorId::kNonlinear5: return 5;
  }
  return 0;
}

Eigen::MatrixXi generator_ground_truth(GeneratorId id) {
  const int n = generator_nodes(id);
  Eigen::MatrixXi g = Eigen::MatrixXi::Zero(n, n);
  switch (id) {
    case GeneratorId::kLogistic2:
      g(0, 1) = 1;
      break;
    case GeneratorId::kFanout3:
      g(0, 1) = g(0, 2) = 1;
      break;
    case GeneratorId::kFanin3:
      g(0, 2) = g(1, 2) = 1;
      break;
    case GeneratorId::kLinear5:
    case GeneratorId::kNonlinear5:
      g(0, 1) = g(1, 2) = g(1, 3) = g(3, 4) = 1;
      break;
  }
  return g;
}

std::vector<std::pair<int, int>> ground_truth_edges(const Eigen::MatrixXi& ground_truth) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < ground_truth.rows(); ++i)
    for (int j = 0; j < ground_truth.cols(); ++j)
      if (ground_truth(i, j) != 0) edges.emplace_back(i, j);
  return edges;
}

namespace {

/// One independent Gaussian stream per node, plus one for initial states.
class NoiseStreams {
 public:
  NoiseStreams(std::uint64_t seed, int nodes) {
    for (int k = 0; k <= nodes; ++k) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(k), 0x9e3779b9u};
      engines_.emplace_back(seq);
    }
  }
  double gaussian(int node, double sigma) {
    return sigma * std::normal_distribution<double>(0.0, 1.0)(engines_[node]);
  }
  double initial_uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engines_.back());
  }

 private:
  std::vector<std::mt19937_64> engines_;
};

std::string describe(const GeneratorParams& params) {
  std::ostringstream s;
  bool first = true;
  for (const auto& [k, v] : params) {
    s << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  return s.str();
}

double logistic(double u) { return 4.0 * u * (1.0 - u); }

double keep_open_unit(double u) {
  constexpr double kEps = 1e-12;
  return u < kEps ? kEps : (u > 1.0 - kEps ? 1.0 - kEps : u);
}

}  // namespace

SyntheticDataset generate(GeneratorId id, int samples, std::uint64_t seed,
                          const GeneratorParams& overrides) {
  if (samples < 50) {
    throw Error(ErrorKind::kInsufficientSamples,
                "synthetic series need T >= 50, got " + std::to_string(samples));
  }
  GeneratorParams p = default_params(id);
  for (const auto& [key, value] : overrides) {
    auto it = p.find(key);
    if (it == p.end()) {
      throw Error(ErrorKind::kConfig, "generator " + to_string(id) + " has no parameter '" +
                                          key + "'");
    }
    it->second = value;
  }
  const int burn_in = static_cast<int>(p.at("burn_in"));
  if (burn_in < 0) throw Error(ErrorKind::kConfig, "burn_in must be >= 0");

  const int n = generator_nodes(id);
  const int total = burn_in + samples;
  NoiseStreams noise(seed, n);
  Matrix y = Matrix::Zero(total, n);

  auto step = [&](int t) {
    const auto prev = [&](int node) { return y(t - 1, node); };
    switch (id) {
      case GeneratorId::kLogistic2: {
        const double c = p.at("coupling");
        y(t, 0) = keep_open_unit(logistic(prev(0)));
        y(t, 1) = keep_open_unit(logistic(c * prev(0) + (1.0 - c) * prev(1)));
        break;
      }
      case GeneratorId::kFanout3: {
        const double s = p.at("noise");
        y(t, 0) = p.at("hub_ar") * prev(0) + noise.gaussian(0, s);
        y(t, 1) = p.at("tanh_coupling") * std::tanh(prev(0)) + p.at("tanh_self") * prev(1) +
                  noise.gaussian(1, s);
        y(t, 2) = p.at("square_coupling") * prev(0) * prev(0) + p.at("square_self") * prev(2) +
                  noise.gaussian(2, s);
        break;
      }
      case GeneratorId::kFanin3: {
        const double s = p.at("noise");
        y(t, 0) = p.at("root_ar") * prev(0) + noise.gaussian(0, s);
        y(t, 1) = p.at("root_ar") * prev(1) + noise.gaussian(1, s);
        y(t, 2) = p.at("tanh_coupling") * std::tanh(prev(0)) +
                  p.at("square_coupling") * prev(1) * prev(1) + p.at("sink_self") * prev(2) +
                  noise.gaussian(2, s);
        break;
      }
      case GeneratorId::kLinear5:
      case GeneratorId::kNonlinear5: {
        const bool nonlinear = id == GeneratorId::kNonlinear5;
        const auto soft = [&](double u) { return nonlinear ? std::tanh(u) : u; };
        const auto square = [&](double u) { return nonlinear ? u * u : u; };
        const double s = p.at("noise");
        y(t, 0) = p.at("self0") * prev(0) + noise.gaussian(0, s);
        y(t, 1) = p.at("self1") * prev(1) + p.at("c01") * soft(prev(0)) + noise.gaussian(1, s);
        y(t, 2) = p.at("self2") * prev(2) + p.at("c12") * square(prev(1)) + noise.gaussian(2, s);
        y(t, 3) = p.at("self3") * prev(3) + p.at("c13") * soft(prev(1)) + noise.gaussian(3, s);
        y(t, 4) = p.at("self4") * prev(4) + p.at("c34") * square(prev(3)) + noise.gaussian(4, s);
        break;
      }
    }
  };

  if (id == GeneratorId::kLogistic2) {
    y(0, 0) = noise.initial_uniform(0.05, 0.95);
    y(0, 1) = noise.initial_uniform(0.05, 0.95);
  }
  for (int t = 1; t < total; ++t) {
    step(t);
    for (int k = 0; k < n; ++k) {
      if (!std::isfinite(y(t, k)) || std::abs(y(t, k)) >= 1e6) {
        throw Error(ErrorKind::kInstability, to_string(id) + " diverged at step " +
                                                 std::to_string(t) + " (node " +
                                                 std::to_string(k) + ") with " + describe(p));
      }
    }
  }

  Matrix window = y.bottomRows(samples);
  if (id == GeneratorId::kLogistic2) {
    const double s = p.at("obs_noise");
    for (int t = 0; t < samples; ++t)
      for (int k = 0; k < n; ++k) window(t, k) += noise.gaussian(k, s);
  }

  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("y" + std::to_string(k + 1));
  return SyntheticDataset{TimeSeriesPanel(std::move(window), std::move(names)),
                          generator_ground_truth(id), id, seed, std::move(p)};
}

}  // namespace pigc
