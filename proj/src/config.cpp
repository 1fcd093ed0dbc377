#include "pigc/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "pigc/error.hpp"

namespace pigc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

Error config_error(std::size_t line, const std::string& message) {
  return Error(ErrorKind::kConfig, "config line " + std::to_string(line) + ": " + message);
}

double to_double(std::string_view v, std::size_t line, std::string_view key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw config_error(line, "'" + std::string(key) + "' expects a number, got '" +
                                 std::string(v) + "'");
  }
  return out;
}

long long to_integer(std::string_view v, std::size_t line, std::string_view key) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw config_error(line, "'" + std::string(key) + "' expects an integer, got '" +
                                 std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view v, std::size_t line, std::string_view key) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw config_error(line, "'" + std::string(key) + "' expects true/false");
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    auto comma = v.find(',', start);
    if (comma == std::string_view::npos) comma = v.size();
    const auto item = trim(v.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    start = comma + 1;
  }
  return out;
}

// Applies a pipeline key; false when the key is not a pipeline key.
bool apply_pipeline_key(PipelineConfig& c, std::string_view key, std::string_view value,
                        std::size_t line) {
  auto kernel = [&]() -> KernelFeatures& {
    if (!std::holds_alternative<KernelFeatures>(c.features)) {
      throw config_error(line, "'" + std::string(key) +
                                   "' is only valid for rbf, linear or polynomial kernels");
    }
    return std::get<KernelFeatures>(c.features);
  };
  if (key == "kernel") {
    if (value == "linear-identity") {
      c.features = LinearIdentity{};
      return true;
    }
    KernelFeatures k = std::holds_alternative<KernelFeatures>(c.features)
                           ? std::get<KernelFeatures>(c.features)
                           : KernelFeatures{};
    if (value == "rbf") {
      k.kind = KernelKind::kRbf;
    } else if (value == "linear") {
      k.kind = KernelKind::kLinear;
    } else if (value == "polynomial") {
      k.kind = KernelKind::kPolynomial;
    } else {
      throw config_error(line, "unknown kernel '" + std::string(value) +
                                   "' (rbf, linear, polynomial, linear-identity)");
    }
    c.features = k;
  } else if (key == "bandwidth") {
    if (value == "median") {
      kernel().bandwidth.reset();
    } else {
      kernel().bandwidth = to_double(value, line, key);
    }
  } else if (key == "degree") {
    kernel().degree = static_cast<int>(to_integer(value, line, key));
  } else if (key == "offset") {
    kernel().offset = to_double(value, line, key);
  } else if (key == "components") {
    c.components.rule = ComponentCount{static_cast<int>(to_integer(value, line, key))};
  } else if (key == "variance_fraction") {
    c.components.rule = VarianceFraction{to_double(value, line, key)};
  } else if (key == "max_components") {
    c.components.max_components = static_cast<int>(to_integer(value, line, key));
  } else if (key == "lag") {
    c.lag = static_cast<int>(to_integer(value, line, key));
  } else if (key == "ridge_var") {
    c.ridge_var = to_double(value, line, key);
  } else if (key == "ridge_preimage") {
    c.ridge_preimage = to_double(value, line, key);
  } else if (key == "ridge") {
    c.ridge_var = c.ridge_preimage = to_double(value, line, key);
  } else if (key == "normalize") {
    c.normalize_input = to_bool(value, line, key);
  } else {
    return false;
  }
  return true;
}

std::string resolve(const std::string& base_dir, std::string_view value) {
  std::filesystem::path p{std::string(value)};
  if (base_dir.empty() || p.is_absolute()) return p.lexically_normal().string();
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

SweepSpec RunConfig::sweep() const {
  SweepSpec s;
  s.generators = generators;
  s.methods = methods;
  s.samples = samples;
  s.seeds = seeds;
  s.seed_base = seed_base;
  s.jobs = jobs;
  return s;
}

RunConfig parse_run_config(std::string_view text, const std::string& base_dir) {
  RunConfig cfg;
  std::optional<std::size_t> section;
  std::set<std::string> seen_top;
  std::set<std::string> method_names;
  std::set<std::string> seen_in_section;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') throw config_error(line, "unterminated section header");
      const auto inner = trim(s.substr(1, s.size() - 2));
      if (inner.substr(0, 7) != "method ") {
        throw config_error(line, "unknown section '" + std::string(inner) +
                                     "' (expected [method NAME])");
      }
      const std::string name{trim(inner.substr(7))};
      if (name.empty()) throw config_error(line, "method section needs a name");
      if (!method_names.insert(name).second) {
        throw config_error(line, "duplicate method '" + name + "'");
      }
      MethodSpec m;
      m.name = name;
      m.config = cfg.pipeline;  // sections inherit top-level pipeline keys seen so far
      cfg.methods.push_back(m);
      section = cfg.methods.size() - 1;
      seen_in_section.clear();
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw config_error(line, "expected 'key = value'");
    const std::string key{trim(s.substr(0, eq))};
    const auto value = trim(s.substr(eq + 1));
    if (key.empty()) throw config_error(line, "empty key");

    if (section) {
      MethodSpec& method = cfg.methods[*section];
      if (!seen_in_section.insert(key).second) {
        throw config_error(line, "duplicate key '" + key + "' in method " + method.name);
      }
      if (key == "type") {
        if (value == "pipeline") {
          method.kind = MethodKind::kPipeline;
        } else if (value == "linear_gc") {
          method.kind = MethodKind::kLinearBaseline;
        } else {
          throw config_error(line, "unknown method type '" + std::string(value) +
                                       "' (pipeline, linear_gc)");
        }
      } else if (!apply_pipeline_key(method.config, key, value, line)) {
        throw config_error(line, "unknown key '" + key + "' in method " + method.name);
      }
      continue;
    }

    if (!seen_top.insert(key).second) throw config_error(line, "duplicate key '" + key + "'");
    if (apply_pipeline_key(cfg.pipeline, key, value, line)) continue;
    if (key == "data") {
      cfg.data_path = resolve(base_dir, value);
    } else if (key == "out") {
      cfg.out_dir = resolve(base_dir, value);
    } else if (key == "generators") {
      for (auto g : split_list(value)) cfg.generators.push_back(parse_generator_id(std::string(g)));
    } else if (key == "T") {
      for (auto t : split_list(value))
        cfg.samples.push_back(static_cast<int>(to_integer(t, line, key)));
    } else if (key == "seeds") {
      cfg.seeds = static_cast<int>(to_integer(value, line, key));
    } else if (key == "seed_base") {
      cfg.seed_base = static_cast<std::uint64_t>(to_integer(value, line, key));
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(to_integer(value, line, key));
    } else {
      throw config_error(line, "unknown key '" + key + "'");
    }
  }

  try {
    cfg.pipeline.validate();
    for (const auto& m : cfg.methods) m.config.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_run_config(text.str(), dir);
}

}  // namespace pigc
