#pragma once

// Flat `key = value` experiment configuration with dotted keys. Lines starting
// with '#' are comments. Unknown keys are errors.
//
//   experiment.id = limit-scalar
//   space.kind    = finite_lq        # or truncated_lp
//   space.p       = 2                # 'inf' for the sup norm
//   space.dim     = 1
//   sigma         = 1
//   bm.depth      = 16
//   mc.paths      = 200
//   rng.seed      = 7
//
// Ensembles for the maximal experiment use ensemble.<id>.<field>, fields:
// space.kind, space.p, space.dim, base (coordinate sigma of one variable),
// count, profile (constant | geometric | spike), ratio, spike.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "besovbm/error.hpp"
#include "besovbm/parallel.hpp"
#include "besovbm/simulate.hpp"
#include "besovbm/spaces.hpp"

namespace besovbm::harness {

struct EnsembleConfig {
  std::string id;
  std::string space_kind = "finite_lq";
  double space_p = 2.0;
  std::size_t space_dim = 0;  // 0: length of base
  std::vector<double> base{1.0};
  std::size_t count = 1;
  std::string profile = "constant";
  double ratio = 0.9;
  double spike = 1.0;

  [[nodiscard]] SpaceSpec space() const;
  /// Variable j has coordinate sigma factor(j) * base with factor 1 (constant),
  /// ratio^{j+1} (geometric), or spike for j = 0 and 1 otherwise (spike).
  [[nodiscard]] EnsembleSpec build() const;
};

struct ExperimentConfig {
  std::string id = "experiment";
  std::string space_kind = "finite_lq";
  double space_p = 2.0;
  std::size_t space_dim = 0;  // 0: length of sigma
  std::vector<double> sigma{1.0};
  int depth = 16;
  std::vector<int> scales;      // empty: experiment default
  std::vector<double> p_list;   // empty: experiment default
  double alpha = 0.5;
  double q = 2.0;
  double beta = 2.0;
  int n_max = 0;                // 0: depth - 6
  int p_max = 64;
  std::size_t paths = 0;        // 0: experiment default
  std::size_t samples = 10000;
  std::size_t moment_samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = default_workers();
  std::vector<double> c_list{0.25, 0.0625, 0.015625};
  std::size_t net_size = 0;     // 0: 64 * dim, at least 2 * dim
  std::size_t positions = 5;
  double growth_threshold = 1.5;
  double growth_fraction = 0.95;
  int n_lo = 0;                 // 0: depth / 2
  int n_hi = 0;                 // 0: depth - 6
  double tau_slack = 0.9;
  std::vector<EnsembleConfig> ensembles;
  std::string out_csv;
  std::string out_json;
  std::string out_svg;

  [[nodiscard]] SpaceSpec space() const;
  [[nodiscard]] orlicz::WeightSeq sigma_seq() const { return orlicz::WeightSeq(sigma); }
  void validate() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "inf" || t == "infinity") return kInf;
  try {
    std::size_t used = 0;
    const double x = std::stod(t, &used);
    require(used == t.size(), "");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': expected a number, got '" + t + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  require(std::isfinite(x) && x == std::floor(x), "config key '" + key + "': expected an integer, got '" + v + "'");
  return static_cast<long long>(x);
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
  const long long x = parse_int(key, v);
  require(x >= 0, "config key '" + key + "': expected a nonnegative integer");
  return static_cast<std::size_t>(x);
}

inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (trim(cell).empty()) continue;
    out.push_back(parse_double(key, cell));
  }
  return out;
}

inline SpaceSpec make_space(const std::string& kind, double p, std::size_t dim) {
  if (kind == "finite_lq") return SpaceSpec::finite_lq(dim, p);
  if (kind == "truncated_lp") return SpaceSpec::truncated_lp(p, dim);
  throw std::invalid_argument("unknown space kind '" + kind + "' (expected finite_lq or truncated_lp)");
}

inline void set_ensemble_field(EnsembleConfig& e, const std::string& field, const std::string& key,
                               const std::string& value) {
  if (field == "space.kind") {
    e.space_kind = trim(value);
  } else if (field == "space.p") {
    e.space_p = parse_double(key, value);
  } else if (field == "space.dim") {
    e.space_dim = parse_count(key, value);
  } else if (field == "base") {
    e.base = parse_list(key, value);
  } else if (field == "count") {
    e.count = parse_count(key, value);
  } else if (field == "profile") {
    e.profile = trim(value);
  } else if (field == "ratio") {
    e.ratio = parse_double(key, value);
  } else if (field == "spike") {
    e.spike = parse_double(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

} // namespace detail

inline SpaceSpec EnsembleConfig::space() const {
  return detail::make_space(space_kind, space_p, space_dim == 0 ? std::max<std::size_t>(1, base.size()) : space_dim);
}

inline EnsembleSpec EnsembleConfig::build() const {
  require(count >= 1, "ensemble '" + id + "': count must be >= 1");
  require(profile == "constant" || profile == "geometric" || profile == "spike",
          "ensemble '" + id + "': unknown profile '" + profile + "'");
  const SpaceSpec s = space();
  EnsembleSpec ens;
  double g = 1.0;
  for (std::size_t j = 0; j < count; ++j) {
    double factor = 1.0;
    if (profile == "geometric") {
      g *= ratio;
      factor = g;
    } else if (profile == "spike") {
      factor = (j == 0) ? spike : 1.0;
    }
    std::vector<double> sig(base);
    for (double& x : sig) x *= factor;
    ens.variables.push_back({s, orlicz::WeightSeq(std::move(sig))});
  }
  ens.validate();
  return ens;
}

inline SpaceSpec ExperimentConfig::space() const {
  return detail::make_space(space_kind, space_p, space_dim == 0 ? std::max<std::size_t>(1, sigma.size()) : space_dim);
}

inline void ExperimentConfig::validate() const {
  const SpaceSpec s = space();
  require(sigma.size() <= s.dim, "config: sigma has more entries than space.dim");
  for (double x : sigma) require(x >= 0.0, "config: sigma entries must be nonnegative");
  require(depth >= 1 && depth <= kMaxDepth, "config: bm.depth must lie in [1, 24]");
  for (int n : scales) {
    require(n >= 1 && n <= depth - 6, "config: bm.scales entries must lie in [1, depth - 6]");
  }
  for (double p : p_list) require(p >= 1.0 && std::isfinite(p), "config: besov.p_list entries must be finite and >= 1");
  require(alpha > 0.0 && alpha < 1.0, "config: besov.alpha must lie in (0,1)");
  require(q >= 1.0, "config: besov.q must be >= 1");
  require(beta > 0.0, "config: besov.beta must be positive");
  require(n_max >= 0 && n_max <= depth - 6, "config: besov.n_max must lie in [0, depth - 6]");
  require(p_max >= 8, "config: besov.p_max must be >= 8");
  require(n_lo >= 0 && n_hi >= 0, "config: divergence scales must be nonnegative");
  require(workers >= 1, "config: run.workers must be >= 1");
  for (const auto& e : ensembles) (void)e.build();
}

inline void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  using namespace detail;
  static const std::string kEnsemble = "ensemble.";
  if (key.rfind(kEnsemble, 0) == 0) {
    const std::string rest = key.substr(kEnsemble.size());
    const auto dot = rest.find('.');
    require(dot != std::string::npos && dot > 0, "malformed ensemble key '" + key + "'");
    const std::string id = rest.substr(0, dot);
    auto it = std::find_if(cfg.ensembles.begin(), cfg.ensembles.end(), [&](const auto& e) { return e.id == id; });
    if (it == cfg.ensembles.end()) {
      cfg.ensembles.push_back(EnsembleConfig{});
      cfg.ensembles.back().id = id;
      it = cfg.ensembles.end() - 1;
    }
    set_ensemble_field(*it, rest.substr(dot + 1), key, value);
    return;
  }
  if (key == "experiment.id") {
    cfg.id = trim(value);
  } else if (key == "space.kind") {
    cfg.space_kind = trim(value);
  } else if (key == "space.p") {
    cfg.space_p = parse_double(key, value);
  } else if (key == "space.dim") {
    cfg.space_dim = parse_count(key, value);
  } else if (key == "sigma") {
    cfg.sigma = parse_list(key, value);
  } else if (key == "bm.depth") {
    cfg.depth = static_cast<int>(parse_int(key, value));
  } else if (key == "bm.scales") {
    cfg.scales.clear();
    for (double x : parse_list(key, value)) {
      require(std::isfinite(x) && x == std::floor(x), "config key '" + key + "': scales must be integers");
      cfg.scales.push_back(static_cast<int>(x));
    }
  } else if (key == "besov.p_list") {
    cfg.p_list = parse_list(key, value);
  } else if (key == "besov.alpha") {
    cfg.alpha = parse_double(key, value);
  } else if (key == "besov.q") {
    cfg.q = parse_double(key, value);
  } else if (key == "besov.beta") {
    cfg.beta = parse_double(key, value);
  } else if (key == "besov.n_max") {
    cfg.n_max = static_cast<int>(parse_int(key, value));
  } else if (key == "besov.p_max") {
    cfg.p_max = static_cast<int>(parse_int(key, value));
  } else if (key == "mc.paths") {
    cfg.paths = parse_count(key, value);
  } else if (key == "mc.samples") {
    cfg.samples = parse_count(key, value);
  } else if (key == "mc.moment_samples") {
    cfg.moment_samples = parse_count(key, value);
  } else if (key == "rng.seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_count(key, value));
  } else if (key == "run.workers") {
    cfg.workers = static_cast<unsigned>(parse_count(key, value));
  } else if (key == "increment.c_list") {
    cfg.c_list = parse_list(key, value);
  } else if (key == "increment.net_size") {
    cfg.net_size = parse_count(key, value);
  } else if (key == "increment.positions") {
    cfg.positions = parse_count(key, value);
  } else if (key == "divergence.threshold") {
    cfg.growth_threshold = parse_double(key, value);
  } else if (key == "divergence.fraction") {
    cfg.growth_fraction = parse_double(key, value);
  } else if (key == "divergence.n_lo") {
    cfg.n_lo = static_cast<int>(parse_int(key, value));
  } else if (key == "divergence.n_hi") {
    cfg.n_hi = static_cast<int>(parse_int(key, value));
  } else if (key == "tau.slack") {
    cfg.tau_slack = parse_double(key, value);
  } else if (key == "output.csv") {
    cfg.out_csv = trim(value);
  } else if (key == "output.json") {
    cfg.out_json = trim(value);
  } else if (key == "output.svg") {
    cfg.out_svg = trim(value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

inline ExperimentConfig parse_config(std::istream& is, ExperimentConfig cfg = {}) {
  std::string line;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, "config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    require(!key.empty(), "config line " + std::to_string(line_no) + ": empty key");
    require(seen.insert(key).second, "config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    try {
      apply_config_line(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig cfg = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in, std::move(cfg));
}

} // namespace besovbm::harness
