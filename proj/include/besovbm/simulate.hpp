#pragma once

// Exact-in-law sampling of diagonal Brownian motions on dyadic grids, diagonal
// Gaussian vectors, and Gaussian moment oracles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "besovbm/error.hpp"
#include "besovbm/orlicz.hpp"
#include "besovbm/parallel.hpp"
#include "besovbm/rng.hpp"
#include "besovbm/spaces.hpp"

namespace besovbm {

inline constexpr int kMaxDepth = 24;

/// Values of a path on the grid t_k = k 2^-depth, k = 0..2^depth, stored
/// row-major (one Vector per grid point).
class PathSample {
 public:
  PathSample(SpaceSpec space, int depth) : space_(space), depth_(depth) {
    space_.validate();
    require(depth >= 1 && depth <= kMaxDepth, "PathSample: depth must lie in [1, 24]");
    values_.assign(points() * space_.dim, 0.0);
  }

  /// Deterministic path t -> f(t) sampled on the grid.
  static PathSample from_function(SpaceSpec space, int depth, const std::function<Vector(double)>& f) {
    PathSample path(space, depth);
    for (std::size_t k = 0; k < path.points(); ++k) {
      const Vector v = f(path.time(k));
      require(v.size() == space.dim, "PathSample::from_function: value has wrong dimension");
      std::copy(v.begin(), v.end(), path.at(k).begin());
    }
    return path;
  }

  [[nodiscard]] const SpaceSpec& space() const { return space_; }
  [[nodiscard]] int depth() const { return depth_; }
  [[nodiscard]] std::size_t dim() const { return space_.dim; }
  [[nodiscard]] std::size_t intervals() const { return std::size_t{1} << depth_; }
  [[nodiscard]] std::size_t points() const { return intervals() + 1; }
  [[nodiscard]] double step() const { return std::ldexp(1.0, -depth_); }
  [[nodiscard]] double time(std::size_t k) const { return static_cast<double>(k) * step(); }

  [[nodiscard]] std::span<const double> at(std::size_t k) const {
    return std::span<const double>(values_).subspan(k * space_.dim, space_.dim);
  }
  std::span<double> at(std::size_t k) { return std::span<double>(values_).subspan(k * space_.dim, space_.dim); }

  [[nodiscard]] std::span<const double> raw() const { return values_; }

  [[nodiscard]] PathSample scaled(double c) const {
    PathSample out(*this);
    for (double& x : out.values_) x *= c;
    return out;
  }

  friend bool operator==(const PathSample&, const PathSample&) = default;

 private:
  SpaceSpec space_;
  int depth_;
  std::vector<double> values_;
};

/// xi = sum_n sigma_n gamma_n e_n in the given space.
struct GaussianVarSpec {
  SpaceSpec space;
  orlicz::WeightSeq sigma;

  void validate() const {
    space.validate();
    require(sigma.size() <= space.dim, "GaussianVarSpec: sigma longer than the space dimension");
  }

  /// At most one nonzero coordinate: the norm is then sigma |gamma| exactly.
  [[nodiscard]] bool is_scalar() const {
    std::size_t nonzero = 0;
    for (double s : sigma.span()) nonzero += (s != 0.0);
    return nonzero <= 1;
  }
};

/// Independent variables.
struct EnsembleSpec {
  std::vector<GaussianVarSpec> variables;

  void validate() const {
    require(!variables.empty(), "EnsembleSpec: ensemble is empty");
    for (const auto& v : variables) v.validate();
  }
};

/// Cumulative exact Gaussian increments: coordinate n of each increment has
/// variance 2^-depth sigma_n^2. values[0] = 0.
inline PathSample sample_bm(const SpaceSpec& space, std::span<const double> sigma, int depth, RngSeed seed) {
  require(depth >= 1 && depth <= kMaxDepth, "sample_bm: depth must lie in [1, 24]");
  require(sigma.size() <= space.dim, "sample_bm: sigma longer than the space dimension");
  for (double s : sigma) require(s >= 0.0, "sample_bm: sigma entries must be nonnegative");
  PathSample path(space, depth);
  const std::size_t d = space.dim;
  const double scale = std::sqrt(path.step());
  std::vector<double> sd(sigma.begin(), sigma.end());
  for (double& s : sd) s *= scale;

  Engine eng = make_engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> prev(d, 0.0);
  for (std::size_t k = 1; k < path.points(); ++k) {
    auto row = path.at(k);
    for (std::size_t i = 0; i < sd.size(); ++i) {
      prev[i] += sd[i] * normal(eng);
      row[i] = prev[i];
    }
  }
  return path;
}

inline PathSample sample_bm(const SpaceSpec& space, const orlicz::WeightSeq& sigma, int depth, RngSeed seed) {
  return sample_bm(space, sigma.span(), depth, seed);
}

/// One draw of xi into `out` (length = space dimension).
inline void sample_diag_gaussian(const GaussianVarSpec& spec, Engine& eng, std::span<double> out) {
  require(out.size() == spec.space.dim, "sample_diag_gaussian: output has wrong dimension");
  std::normal_distribution<double> normal;
  std::fill(out.begin(), out.end(), 0.0);
  const auto sigma = spec.sigma.span();
  for (std::size_t i = 0; i < sigma.size(); ++i) out[i] = sigma[i] * normal(eng);
}

inline Vector sample_diag_gaussian(const GaussianVarSpec& spec, RngSeed seed) {
  spec.validate();
  Engine eng = make_engine(seed);
  Vector out(spec.space.dim);
  sample_diag_gaussian(spec, eng, out);
  return out;
}

/// (E|N(0,1)|^p)^{1/p} = (2^{p/2} Gamma((p+1)/2) / sqrt(pi))^{1/p}.
inline double gaussian_abs_moment(double p) {
  require(p >= 1.0, "gaussian_abs_moment: p must be >= 1");
  const double log_moment = 0.5 * p * std::numbers::ln2 + std::lgamma(0.5 * (p + 1.0)) - 0.5 * std::log(std::numbers::pi);
  return std::exp(log_moment / p);
}

/// Monte Carlo estimate of (E||xi||^p)^{1/p} for each p in `ps`, from one shared
/// set of draws. Draw i uses substream i of `seed`.
inline std::vector<double> mc_norm_moments(const GaussianVarSpec& spec, std::span<const double> ps,
                                           std::size_t samples, RngSeed seed, unsigned workers = default_workers()) {
  spec.validate();
  require(samples >= 1, "mc_norm_moments: need at least one sample");
  std::vector<double> norms(samples);
  constexpr std::size_t kBlock = 1024;
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  parallel_for(blocks, workers, [&](std::size_t b) {
    Engine eng = make_engine(seed.substream(b));
    Vector x(spec.space.dim);
    for (std::size_t i = b * kBlock; i < std::min(samples, (b + 1) * kBlock); ++i) {
      sample_diag_gaussian(spec, eng, x);
      norms[i] = space_norm(spec.space, x);
    }
  });
  std::vector<double> out;
  out.reserve(ps.size());
  for (double p : ps) {
    double top = 0.0;
    for (double r : norms) top = std::max(top, r);
    if (top == 0.0) {
      out.push_back(0.0);
      continue;
    }
    double s = 0.0;
    for (double r : norms) s += std::pow(r / top, p);
    out.push_back(top * std::pow(s / static_cast<double>(samples), 1.0 / p));
  }
  return out;
}

/// Path as CSV with header k,t,coord_1..coord_d.
inline void write_path_csv(std::ostream& os, const PathSample& path) {
  os << "k,t";
  for (std::size_t i = 0; i < path.dim(); ++i) os << ",coord_" << (i + 1);
  os << '\n';
  char buf[64];
  for (std::size_t k = 0; k < path.points(); ++k) {
    os << k;
    std::snprintf(buf, sizeof buf, ",%.17g", path.time(k));
    os << buf;
    for (double x : path.at(k)) {
      std::snprintf(buf, sizeof buf, ",%.17g", x);
      os << buf;
    }
    os << '\n';
  }
}

/// Reads a CSV written by write_path_csv. The space exponent and kind come from
/// `space`; its dimension is replaced by the number of coordinate columns.
inline PathSample read_path_csv(std::istream& is, SpaceSpec space) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), "read_path_csv: empty input");
  std::size_t columns = 1;
  for (char c : line) columns += (c == ',');
  require(columns >= 3, "read_path_csv: expected columns k,t,coord_1..");
  const std::size_t dim = columns - 2;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    require(row.size() == columns, "read_path_csv: ragged row " + std::to_string(rows.size() + 1));
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  require(n >= 3 && ((n - 1) & (n - 2)) == 0, "read_path_csv: row count must be 2^N + 1");
  int depth = 0;
  while ((std::size_t{1} << depth) < n - 1) ++depth;
  space.dim = dim;
  PathSample path(space, depth);
  for (std::size_t k = 0; k < n; ++k) {
    require(static_cast<std::size_t>(rows[k][0]) == k, "read_path_csv: rows must be ordered by k");
    std::copy(rows[k].begin() + 2, rows[k].end(), path.at(k).begin());
  }
  return path;
}

} // namespace besovbm
