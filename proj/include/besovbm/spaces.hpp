#pragma once

// Finite-dimensional Banach-space models (l^q on d coordinates, and the
// truncated diagonal l^p carrying the Gaussian examples), finite dual nets
// standing in for norming sequences, and diagonal weak variances.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "besovbm/error.hpp"
#include "besovbm/orlicz.hpp"
#include "besovbm/rng.hpp"

namespace besovbm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Vector = std::vector<double>;

enum class SpaceKind { FiniteLq, TruncatedLp };

struct SpaceSpec {
  SpaceKind kind = SpaceKind::FiniteLq;
  double exponent = 2.0;  // in [1, inf]; inf is the sup norm
  std::size_t dim = 1;

  static SpaceSpec finite_lq(std::size_t d, double q) { return checked({SpaceKind::FiniteLq, q, d}); }
  static SpaceSpec truncated_lp(double p, std::size_t D) { return checked({SpaceKind::TruncatedLp, p, D}); }
  static SpaceSpec scalar() { return finite_lq(1, 2.0); }

  void validate() const {
    require(dim >= 1, "SpaceSpec: dimension must be >= 1");
    require(exponent >= 1.0, "SpaceSpec: exponent must lie in [1, inf]");
  }

  /// Conjugate exponent q' with 1/q + 1/q' = 1.
  [[nodiscard]] double dual_exponent() const {
    if (exponent == 1.0) return kInf;
    if (std::isinf(exponent)) return 1.0;
    return exponent / (exponent - 1.0);
  }

  [[nodiscard]] std::string describe() const {
    const std::string e = std::isinf(exponent) ? "inf" : std::to_string(exponent);
    return std::string(kind == SpaceKind::FiniteLq ? "finite_lq" : "truncated_lp") + "(dim=" + std::to_string(dim) +
           ", exponent=" + e + ")";
  }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  static SpaceSpec checked(SpaceSpec s) {
    s.validate();
    return s;
  }
};

/// Plain l^q norm of a coordinate vector.
inline double lq_norm(std::span<const double> v, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (q == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  if (q == 2.0) {
    // scaled to avoid overflow for large coordinates
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x / m) * (x / m);
    return m * std::sqrt(s);
  }
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x) / m, q);
  return m * std::pow(s, 1.0 / q);
}

inline double space_norm(const SpaceSpec& space, std::span<const double> v) {
  require(v.size() == space.dim, "space_norm: vector length " + std::to_string(v.size()) +
                                     " does not match space dimension " + std::to_string(space.dim));
  if (space.dim == 1) return std::abs(v[0]);
  return lq_norm(v, space.exponent);
}

inline double dual_norm(const SpaceSpec& space, std::span<const double> functional) {
  require(functional.size() == space.dim, "dual_norm: dimension mismatch");
  return lq_norm(functional, space.dual_exponent());
}

inline double pairing(std::span<const double> v, std::span<const double> functional) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * functional[i];
  return s;
}

/// Finite family of unit-dual-norm functionals, stored row-major.
class DualNet {
 public:
  DualNet(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {
    require(dim_ >= 1 && data_.size() % dim_ == 0, "DualNet: storage is not a whole number of functionals");
  }

  [[nodiscard]] std::size_t size() const { return data_.size() / dim_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::span<const double> functional(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }

  /// max over the net of |<v, x*>|; a lower bound for the norm of v.
  [[nodiscard]] double max_pairing(std::span<const double> v) const {
    require(v.size() == dim_, "DualNet::max_pairing: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m = std::max(m, std::abs(pairing(v, functional(i))));
    return m;
  }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

/// The 2*dim signed coordinate functionals followed by (size - 2*dim) random
/// directions normalized to unit dual norm. Random directions alternate between
/// Gaussian directions and random sign patterns with random-power magnitudes; the
/// latter reach the flat faces of the l^inf dual ball that Gaussian directions
/// almost never approach.
inline DualNet dual_net(const SpaceSpec& space, std::size_t size, RngSeed seed) {
  space.validate();
  const std::size_t d = space.dim;
  require(size >= 2 * d, "dual_net: size must be at least 2*dim");
  std::vector<double> data;
  data.reserve(size * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (double sign : {1.0, -1.0}) {
      for (std::size_t j = 0; j < d; ++j) data.push_back(i == j ? sign : 0.0);
    }
  }
  Engine eng = make_engine(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> y(d);
  for (std::size_t r = 0; r < size - 2 * d; ++r) {
    double n = 0.0;
    while (n == 0.0) {
      if (r % 2 == 0) {
        for (double& x : y) x = normal(eng);
      } else {
        const double power = 0.5 * unif(eng);
        for (double& x : y) x = (unif(eng) < 0.5 ? -1.0 : 1.0) * std::pow(unif(eng), power);
      }
      n = dual_norm(space, y);
    }
    for (double x : y) data.push_back(x / n);
  }
  return DualNet(d, std::move(data));
}

/// Weak variance of xi = sum_n sigma_n gamma_n e_n in l^p: sup_n sigma_n for
/// p >= 2, and the l^r norm of sigma with r = 2p/(2-p) for 1 <= p < 2.
inline double diag_weak_variance(double p, std::span<const double> sigma) {
  require(p >= 1.0, "diag_weak_variance: exponent must be >= 1");
  for (double s : sigma) require(s >= 0.0, "diag_weak_variance: sigma entries must be nonnegative");
  if (sigma.empty()) return 0.0;
  if (p >= 2.0) return lq_norm(sigma, kInf);
  return lq_norm(sigma, 2.0 * p / (2.0 - p));
}

inline double diag_weak_variance(double p, const orlicz::WeightSeq& sigma) {
  return diag_weak_variance(p, sigma.span());
}

/// ||i_W|| = sigma(W(1)) for a diagonal Brownian motion in the given space.
inline double iw_norm(const SpaceSpec& space, std::span<const double> sigma) {
  space.validate();
  require(sigma.size() <= space.dim, "iw_norm: sigma longer than the space dimension");
  // one-dimensional spaces carry the absolute value whatever the exponent
  if (space.dim == 1) return sigma.empty() ? 0.0 : sigma[0];
  return diag_weak_variance(space.exponent, sigma);
}

/// (sum_n sigma_n^2 (x*_n)^2)^{1/2}: standard deviation of <xi, x*>.
inline double functional_std(std::span<const double> sigma, std::span<const double> functional) {
  double s = 0.0;
  for (std::size_t i = 0; i < sigma.size() && i < functional.size(); ++i) {
    s += sigma[i] * sigma[i] * functional[i] * functional[i];
  }
  return std::sqrt(s);
}

} // namespace besovbm
