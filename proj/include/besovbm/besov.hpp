#pragma once

// Path norms on the sampling grid: L^p norms, dyadic difference norms, the
// dyadic Besov seminorm and norm, and the exponential Orlicz / Orlicz-Besov
// norms. All integrals are left-endpoint Riemann sums over grid points.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "besovbm/error.hpp"
#include "besovbm/orlicz.hpp"
#include "besovbm/simulate.hpp"
#include "besovbm/spaces.hpp"

namespace besovbm::besov {

/// Finest admissible scale is depth - kScaleMargin, so each difference-norm
/// Riemann sum averages at least 64 increments.
inline constexpr int kScaleMargin = 6;

struct SubInterval {
  double a = 0.0;
  double b = 1.0;
};

struct BesovParams {
  double alpha = 0.5;
  double p = 2.0;
  double q = kInf;
  int n_max = 0;  // 0 selects depth - kScaleMargin
};

struct NormReport {
  double lp_part = 0.0;
  double seminorm_part = 0.0;
  double total = 0.0;
  std::vector<std::pair<int, double>> per_scale;  // (n, 2^{n alpha} ||f(.+2^-n) - f||_p)
};

inline int resolve_n_max(int n_max, int depth) {
  const int limit = depth - kScaleMargin;
  if (n_max == 0) n_max = limit;
  require(n_max >= 1, "n_max must be >= 1 (path depth " + std::to_string(depth) + " is too shallow)");
  require(n_max <= limit, "n_max = " + std::to_string(n_max) + " exceeds depth - " + std::to_string(kScaleMargin) +
                              " = " + std::to_string(limit));
  return n_max;
}

inline void validate(const BesovParams& params, int depth) {
  require(params.alpha > 0.0 && params.alpha < 1.0, "BesovParams: alpha must lie in (0,1)");
  require(params.p >= 1.0 && std::isfinite(params.p), "BesovParams: p must lie in [1, inf)");
  require(params.q >= 1.0, "BesovParams: q must lie in [1, inf]");
  resolve_n_max(params.n_max, depth);
}

namespace detail {

/// Grid index range [k0, k1) of points t_k in [a, b).
inline std::pair<std::size_t, std::size_t> grid_range(const PathSample& path, SubInterval iv) {
  require(0.0 <= iv.a && iv.a < iv.b && iv.b <= 1.0, "sub-interval must satisfy 0 <= a < b <= 1");
  const double ka = iv.a * static_cast<double>(path.intervals());
  const double kb = iv.b * static_cast<double>(path.intervals());
  require(ka == std::floor(ka) && kb == std::floor(kb), "sub-interval endpoints must lie on the sampling grid");
  return {static_cast<std::size_t>(ka), static_cast<std::size_t>(kb)};
}

inline std::vector<double> point_norms(const PathSample& path, std::size_t k0, std::size_t k1) {
  std::vector<double> out(k1 - k0);
  for (std::size_t k = k0; k < k1; ++k) out[k - k0] = space_norm(path.space(), path.at(k));
  return out;
}

inline std::vector<double> increment_norms(const PathSample& path, int n) {
  require(n >= 1 && n <= path.depth(), "dyadic scale n must lie in [1, depth]");
  const std::size_t shift = std::size_t{1} << (path.depth() - n);
  const std::size_t count = path.intervals() - shift;
  std::vector<double> out(count);
  const auto raw = path.raw();
  const std::size_t d = path.dim();
  if (d == 1) {
    for (std::size_t k = 0; k < count; ++k) out[k] = std::abs(raw[k + shift] - raw[k]);
    return out;
  }
  std::vector<double> diff(d);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < d; ++i) diff[i] = raw[(k + shift) * d + i] - raw[k * d + i];
    out[k] = space_norm(path.space(), diff);
  }
  return out;
}

/// (weight * sum r^p)^{1/p}; p = inf gives max r.
inline double power_mean(std::span<const double> r, double p, double weight) {
  double top = 0.0;
  for (double x : r) top = std::max(top, x);
  if (std::isinf(p) || top == 0.0) return top;
  double s = 0.0;
  if (p == 1.0) {
    for (double x : r) s += x;
    return weight * s;
  }
  if (p == 2.0) {
    for (double x : r) s += (x / top) * (x / top);
  } else {
    for (double x : r) s += std::pow(x / top, p);
  }
  return top * std::pow(weight * s, 1.0 / p);
}

/// power_mean for every integer p in [1, p_max], by running products over
/// blocks of eight entries. A block stops once all its powers drop below
/// 1e-22 of the maximum, whose own term is 1; the dropped tail is below 1e-16
/// relative for up to 2^20 entries.
inline std::vector<double> integer_power_means(std::span<const double> r, int p_max, double weight) {
  constexpr std::size_t kLanes = 8;
  const auto pm = static_cast<std::size_t>(p_max);
  std::vector<double> out(pm, 0.0);
  double top = 0.0;
  for (double x : r) top = std::max(top, x);
  if (top == 0.0) return out;
  std::vector<double> acc(pm * kLanes, 0.0);
  for (std::size_t k0 = 0; k0 < r.size(); k0 += kLanes) {
    double x[kLanes] = {};
    for (std::size_t j = 0; j < kLanes && k0 + j < r.size(); ++j) x[j] = r[k0 + j] / top;
    double pw[kLanes];
    std::copy(x, x + kLanes, pw);
    for (std::size_t p = 0; p < pm; ++p) {
      double* a = acc.data() + p * kLanes;
      double big = 0.0;
      for (std::size_t j = 0; j < kLanes; ++j) {
        a[j] += pw[j];
        pw[j] *= x[j];
        big = std::max(big, pw[j]);
      }
      if (big < 1e-22) break;
    }
  }
  for (std::size_t p = 0; p < pm; ++p) {
    double s = 0.0;
    for (std::size_t j = 0; j < kLanes; ++j) s += acc[p * kLanes + j];
    out[p] = top * std::pow(weight * s, 1.0 / static_cast<double>(p + 1));
  }
  return out;
}

} // namespace detail

/// (2^-N sum_{t_k in [a,b)} ||f(t_k)||^p)^{1/p}; p = inf gives the max.
inline double lp_norm_path(const PathSample& path, double p, SubInterval iv = {}) {
  require(p >= 1.0, "lp_norm_path: p must be >= 1");
  const auto [k0, k1] = detail::grid_range(path, iv);
  const auto r = detail::point_norms(path, k0, k1);
  return detail::power_mean(r, p, path.step());
}

/// ||s -> f(s + 2^-n) - f(s)||_{L^p(0, 1 - 2^-n)} on the grid.
inline double dyadic_increment_lp(const PathSample& path, int n, double p) {
  require(p >= 1.0, "dyadic_increment_lp: p must be >= 1");
  const auto r = detail::increment_norms(path, n);
  return detail::power_mean(r, p, path.step());
}

/// 2^{n alpha} * dyadic_increment_lp(path, n, p) for n = 1..n_max.
inline std::vector<double> scale_profile(const PathSample& path, double alpha, double p, int n_max) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) out.push_back(std::exp2(n * alpha) * dyadic_increment_lp(path, n, p));
  return out;
}

/// l^q norm of a scale profile; q = inf gives the max.
inline double profile_seminorm(std::span<const double> profile, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double y : profile) m = std::max(m, y);
    return m;
  }
  double s = 0.0;
  for (double y : profile) s += std::pow(y, q);
  return std::pow(s, 1.0 / q);
}

/// Partial q-sums (sum_{n=1}^{m} y_n^q)^{1/q} for m = 1..size.
inline std::vector<double> partial_q_sums(std::span<const double> profile, double q) {
  require(q >= 1.0 && std::isfinite(q), "partial_q_sums: q must be finite and >= 1");
  std::vector<double> out;
  out.reserve(profile.size());
  double s = 0.0;
  for (double y : profile) {
    s += std::pow(y, q);
    out.push_back(std::pow(s, 1.0 / q));
  }
  return out;
}

/// Dyadic seminorm over n = 1..n_max; the n = 0 term vanishes since I(1) is empty.
inline double besov_seminorm(const PathSample& path, const BesovParams& params) {
  validate(params, path.depth());
  const int n_max = resolve_n_max(params.n_max, path.depth());
  return profile_seminorm(scale_profile(path, params.alpha, params.p, n_max), params.q);
}

inline NormReport besov_norm(const PathSample& path, const BesovParams& params) {
  validate(params, path.depth());
  const int n_max = resolve_n_max(params.n_max, path.depth());
  const auto profile = scale_profile(path, params.alpha, params.p, n_max);
  NormReport r;
  r.lp_part = lp_norm_path(path, params.p);
  r.seminorm_part = profile_seminorm(profile, params.q);
  r.total = r.lp_part + r.seminorm_part;
  for (int n = 1; n <= n_max; ++n) r.per_scale.emplace_back(n, profile[static_cast<std::size_t>(n - 1)]);
  return r;
}

/// L^p and dyadic-increment norms for every integer p in [1, p_max] and every
/// scale n in [1, n_max], computed in one pass per scale.
struct IntegerPProfile {
  int p_max = 0;
  int n_max = 0;
  std::vector<double> lp;                       // lp[p-1]
  std::vector<std::vector<double>> increments;  // increments[n-1][p-1], unweighted by 2^{n alpha}

  /// ||f||_{B^alpha_{p,inf}} for integer p.
  [[nodiscard]] double besov_total(int p, double alpha) const {
    require(p >= 1 && p <= p_max, "IntegerPProfile: p out of range");
    double semi = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      semi = std::max(semi, std::exp2(n * alpha) * increments[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(p - 1)]);
    }
    return lp[static_cast<std::size_t>(p - 1)] + semi;
  }

  /// sup_{p <= cap} p^{-1/beta} ||f||_{B^alpha_{p,inf}}.
  [[nodiscard]] double orlicz_besov(double alpha, double beta, int cap) const {
    require(cap >= 1 && cap <= p_max, "IntegerPProfile: p cap out of range");
    double best = 0.0;
    for (int p = 1; p <= cap; ++p) best = std::max(best, std::pow(p, -1.0 / beta) * besov_total(p, alpha));
    return best;
  }
};

inline IntegerPProfile integer_p_profile(const PathSample& path, int p_max, int n_max) {
  require(p_max >= 1, "integer_p_profile: p_max must be >= 1");
  IntegerPProfile prof;
  prof.p_max = p_max;
  prof.n_max = resolve_n_max(n_max, path.depth());
  const auto r = detail::point_norms(path, 0, path.intervals());
  prof.lp = detail::integer_power_means(r, p_max, path.step());
  for (int n = 1; n <= prof.n_max; ++n) {
    prof.increments.push_back(detail::integer_power_means(detail::increment_norms(path, n), p_max, path.step()));
  }
  return prof;
}

/// sup over integer p in [1, p_max] of p^{-1/beta} ||f||_{L^p(a,b)}.
inline double exp_orlicz_lp_norm(const PathSample& path, double beta, int p_max, SubInterval iv = {}) {
  require(beta > 0.0, "exp_orlicz_lp_norm: beta must be positive");
  require(p_max >= 8, "exp_orlicz_lp_norm: p_max must be >= 8");
  const auto [k0, k1] = detail::grid_range(path, iv);
  const auto norms = detail::integer_power_means(detail::point_norms(path, k0, k1), p_max, path.step());
  double best = 0.0;
  for (int p = 1; p <= p_max; ++p) best = std::max(best, std::pow(p, -1.0 / beta) * norms[static_cast<std::size_t>(p - 1)]);
  return best;
}

/// sup over integer p in [1, p_max] of p^{-1/beta} ||f||_{B^alpha_{p,inf}}.
inline double besov_orlicz_norm(const PathSample& path, double alpha, double beta, int p_max, int n_max = 0) {
  require(alpha > 0.0 && alpha < 1.0, "besov_orlicz_norm: alpha must lie in (0,1)");
  require(beta > 0.0, "besov_orlicz_norm: beta must be positive");
  require(p_max >= 1, "besov_orlicz_norm: p_max must be >= 1");
  return integer_p_profile(path, p_max, n_max).orlicz_besov(alpha, beta, p_max);
}

/// Luxemburg norm of t -> ||f(t)|| in L^{Phi_beta}(0,1) with Phi_beta = exp(x^beta) - 1.
inline double luxemburg_function_norm(const PathSample& path, double beta) {
  require(beta >= 1.0, "luxemburg_function_norm: beta must be >= 1");
  const auto r = detail::point_norms(path, 0, path.intervals());
  return orlicz::luxemburg_norm(orlicz::OrliczFunction::phi_beta(beta), r, path.step());
}

} // namespace besovbm::besov
