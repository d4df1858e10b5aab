#pragma once

// Young-type functions, modulars, and the Luxemburg / Orlicz norms of finite
// nonnegative sequences (counting measure, optionally with a uniform weight per
// atom so that Riemann sums over a grid reuse the same code).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "besovbm/error.hpp"

namespace besovbm::orlicz {

enum class Kind { Theta, PhiBeta, Custom };

/// x^2 exp(-1/(2x^2)), extended by 0 at the origin.
inline double theta_eval(double x) {
  require(x >= 0.0, "theta_eval: negative argument");
  if (x == 0.0) return 0.0;
  const double x2 = x * x;
  return x2 * std::exp(-0.5 / x2);
}

/// exp(|x|^beta) - 1.
inline double phi_beta_eval(double beta, double x) {
  return std::expm1(std::pow(std::abs(x), beta));
}

class OrliczFunction {
 public:
  static OrliczFunction theta() {
    return OrliczFunction(Kind::Theta, 0.0, true, "theta", [](double x) { return theta_eval(x); });
  }

  static OrliczFunction phi_beta(double beta) {
    require(beta > 0.0, "phi_beta: beta must be positive");
    // exp(x^beta)-1 is convex only for beta >= 1
    return OrliczFunction(Kind::PhiBeta, beta, beta >= 1.0, "phi_beta",
                          [beta](double x) { return phi_beta_eval(beta, x); });
  }

  static OrliczFunction custom(std::function<double(double)> f, bool convex, std::string name = "custom") {
    require(static_cast<bool>(f), "custom Orlicz function: empty evaluator");
    require(f(0.0) == 0.0, "custom Orlicz function must vanish at 0");
    return OrliczFunction(Kind::Custom, 0.0, convex, std::move(name), std::move(f));
  }

  double operator()(double x) const {
    require(x >= 0.0, "Orlicz function evaluated at a negative argument");
    return eval_(x);
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] bool convex() const { return convex_; }
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  OrliczFunction(Kind kind, double beta, bool convex, std::string name, std::function<double(double)> eval)
      : kind_(kind), beta_(beta), convex_(convex), name_(std::move(name)), eval_(std::move(eval)) {}

  Kind kind_;
  double beta_;
  bool convex_;
  std::string name_;
  std::function<double(double)> eval_;
};

/// Finite truncation of a nonnegative sequence (a_n) or (sigma_n).
class WeightSeq {
 public:
  WeightSeq() = default;
  WeightSeq(std::initializer_list<double> xs) : WeightSeq(std::vector<double>(xs)) {}
  explicit WeightSeq(std::vector<double> xs) : entries_(std::move(xs)) {
    for (double x : entries_) require(x >= 0.0 && std::isfinite(x), "WeightSeq entries must be finite and >= 0");
  }

  [[nodiscard]] std::span<const double> span() const { return entries_; }
  [[nodiscard]] const std::vector<double>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] double max() const {
    return entries_.empty() ? 0.0 : *std::max_element(entries_.begin(), entries_.end());
  }
  double operator[](std::size_t i) const { return entries_[i]; }

  [[nodiscard]] WeightSeq scaled(double c) const {
    require(c >= 0.0, "WeightSeq::scaled: negative factor");
    std::vector<double> out(entries_);
    for (double& x : out) x *= c;
    return WeightSeq(std::move(out));
  }

 private:
  std::vector<double> entries_;
};

inline constexpr double kBisectionTol = 1e-9;
inline constexpr double kMinimizeTol = 1e-8;

namespace detail {

inline double max_entry(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, x);
  return m;
}

inline double modular_unchecked(const OrliczFunction& phi, std::span<const double> a, double delta, double weight) {
  double sum = 0.0;
  for (double x : a) {
    if (x == 0.0) continue;
    sum += phi(x / delta);
  }
  return weight * sum;
}

} // namespace detail

/// sum_n weight * phi(a_n / delta).
inline double modular(const OrliczFunction& phi, std::span<const double> a, double delta, double weight = 1.0) {
  require(delta > 0.0, "modular: delta must be positive");
  require(weight > 0.0, "modular: weight must be positive");
  return detail::modular_unchecked(phi, a, delta, weight);
}

inline double modular(const OrliczFunction& phi, const WeightSeq& a, double delta) {
  return modular(phi, a.span(), delta);
}

/// inf{delta > 0 : modular(a/delta) <= 1}. The modular is nonincreasing in
/// delta, so after bracketing the root is found by bisection. The returned
/// value is the feasible end of the final bracket.
inline double luxemburg_norm(const OrliczFunction& phi, std::span<const double> a, double weight = 1.0) {
  require(weight > 0.0, "luxemburg_norm: weight must be positive");
  for (double x : a) require(x >= 0.0, "luxemburg_norm: entries must be nonnegative");
  const double top = detail::max_entry(a);
  if (top == 0.0) return 0.0;

  auto m = [&](double d) { return detail::modular_unchecked(phi, a, d, weight); };

  double lo = top / 10.0;
  for (int i = 0; i < 2000 && m(lo) <= 1.0; ++i) {
    lo *= 0.5;
    if (lo == 0.0) return 0.0;
  }
  double hi = top;
  int grow = 0;
  while (m(hi) > 1.0) {
    hi *= 2.0;
    require(++grow < 2000 && std::isfinite(hi), "luxemburg_norm: modular does not decay; not an Orlicz function?");
  }
  lo = std::min(lo, hi);

  while (hi - lo > kBisectionTol * std::min(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (m(mid) <= 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

inline double luxemburg_norm(const OrliczFunction& phi, const WeightSeq& a) {
  return luxemburg_norm(phi, a.span());
}

/// inf_{delta>0} (1/delta)(1 + M_phi(delta a)).
///
/// The norm is positively homogeneous, so the sequence is first rescaled to
/// unit Luxemburg norm; the minimizer then lies at delta >= 1/2 and the log grid
/// on [1e-6, 1e6] comfortably contains it. The infimand is not assumed unimodal:
/// a 2001-point log grid is scanned and golden-section search refines around the
/// best grid point.
inline double orlicz_norm(const OrliczFunction& phi, std::span<const double> a) {
  for (double x : a) require(x >= 0.0, "orlicz_norm: entries must be nonnegative");
  const double rho = luxemburg_norm(phi, a);
  if (rho == 0.0) return 0.0;

  std::vector<double> b(a.begin(), a.end());
  for (double& x : b) x /= rho;

  auto objective = [&](double log_delta) {
    const double d = std::exp(log_delta);
    return (1.0 + detail::modular_unchecked(phi, b, 1.0 / d, 1.0)) / d;
  };

  constexpr int kGrid = 2001;
  const double u_lo = std::log(1e-6);
  const double u_hi = std::log(1e6);
  const double step = (u_hi - u_lo) / (kGrid - 1);
  int best_i = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double v = objective(u_lo + step * i);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }

  double left = u_lo + step * std::max(0, best_i - 1);
  double right = u_lo + step * std::min(kGrid - 1, best_i + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - inv_phi * (right - left);
  double x2 = left + inv_phi * (right - left);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (right - left > 1e-10) {
    if (f1 <= f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - inv_phi * (right - left);
      f1 = objective(x1);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + inv_phi * (right - left);
      f2 = objective(x2);
    }
  }
  best = std::min({best, f1, f2});
  return rho * best;
}

inline double orlicz_norm(const OrliczFunction& phi, const WeightSeq& a) {
  return orlicz_norm(phi, a.span());
}

/// (alpha^n)_{n=1..K}, with K extended until alpha^K < 1e-12 * alpha.
inline WeightSeq geometric_sequence(double alpha, std::size_t K) {
  require(alpha > 0.0 && alpha < 1.0, "geometric_sequence: alpha must lie in (0,1)");
  const auto needed = static_cast<std::size_t>(std::ceil(std::log(1e-12) / std::log(alpha))) + 2;
  K = std::max(K, needed);
  std::vector<double> a(K);
  double v = alpha;
  for (std::size_t n = 0; n < K; ++n, v *= alpha) a[n] = v;
  return WeightSeq(std::move(a));
}

/// rho_Theta((alpha^n)) / sqrt(log(1/(1-alpha))).
inline double geometric_rho_ratio(double alpha, std::size_t K = 0) {
  require(alpha >= 0.5 && alpha < 1.0, "geometric_rho_ratio: alpha must lie in [1/2, 1)");
  const WeightSeq a = geometric_sequence(alpha, K);
  return luxemburg_norm(OrliczFunction::theta(), a) / std::sqrt(std::log(1.0 / (1.0 - alpha)));
}

} // namespace besovbm::orlicz
