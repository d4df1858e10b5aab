#pragma once

// Two-sided bounds for E sup_n ||xi_n|| over independent centered Gaussian
// vectors in terms of m = sup_n E||xi_n|| and rho_Theta of the weak variances,
// plus the Monte Carlo estimate they are checked against.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <vector>

#include "besovbm/error.hpp"
#include "besovbm/orlicz.hpp"
#include "besovbm/parallel.hpp"
#include "besovbm/rng.hpp"
#include "besovbm/simulate.hpp"
#include "besovbm/spaces.hpp"
#include "besovbm/stats.hpp"

namespace besovbm::gaussmax {

/// Median of |N(0,1)|, i.e. the standard normal quantile at 3/4.
inline constexpr double kAbsNormalMedian = 0.6744897501960817;

inline double rho_theta(const orlicz::WeightSeq& sigma) {
  return orlicz::luxemburg_norm(orlicz::OrliczFunction::theta(), sigma);
}

/// m + 3 rho_Theta(sigma).
inline double upper_bound_mean(double m, const orlicz::WeightSeq& sigma) {
  require(m >= 0.0, "upper_bound_mean: m must be >= 0");
  return m + 3.0 * rho_theta(sigma);
}

/// M + 2 rho_Theta(sigma), with M the largest median.
inline double upper_bound_median(double median, const orlicz::WeightSeq& sigma) {
  require(median >= 0.0, "upper_bound_median: median must be >= 0");
  return median + 2.0 * rho_theta(sigma);
}

/// max(m, rho_Theta(sigma)/3).
inline double lower_bound(double m, const orlicz::WeightSeq& sigma) {
  require(m >= 0.0, "lower_bound: m must be >= 0");
  return std::max(m, rho_theta(sigma) / 3.0);
}

/// [((p-1)/e)^{(p-1)/2} sum sigma_n^{p+1}]^{1/(p+1)}, with 0^0 = 1 at p = 1.
/// Dominates rho_Theta(sigma) for every p >= 1.
inline double remark_bound(const orlicz::WeightSeq& sigma, double p) {
  require(p >= 1.0, "remark_bound: p must be >= 1");
  const double c = (p == 1.0) ? 1.0 : std::pow((p - 1.0) / std::numbers::e, 0.5 * (p - 1.0));
  double s = 0.0;
  for (double x : sigma.span()) s += std::pow(x, p + 1.0);
  if (s == 0.0) return 0.0;
  return std::pow(c * s, 1.0 / (p + 1.0));
}

struct EstimateReport {
  double estimate = 0.0;
  double ci_half_width = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double m = 0.0;        // sup_n E||xi_n||
  double rho = 0.0;      // rho_Theta of the weak variances
  double tolerance = 0.0;
  bool verdict = false;

  /// lower - ci - tol <= estimate <= upper + ci + tol.
  [[nodiscard]] bool within_bounds() const {
    return estimate >= lower_bound - ci_half_width - tolerance && estimate <= upper_bound + ci_half_width + tolerance;
  }
};

struct SupMeanOptions {
  std::size_t moment_samples = 100000;  // MC pass for non-scalar E||xi_n||
  unsigned workers = default_workers();
};

namespace detail {

/// E||xi|| for each variable: sigma sqrt(2/pi) when the variable is scalar,
/// otherwise a Monte Carlo pass. Variables proportional to one another share a
/// pass (E||c xi|| = c E||xi||).
inline std::vector<double> first_moments(const EnsembleSpec& ens, std::size_t samples, RngSeed seed, unsigned workers) {
  std::vector<double> m(ens.variables.size());
  std::map<std::pair<std::vector<double>, std::string>, double> cache;
  const double one[] = {1.0};
  for (std::size_t j = 0; j < ens.variables.size(); ++j) {
    const auto& v = ens.variables[j];
    const double top = v.sigma.max();
    if (top == 0.0) {
      m[j] = 0.0;
      continue;
    }
    if (v.is_scalar()) {
      m[j] = top * std::sqrt(2.0 / std::numbers::pi);
      continue;
    }
    std::vector<double> shape(v.sigma.entries());
    for (double& s : shape) s /= top;
    auto key = std::make_pair(shape, v.space.describe());
    auto it = cache.find(key);
    if (it == cache.end()) {
      GaussianVarSpec unit{v.space, orlicz::WeightSeq(shape)};
      const double value = mc_norm_moments(unit, one, samples, seed.substream(cache.size()), workers)[0];
      it = cache.emplace(std::move(key), value).first;
    }
    m[j] = top * it->second;
  }
  return m;
}

inline orlicz::WeightSeq weak_variances(const EnsembleSpec& ens) {
  std::vector<double> out;
  out.reserve(ens.variables.size());
  for (const auto& v : ens.variables) out.push_back(iw_norm(v.space, v.sigma.span()));
  return orlicz::WeightSeq(std::move(out));
}

} // namespace detail

/// Monte Carlo mean of sup_j ||xi_j|| with a 95% CI, and the analytic bounds.
/// Sample s draws every variable, in order, from substream s of `seed`; a
/// prefix ensemble therefore sees the same draws, which makes the estimate
/// pathwise monotone in the number of variables.
inline EstimateReport empirical_sup_mean(const EnsembleSpec& ens, std::size_t samples, RngSeed seed,
                                         const SupMeanOptions& opt = {}) {
  ens.validate();
  require(samples >= 100, "empirical_sup_mean: need at least 100 samples");
  const RngSeed draws = seed.substream(0);
  const RngSeed moments = seed.substream(1);

  std::vector<double> sups(samples);
  parallel_for(samples, opt.workers, [&](std::size_t s) {
    Engine eng = make_engine(draws.substream(s));
    double best = 0.0;
    Vector x;
    for (const auto& v : ens.variables) {
      x.resize(v.space.dim);
      sample_diag_gaussian(v, eng, x);
      best = std::max(best, space_norm(v.space, x));
    }
    sups[s] = best;
  });
  const MeanCi mc = mean_ci(sups);

  const auto m_n = detail::first_moments(ens, opt.moment_samples, moments, opt.workers);
  const auto sigma = detail::weak_variances(ens);

  EstimateReport r;
  r.estimate = mc.mean;
  r.ci_half_width = mc.ci_half_width;
  r.m = *std::max_element(m_n.begin(), m_n.end());
  r.rho = rho_theta(sigma);
  r.lower_bound = std::max(r.m, r.rho / 3.0);
  r.upper_bound = r.m + 3.0 * r.rho;
  r.verdict = r.within_bounds();
  return r;
}

/// empirical_sup_mean with the verdict taken at tolerance 1e-6.
inline EstimateReport sandwich_check(const EnsembleSpec& ens, std::size_t samples, RngSeed seed,
                                     const SupMeanOptions& opt = {}) {
  EstimateReport r = empirical_sup_mean(ens, samples, seed, opt);
  r.tolerance = 1e-6;
  r.verdict = r.within_bounds();
  return r;
}

/// Smallest M with P(X <= M) >= 1/2 over the empirical distribution.
inline double sample_median(std::vector<double> xs) {
  require(!xs.empty(), "sample_median: empty sample");
  const std::size_t idx = (xs.size() + 1) / 2 - 1;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(idx), xs.end());
  return xs[idx];
}

struct MedianBound {
  double median = 0.0;  // sup_n M(xi_n)
  double rho = 0.0;
  double upper_bound = 0.0;
};

/// The median route: M + 2 rho_Theta with medians analytic for scalar
/// variables and empirical otherwise.
inline MedianBound median_bound(const EnsembleSpec& ens, std::size_t samples, RngSeed seed,
                                unsigned workers = default_workers()) {
  ens.validate();
  MedianBound out;
  std::map<std::pair<std::vector<double>, std::string>, double> cache;  // median of the unit shape
  for (const auto& v : ens.variables) {
    const double top = v.sigma.max();
    double med = 0.0;
    if (top == 0.0) {
      med = 0.0;
    } else if (v.is_scalar()) {
      med = top * kAbsNormalMedian;
    } else {
      std::vector<double> shape(v.sigma.entries());
      for (double& s : shape) s /= top;
      auto key = std::make_pair(shape, v.space.describe());
      auto it = cache.find(key);
      if (it == cache.end()) {
        const GaussianVarSpec unit{v.space, orlicz::WeightSeq(shape)};
        const RngSeed sub = seed.substream(cache.size());
        std::vector<double> norms(samples);
        parallel_for(samples, workers, [&](std::size_t s) {
          Engine eng = make_engine(sub.substream(s));
          Vector x(unit.space.dim);
          sample_diag_gaussian(unit, eng, x);
          norms[s] = space_norm(unit.space, x);
        });
        it = cache.emplace(std::move(key), sample_median(std::move(norms))).first;
      }
      med = top * it->second;
    }
    out.median = std::max(out.median, med);
  }
  out.rho = rho_theta(detail::weak_variances(ens));
  out.upper_bound = out.median + 2.0 * out.rho;
  return out;
}

} // namespace besovbm::gaussmax
