#pragma once

// Experiment drivers. Each returns an ExperimentResult whose rows carry their
// own acceptance band, so every verdict can be recomputed from the emitted
// numbers. Paths are indexed; path i draws from substream i of the
// experiment's stream, so results do not depend on the worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "besovbm/besov.hpp"
#include "besovbm/error.hpp"
#include "besovbm/gaussmax.hpp"
#include "besovbm/harness/config.hpp"
#include "besovbm/harness/report.hpp"
#include "besovbm/parallel.hpp"
#include "besovbm/simulate.hpp"
#include "besovbm/spaces.hpp"
#include "besovbm/stats.hpp"

namespace besovbm::harness {

using PathSource = std::function<PathSample(std::size_t)>;

inline constexpr double kNoLower = -std::numeric_limits<double>::infinity();
inline constexpr double kNoUpper = std::numeric_limits<double>::infinity();

/// Stream tags keep experiments on disjoint random streams.
enum class Stream : std::uint64_t {
  Limit = 1,
  Divergence = 2,
  Moments = 3,
  Tau = 4,
  Increment = 5,
  Maximal = 6,
  Reference = 7,
  Net = 8,
};

inline RngSeed stream_seed(const ExperimentConfig& cfg, Stream s) {
  return RngSeed{cfg.seed, 0}.substream(static_cast<std::uint64_t>(s));
}

/// Brownian paths of the configured space and covariance; path i uses
/// substream i of the given stream.
inline PathSource bm_source(const ExperimentConfig& cfg, Stream s) {
  const SpaceSpec space = cfg.space();
  const std::vector<double> sigma = cfg.sigma;
  const int depth = cfg.depth;
  const RngSeed base = stream_seed(cfg, s);
  return [=](std::size_t i) { return sample_bm(space, sigma, depth, base.substream(i)); };
}

/// c_p = (E||W(1)||^p)^{1/p} for each p: sigma * gaussian_abs_moment(p) when W
/// has a single nonzero coordinate, otherwise Monte Carlo over
/// cfg.moment_samples draws of W(1).
inline std::vector<double> reference_moments(const ExperimentConfig& cfg, std::span<const double> ps) {
  const GaussianVarSpec w1{cfg.space(), cfg.sigma_seq()};
  std::vector<double> out;
  if (w1.is_scalar()) {
    const double s = w1.sigma.max();
    for (double p : ps) out.push_back(s * gaussian_abs_moment(p));
    return out;
  }
  return mc_norm_moments(w1, ps, cfg.moment_samples, stream_seed(cfg, Stream::Reference), cfg.workers);
}

namespace detail {

inline std::vector<double> or_default(const std::vector<double>& v, std::vector<double> fallback) {
  return v.empty() ? fallback : v;
}

inline std::size_t paths_or(const ExperimentConfig& cfg, std::size_t fallback) {
  return cfg.paths == 0 ? fallback : cfg.paths;
}

inline bool is_integer(double p) { return p == std::floor(p); }

inline double column_mean(const std::vector<std::vector<double>>& rows, std::size_t col, MeanCi* ci = nullptr) {
  std::vector<double> xs;
  xs.reserve(rows.size());
  for (const auto& r : rows) xs.push_back(r[col]);
  const MeanCi m = mean_ci(xs);
  if (ci) *ci = m;
  return m.mean;
}

} // namespace detail

/// Relative tolerance of the limit check at scale n: 2% at n = depth - 6,
/// widened by sqrt(2) per coarser scale (the per-path standard error of
/// Y_{n,p} scales like 2^{-n/2}).
inline double limit_tolerance(int n, int depth) {
  const int n_ref = depth - besov::kScaleMargin;
  return 0.02 * std::max(1.0, std::exp2(0.5 * (n_ref - n)));
}

/// Y_{n,p} = 2^{n/2} ||W(. + 2^-n) - W||_{L^p} averaged over paths, against c_p.
inline ExperimentResult run_limit_experiment(const ExperimentConfig& cfg, const PathSource& source = {}) {
  cfg.validate();
  const auto ps = detail::or_default(cfg.p_list, {1.0, 2.0, 4.0});
  std::vector<int> scales = cfg.scales;
  if (scales.empty()) {
    for (int n = std::min(4, cfg.depth - besov::kScaleMargin); n <= cfg.depth - besov::kScaleMargin; ++n) {
      if (n >= 1) scales.push_back(n);
    }
  }
  require(!scales.empty(), "bm-limit: no admissible scales (depth too small)");
  const std::size_t paths = detail::paths_or(cfg, 200);
  const PathSource src = source ? source : bm_source(cfg, Stream::Limit);

  // y[i][pi * scales + ni]
  std::vector<std::vector<double>> y(paths);
  parallel_for(paths, cfg.workers, [&](std::size_t i) {
    const PathSample path = src(i);
    auto& row = y[i];
    row.resize(ps.size() * scales.size());
    for (std::size_t ni = 0; ni < scales.size(); ++ni) {
      const int n = scales[ni];
      for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        row[pi * scales.size() + ni] = std::exp2(0.5 * n) * besov::dyadic_increment_lp(path, n, ps[pi]);
      }
    }
  });

  const auto c = reference_moments(cfg, ps);
  ExperimentResult res;
  res.id = cfg.id;
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    for (std::size_t ni = 0; ni < scales.size(); ++ni) {
      const int n = scales[ni];
      MeanCi m;
      detail::column_mean(y, pi * scales.size() + ni, &m);
      const double tol = limit_tolerance(n, cfg.depth);
      res.add("limit", {{"p", ps[pi]}, {"n", static_cast<double>(n)}, {"t", std::exp2(-n)}}, m.mean,
              m.ci_half_width, c[pi], c[pi] * (1.0 - tol), c[pi] * (1.0 + tol));
    }
  }
  return res;
}

/// Partial q-sums of the dyadic seminorm at alpha = 1/2 across n_max, and the
/// fraction of paths whose partial sum grows by the configured factor between
/// n_lo and n_hi.
inline ExperimentResult run_divergence_experiment(const ExperimentConfig& cfg, const PathSource& source = {}) {
  cfg.validate();
  require(std::isfinite(cfg.q), "divergence: q must be finite");
  const auto ps = detail::or_default(cfg.p_list, {2.0});
  const int n_hi = cfg.n_hi == 0 ? cfg.depth - besov::kScaleMargin : cfg.n_hi;
  const int n_lo = cfg.n_lo == 0 ? cfg.depth / 2 : cfg.n_lo;
  besov::resolve_n_max(n_hi, cfg.depth);
  require(n_lo >= 1 && n_lo < n_hi, "divergence: need 1 <= n_lo < n_hi");
  const std::size_t paths = detail::paths_or(cfg, 200);
  const PathSource src = source ? source : bm_source(cfg, Stream::Divergence);

  // per path, per p: n_hi partial sums followed by the growth factor
  const std::size_t stride = static_cast<std::size_t>(n_hi) + 1;
  std::vector<std::vector<double>> data(paths);
  parallel_for(paths, cfg.workers, [&](std::size_t i) {
    const PathSample path = src(i);
    auto& row = data[i];
    row.resize(ps.size() * stride);
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      const auto profile = besov::scale_profile(path, 0.5, ps[pi], n_hi);
      const auto sums = besov::partial_q_sums(profile, cfg.q);
      std::copy(sums.begin(), sums.end(), row.begin() + static_cast<std::ptrdiff_t>(pi * stride));
      const double lo = sums[static_cast<std::size_t>(n_lo - 1)];
      const double hi = sums[static_cast<std::size_t>(n_hi - 1)];
      row[pi * stride + static_cast<std::size_t>(n_hi)] = (lo == 0.0) ? (hi == 0.0 ? 1.0 : kNoUpper) : hi / lo;
    }
  });

  const auto c = reference_moments(cfg, ps);
  ExperimentResult res;
  res.id = cfg.id;
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    for (int m = 1; m <= n_hi; ++m) {
      MeanCi mc;
      detail::column_mean(data, pi * stride + static_cast<std::size_t>(m - 1), &mc);
      res.add("divergence.partial_sum", {{"p", ps[pi]}, {"q", cfg.q}, {"n_max", static_cast<double>(m)}}, mc.mean,
              mc.ci_half_width, c[pi] * std::pow(m, 1.0 / cfg.q));
    }
    std::vector<double> growth;
    for (const auto& row : data) growth.push_back(row[pi * stride + static_cast<std::size_t>(n_hi)]);
    const MeanCi g = mean_ci(growth);
    const std::vector<Param> span = {{"p", ps[pi]}, {"n_lo", static_cast<double>(n_lo)}, {"n_hi", static_cast<double>(n_hi)}};
    res.add("divergence.growth_mean", span, g.mean, g.ci_half_width,
            std::pow(static_cast<double>(n_hi) / n_lo, 1.0 / cfg.q));
    const double hits = static_cast<double>(
        std::count_if(growth.begin(), growth.end(), [&](double x) { return x >= cfg.growth_threshold; }));
    const double frac = hits / static_cast<double>(paths);
    const double ci = kZ95 * std::sqrt(frac * (1.0 - frac) / static_cast<double>(paths));
    res.add("divergence.growth_fraction", span, frac, ci, cfg.growth_fraction, cfg.growth_fraction, 1.0);
  }
  return res;
}

inline constexpr double kBesovRatioLow = 1.0;
inline constexpr double kBesovRatioHigh = 6.0;
inline constexpr double kBesovSpreadMax = 4.0;
inline constexpr double kOrliczRatioLow = 1.0;
inline constexpr double kOrliczRatioHigh = 10.0;
inline constexpr double kStabilityMax = 0.01;

/// E||W||_{B^{1/2}_{p,inf}} against c_p across p, and E||W||_{B^{1/2}_{Phi_2,inf}}
/// against E||W(1)||.
inline ExperimentResult run_moment_experiment(const ExperimentConfig& cfg, const PathSource& source = {}) {
  cfg.validate();
  const auto ps = detail::or_default(cfg.p_list, {1.0, 2.0, 4.0, 8.0});
  for (double p : ps) require(detail::is_integer(p) && p <= cfg.p_max, "moments: p_list entries must be integers <= p_max");
  const std::size_t paths = detail::paths_or(cfg, 200);
  const PathSource src = source ? source : bm_source(cfg, Stream::Moments);
  const int n_max = besov::resolve_n_max(cfg.n_max, cfg.depth);

  // per path: besov totals for each p, then Orlicz-Besov at p_max and 2 p_max
  std::vector<std::vector<double>> data(paths);
  parallel_for(paths, cfg.workers, [&](std::size_t i) {
    const PathSample path = src(i);
    const auto prof = besov::integer_p_profile(path, 2 * cfg.p_max, n_max);
    auto& row = data[i];
    for (double p : ps) row.push_back(prof.besov_total(static_cast<int>(p), cfg.alpha));
    row.push_back(prof.orlicz_besov(cfg.alpha, cfg.beta, cfg.p_max));
    row.push_back(prof.orlicz_besov(cfg.alpha, cfg.beta, 2 * cfg.p_max));
  });

  std::vector<double> moment_ps(ps);
  moment_ps.push_back(1.0);
  const auto c = reference_moments(cfg, moment_ps);
  const double first_moment = c.back();

  ExperimentResult res;
  res.id = cfg.id;
  std::vector<double> ratios;
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    MeanCi m;
    detail::column_mean(data, pi, &m);
    res.add("moments.besov", {{"p", ps[pi]}, {"n_max", static_cast<double>(n_max)}}, m.mean, m.ci_half_width, c[pi],
            kBesovRatioLow * c[pi], kBesovRatioHigh * c[pi]);
    ratios.push_back(safe_ratio(m.mean, c[pi]));
    res.add("moments.besov_sqrt_p", {{"p", ps[pi]}}, m.mean, m.ci_half_width, std::sqrt(ps[pi]) * first_moment);
  }
  const auto [rmin, rmax] = std::minmax_element(ratios.begin(), ratios.end());
  const double spread = (*rmin > 0.0) ? *rmax / *rmin : (*rmax == *rmin ? 1.0 : kNoUpper);
  res.add("moments.besov_spread", {{"p_min", ps.front()}, {"p_max", ps.back()}}, spread, 0.0, 1.0, 1.0,
          kBesovSpreadMax);

  MeanCi orl;
  detail::column_mean(data, ps.size(), &orl);
  res.add("moments.orlicz_besov", {{"beta", cfg.beta}, {"p_max", static_cast<double>(cfg.p_max)}}, orl.mean,
          orl.ci_half_width, first_moment, kOrliczRatioLow * first_moment, kOrliczRatioHigh * first_moment);

  double worst = 0.0;
  for (const auto& row : data) {
    const double a = row[ps.size()];
    const double b = row[ps.size() + 1];
    if (a > 0.0) worst = std::max(worst, (b - a) / a);
  }
  res.add("moments.orlicz_stability", {{"p_max", static_cast<double>(cfg.p_max)}}, worst, 0.0, 0.0, 0.0,
          kStabilityMax);
  return res;
}

/// Empirical minimum of ||W||_{B^{1/2}_{p,inf}} over paths against c_p; the
/// Phi_2 norm minimum is reported without a reference band.
inline ExperimentResult run_tau_experiment(const ExperimentConfig& cfg, const PathSource& source = {}) {
  cfg.validate();
  const auto ps = detail::or_default(cfg.p_list, {1.0, 2.0});
  const std::size_t paths = detail::paths_or(cfg, 500);
  require(paths >= 500, "tau: at least 500 paths are required");
  const PathSource src = source ? source : bm_source(cfg, Stream::Tau);
  const int n_max = besov::resolve_n_max(cfg.n_max, cfg.depth);

  std::vector<std::vector<double>> data(paths);
  parallel_for(paths, cfg.workers, [&](std::size_t i) {
    const PathSample path = src(i);
    const auto prof = besov::integer_p_profile(path, cfg.p_max, n_max);
    auto& row = data[i];
    for (double p : ps) {
      if (detail::is_integer(p) && p <= cfg.p_max) {
        row.push_back(prof.besov_total(static_cast<int>(p), cfg.alpha));
      } else {
        row.push_back(besov::besov_norm(path, {cfg.alpha, p, kInf, n_max}).total);
      }
    }
    row.push_back(prof.orlicz_besov(cfg.alpha, cfg.beta, cfg.p_max));
  });

  std::vector<double> moment_ps(ps);
  moment_ps.push_back(1.0);
  const auto c = reference_moments(cfg, moment_ps);

  ExperimentResult res;
  res.id = cfg.id;
  auto column_min = [&](std::size_t col) {
    double m = kNoUpper;
    for (const auto& row : data) m = std::min(m, row[col]);
    return m;
  };
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    res.add("tau.min_besov", {{"p", ps[pi]}, {"paths", static_cast<double>(paths)}}, column_min(pi), 0.0, c[pi],
            cfg.tau_slack * c[pi], kNoUpper);
    MeanCi m;
    detail::column_mean(data, pi, &m);
    res.add("tau.mean_besov", {{"p", ps[pi]}}, m.mean, m.ci_half_width, c[pi]);
  }
  res.add("tau.min_orlicz_besov", {{"beta", cfg.beta}, {"paths", static_cast<double>(paths)}}, column_min(ps.size()),
          0.0, c.back());
  return res;
}

/// E|h sum_{t_k in [a, a+c)} <W(t_k + c) - W(t_k), x*>|^2 / ||i_W^* x*||^2 on a
/// grid of step h = 2^-depth, from Cov(W(s), W(t)) = min(s, t). Pairs at equal
/// lag share a covariance, so the double sum collapses to a sum over lags.
inline double test_functional_kernel(int depth, double a, double c) {
  const double h = std::exp2(-depth);
  const auto m = static_cast<std::size_t>(std::llround(c / h));
  auto cov = [c](double s, double t) {
    return std::min(s + c, t + c) - std::min(s + c, t) - std::min(s, t + c) + std::min(s, t);
  };
  double sum = static_cast<double>(m) * cov(a, a);
  for (std::size_t d = 1; d < m; ++d) sum += 2.0 * static_cast<double>(m - d) * cov(a, a + static_cast<double>(d) * h);
  return h * h * sum;
}

inline void validate_shift(double c, int depth) {
  require(c > 0.0 && c <= 0.5, "increment-variance: c must lie in (0, 1/2]");
  const double j = -std::log2(c);
  require(j == std::floor(j), "increment-variance: c must be a power 2^-j");
  require(j <= depth, "increment-variance: c = 2^-j needs j <= depth");
}

/// Weak variance of W(. + c) - W in L^p(0, 1 - c; X): exact test-functional
/// values for f = 1_I (x) x*, their maximum over a dual net and interval
/// positions, and the Young-inequality upper value c^{1/2 + 1/p} ||i_W||.
inline ExperimentResult run_increment_variance_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto ps = detail::or_default(cfg.p_list, {1.0, 2.0, 4.0});
  const SpaceSpec space = cfg.space();
  const auto sigma = cfg.sigma_seq();
  for (double c : cfg.c_list) validate_shift(c, cfg.depth);
  require(cfg.positions >= 1, "increment-variance: need at least one interval position");

  const double sigma1 = sigma.empty() ? 0.0 : sigma[0];
  const double iw = iw_norm(space, sigma.span());
  const std::size_t net_size = cfg.net_size == 0 ? std::max<std::size_t>(64 * space.dim, 2 * space.dim) : cfg.net_size;
  const DualNet net = dual_net(space, net_size, stream_seed(cfg, Stream::Net));
  double best_functional = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    best_functional = std::max(best_functional, functional_std(sigma.span(), net.functional(i)) /
                                                    dual_norm(space, net.functional(i)));
  }

  // Monte Carlo cross-check of the raw second moment along x* = e_1.
  const std::size_t paths = detail::paths_or(cfg, 200);
  const PathSource src = bm_source(cfg, Stream::Increment);
  std::vector<std::vector<double>> z2(paths);
  parallel_for(paths, cfg.workers, [&](std::size_t i) {
    const PathSample path = src(i);
    const double h = path.step();
    for (double c : cfg.c_list) {
      const auto m = static_cast<std::size_t>(std::llround(c / h));
      double z = 0.0;
      for (std::size_t k = 0; k < m; ++k) z += path.at(k + m)[0] - path.at(k)[0];
      z *= h;
      z2[i].push_back(z * z);
    }
  });

  ExperimentResult res;
  res.id = cfg.id;
  for (std::size_t ci = 0; ci < cfg.c_list.size(); ++ci) {
    const double c = cfg.c_list[ci];
    const double kernel = test_functional_kernel(cfg.depth, 0.0, c);
    const double raw_ref = (2.0 / 3.0) * c * c * c * sigma1 * sigma1;
    res.add("increment.raw_second_moment", {{"c", c}, {"a", 0.0}}, kernel * sigma1 * sigma1, 0.0, raw_ref,
            raw_ref * 0.98, raw_ref * 1.02);
    MeanCi mc;
    detail::column_mean(z2, ci, &mc);
    res.add("increment.mc_second_moment", {{"c", c}, {"paths", static_cast<double>(paths)}}, mc.mean,
            mc.ci_half_width, kernel * sigma1 * sigma1);

    double best_kernel = 0.0;
    for (std::size_t j = 0; j < cfg.positions; ++j) {
      // positions a on the grid with [a, a + c] inside J = (0, 1 - c)
      const double room = 1.0 - 2.0 * c;
      double a = cfg.positions == 1 ? 0.0 : room * static_cast<double>(j) / static_cast<double>(cfg.positions - 1);
      a = std::floor(a * std::exp2(cfg.depth)) * std::exp2(-cfg.depth);
      best_kernel = std::max(best_kernel, test_functional_kernel(cfg.depth, a, c));
    }

    for (double p : ps) {
      const double inv_p = 1.0 / p;
      const double f_norm = std::pow(c, 1.0 - inv_p);  // ||1_I||_{L^{p'}} = c^{1/p'}
      const double young = std::pow(c, 0.5 + inv_p) * iw;
      const double closed = std::sqrt(2.0 / 3.0) * std::pow(c, 1.5) * sigma1 / f_norm;
      res.add("increment.test_functional", {{"c", c}, {"p", p}}, std::sqrt(kernel) * sigma1 / f_norm, 0.0, closed,
              closed * 0.98, closed * 1.02);
      const double net_lower = std::sqrt(best_kernel) * best_functional / f_norm;
      res.add("increment.net_lower", {{"c", c}, {"p", p}}, net_lower, 0.0, young, kNoLower, young + 1e-6);
      res.add("increment.young_upper", {{"c", c}, {"p", p}}, young, 0.0, std::numeric_limits<double>::quiet_NaN());
    }

    // sup_p p^{-1/2} c^{1/2 + 1/p} ||i_W|| against (log 1/c)^{-1/2} c^{1/2} ||i_W||
    double phi2 = 0.0;
    for (int p = 1; p <= cfg.p_max; ++p) phi2 = std::max(phi2, std::pow(p, -0.5) * std::pow(c, 0.5 + 1.0 / p) * iw);
    res.add("increment.phi2_scale", {{"c", c}, {"p_max", static_cast<double>(cfg.p_max)}}, phi2, 0.0,
            std::sqrt(c / std::log(1.0 / c)) * iw);
  }
  return res;
}

/// Ten ensembles spanning constant, geometric and spike profiles in l^1, l^2
/// and l^inf with at most 256 variables.
inline std::vector<EnsembleConfig> standard_ensembles() {
  auto make = [](std::string id, std::string kind, double p, std::vector<double> base, std::size_t count,
                 std::string profile, double ratio = 0.9, double spike = 1.0) {
    EnsembleConfig e;
    e.id = std::move(id);
    e.space_kind = std::move(kind);
    e.space_p = p;
    e.base = std::move(base);
    e.count = count;
    e.profile = std::move(profile);
    e.ratio = ratio;
    e.spike = spike;
    return e;
  };
  std::vector<double> harmonic16(16);
  for (std::size_t i = 0; i < 16; ++i) harmonic16[i] = 1.0 / static_cast<double>(i + 1);
  return {
      make("scalar-const-256", "finite_lq", 2.0, {1.0}, 256, "constant"),
      make("linf-scalar-geom-200", "finite_lq", kInf, {1.0}, 200, "geometric", 0.9),
      make("l1-const-64", "finite_lq", 1.0, {1.0, 1.0, 1.0, 1.0}, 64, "constant"),
      make("l2-geom-128", "finite_lq", 2.0, {1.0, 0.8, 0.6, 0.4, 0.3, 0.2, 0.1, 0.05}, 128, "geometric", 0.95),
      make("linf-const-32", "finite_lq", kInf, std::vector<double>(16, 1.0), 32, "constant"),
      make("l2-spike-128", "finite_lq", 2.0, {0.2, 0.2, 0.2, 0.2}, 128, "spike", 0.9, 10.0),
      make("l1-spike-64", "finite_lq", 1.0, std::vector<double>(8, 0.5), 64, "spike", 0.9, 8.0),
      make("linf-geom-100", "finite_lq", kInf, {1.0, 1.0, 0.5, 0.5, 0.25, 0.25, 0.125, 0.125}, 100, "geometric",
           0.97),
      make("l2-single", "truncated_lp", 2.0, harmonic16, 1, "constant"),
      make("l1-geom-32", "truncated_lp", 1.0, harmonic16, 32, "geometric", 0.8),
  };
}

/// Monte Carlo E sup_j ||xi_j|| against [max(m, rho/3), m + 3 rho] per ensemble,
/// plus the median route M + 2 rho as a secondary upper check.
inline ExperimentResult run_maximal_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto ensembles = cfg.ensembles.empty() ? standard_ensembles() : cfg.ensembles;
  gaussmax::SupMeanOptions opt;
  opt.moment_samples = cfg.moment_samples;
  opt.workers = cfg.workers;
  ExperimentResult res;
  res.id = cfg.id;
  for (std::size_t i = 0; i < ensembles.size(); ++i) {
    const auto& e = ensembles[i];
    const EnsembleSpec ens = e.build();
    const RngSeed seed = stream_seed(cfg, Stream::Maximal).substream(i);
    const auto r = gaussmax::sandwich_check(ens, cfg.samples, seed, opt);
    const SpaceSpec s = e.space();
    const std::vector<Param> params = {
        {"K", static_cast<double>(ens.variables.size())}, {"dim", static_cast<double>(s.dim)}, {"q", s.exponent}};
    res.add("maximal." + e.id, params, r.estimate, r.ci_half_width, r.m + r.rho,
            r.lower_bound - r.ci_half_width - r.tolerance, r.upper_bound + r.ci_half_width + r.tolerance);
    const auto med = gaussmax::median_bound(ens, cfg.moment_samples, seed.substream(99), cfg.workers);
    res.add("maximal." + e.id + ".median", params, r.estimate, r.ci_half_width, med.median + med.rho, kNoLower,
            med.upper_bound + r.ci_half_width + r.tolerance);
  }
  return res;
}

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"bm-limit", "divergence", "maximal", "moments", "tau",
                                                 "increment-variance"};
  return names;
}

/// Experiment defaults where they differ from ExperimentConfig's.
inline ExperimentConfig default_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.id = name;
  if (name == "divergence") {
    cfg.depth = 18;
    cfg.q = 2.0;
  }
  return cfg;
}

inline ExperimentResult run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "bm-limit") return run_limit_experiment(cfg);
  if (name == "divergence") return run_divergence_experiment(cfg);
  if (name == "maximal") return run_maximal_experiment(cfg);
  if (name == "moments") return run_moment_experiment(cfg);
  if (name == "tau") return run_tau_experiment(cfg);
  if (name == "increment-variance") return run_increment_variance_experiment(cfg);
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

} // namespace besovbm::harness
