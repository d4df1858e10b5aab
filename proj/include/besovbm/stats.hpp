#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace besovbm {

inline constexpr double kZ95 = 1.959963984540054;

struct MeanCi {
  double mean = 0.0;
  double sd = 0.0;
  double ci_half_width = 0.0;  // 95% normal approximation
  std::size_t n = 0;
};

/// Sequential two-pass mean and sample standard deviation.
inline MeanCi mean_ci(std::span<const double> xs) {
  MeanCi r;
  r.n = xs.size();
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    r.ci_half_width = kZ95 * r.sd / std::sqrt(static_cast<double>(xs.size()));
  }
  return r;
}

} // namespace besovbm
