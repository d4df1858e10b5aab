// Samples one scalar Brownian path, prints its dyadic increment profile and
// B^{1/2}_{2,inf} norm, then checks the maximal sandwich for 64 standard
// Gaussians.

#include <cmath>
#include <cstdio>

#include "besovbm/besovbm.hpp"

int main() {
  using namespace besovbm;
  const SpaceSpec line = SpaceSpec::scalar();
  const double sigma[] = {1.0};
  const PathSample path = sample_bm(line, sigma, 16, RngSeed{2024, 0});

  std::printf(" n   2^{n/2} ||W(.+2^-n) - W||_2\n");
  for (int n = 1; n <= 10; ++n) {
    std::printf("%2d   %.4f\n", n, std::exp2(0.5 * n) * besov::dyadic_increment_lp(path, n, 2.0));
  }
  const auto norm = besov::besov_norm(path, {0.5, 2.0, kInf, 0});
  std::printf("B^{1/2}_{2,inf} norm %.4f (seminorm %.4f)\n", norm.total, norm.seminorm_part);

  EnsembleSpec ens;
  for (int j = 0; j < 64; ++j) ens.variables.push_back({line, orlicz::WeightSeq({1.0})});
  const auto r = gaussmax::sandwich_check(ens, 10000, RngSeed{7, 0});
  std::printf("E max |g_j| ~ %.4f +- %.4f in [%.4f, %.4f]: %s\n", r.estimate, r.ci_half_width, r.lower_bound,
              r.upper_bound, r.verdict ? "pass" : "fail");
  return r.verdict ? 0 : 1;
}
