#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// stdout only; stderr goes to a file when asked
Run run(const std::string& args, const std::string& err_file = "/dev/null") {
  const std::string cmd = std::string(BESOVBM_CLI_PATH) + " " + args + " 2>" + err_file;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string demo(const std::string& name) { return std::string(BESOVBM_DEMOS_DIR) + "/" + name; }

fs::path scratch() {
  const auto d = fs::temp_directory_path() / "besovbm_cli_test";
  fs::create_directories(d);
  return d;
}

} // namespace

TEST(Cli, RhoDefaultsAndOrlicz) {
  auto r = run("rho --seq 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_NEAR(std::stod(r.out), 0.8387296480382649, 2e-9);
  r = run("rho --seq 1 --norm orlicz");
  EXPECT_EQ(r.status, 0);
  const double orl = std::stod(r.out);
  EXPECT_GT(orl, 0.8387);
  EXPECT_LT(orl, 2 * 0.8388);
  r = run("rho --kind phi --beta 2 --seq 0,0");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "0\n");
}

TEST(Cli, RhoFromFile) {
  const auto f = scratch() / "seq.txt";
  std::ofstream(f) << "1 0.5\n0.25,0.125\n";
  const auto a = run("rho --file " + f.string());
  const auto b = run("rho --seq 1,0.5,0.25,0.125");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BesovNormJsonAndPathRoundTrip) {
  const auto dir = scratch();
  const auto path_csv = dir / "path.csv";
  const auto per_scale = dir / "scales.csv";
  auto r = run("besov-norm --depth 12 --seed 5 --alpha 0.5 --p 2 --q inf --dump-path " + path_csv.string() +
               " --per-scale-csv " + per_scale.string());
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["q"], "inf");
  EXPECT_EQ(j["depth"], 12);
  EXPECT_EQ(j["per_scale"].size(), 6u);
  EXPECT_NEAR(j["total"].get<double>(), j["lp_part"].get<double>() + j["seminorm_part"].get<double>(), 1e-12);
  EXPECT_EQ(slurp(per_scale).rfind("n,term\n", 0), 0u);

  // re-reading the dumped path reproduces the number
  const auto again = run("besov-norm --path-csv " + path_csv.string() + " --alpha 0.5 --p 2 --q inf");
  ASSERT_EQ(again.status, 0);
  EXPECT_EQ(nlohmann::json::parse(again.out)["total"], j["total"]);
}

TEST(Cli, ExperimentExitCodesAndFormats) {
  const auto dir = scratch();
  const auto err = (dir / "err.txt").string();
  auto r = run("bm-limit --config " + demo("limit.cfg") + " --workers 1", err);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("experiment,param_1", 0), 0u);
  EXPECT_NE(slurp(err).find("bm-limit: 9 rows, 0 failed"), std::string::npos);

  const auto out_file = dir / "limit.json";
  r = run("bm-limit --config " + demo("limit.cfg") + " --format json --out " + out_file.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(nlohmann::json::parse(slurp(out_file))["passed"].get<bool>());

  // the divergence criterion is expected to fail on Brownian paths
  r = run("divergence --config " + demo("divergence.cfg"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("divergence.growth_fraction"), std::string::npos);
}

TEST(Cli, WorkersDoNotChangeOutput) {
  const auto a = run("increment-variance --config " + demo("increment.cfg") + " --workers 1");
  const auto b = run("increment-variance --config " + demo("increment.cfg") + " --workers 4");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto svg = run("increment-variance --config " + demo("increment.cfg") + " --format svg");
  EXPECT_EQ(svg.out.rfind("<svg", 0), 0u);
}

TEST(Cli, BadInput) {
  EXPECT_NE(run("").status, 0);
  EXPECT_NE(run("frobnicate").status, 0);
  EXPECT_NE(run("bm-limit --format xml").status, 0);
  EXPECT_NE(run("bm-limit --config /nonexistent.cfg").status, 0);
  EXPECT_EQ(run("bm-limit --depth 40").status, 2);
  EXPECT_EQ(run("besov-norm --depth 10 --alpha 1.5").status, 2);
  // scales 4, 6, 8 no longer fit once the depth drops to 12
  EXPECT_EQ(run("bm-limit --depth 12 --config " + demo("limit.cfg")).status, 2);
  const auto bad = scratch() / "bad.cfg";
  std::ofstream(bad) << "rng.seed = 1\nnot.a.key = 3\n";
  const auto err = (scratch() / "bad_err.txt").string();
  EXPECT_EQ(run("bm-limit --config " + bad.string(), err).status, 2);
  EXPECT_NE(slurp(err).find("line 2"), std::string::npos);
}
