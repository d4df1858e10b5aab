// Command-line front end: one subcommand per experiment plus the `rho` and
// `besov-norm` utilities. Exit status is 0 iff every verdict passes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "besovbm/besovbm.hpp"

namespace {

using namespace besovbm;
using harness::ExperimentConfig;

struct SharedFlags {
  std::string config;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t paths = 0;
  int depth = 0;
  unsigned workers = 0;
  std::string out;
  std::string format = "csv";
  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* paths_opt = nullptr;
  CLI::Option* depth_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

void add_shared(CLI::App* app, SharedFlags& f) {
  app->add_option("--config", f.config, "key = value configuration file")->check(CLI::ExistingFile);
  f.seed_opt = app->add_option("--seed", f.seed, "RNG seed");
  f.samples_opt = app->add_option("--samples", f.samples, "Monte Carlo samples");
  f.paths_opt = app->add_option("--paths", f.paths, "number of Brownian paths");
  f.depth_opt = app->add_option("--depth", f.depth, "dyadic grid depth N");
  f.workers_opt = app->add_option("--workers", f.workers, "worker threads");
  app->add_option("--out", f.out, "output file (default: stdout)");
  app->add_option("--format", f.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "json-text", "svg"}));
}

ExperimentConfig resolve_config(const std::string& name, const SharedFlags& f) {
  ExperimentConfig cfg = harness::default_config(name);
  if (!f.config.empty()) cfg = harness::load_config(f.config, cfg);
  if (f.seed_opt->count()) cfg.seed = f.seed;
  if (f.samples_opt->count()) cfg.samples = f.samples;
  if (f.paths_opt->count()) cfg.paths = f.paths;
  if (f.depth_opt->count()) cfg.depth = f.depth;
  if (f.workers_opt->count()) cfg.workers = f.workers;
  cfg.validate();
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

int run_experiment_cmd(const std::string& name, const SharedFlags& f) {
  const ExperimentConfig cfg = resolve_config(name, f);
  const harness::ExperimentResult result = harness::run_experiment(name, cfg);
  write_text(f.out, harness::render(result, harness::parse_format(f.format)));
  if (!cfg.out_csv.empty()) harness::emit_report(result, harness::ReportFormat::Csv, cfg.out_csv);
  if (!cfg.out_json.empty()) harness::emit_report(result, harness::ReportFormat::Json, cfg.out_json);
  if (!cfg.out_svg.empty()) harness::emit_report(result, harness::ReportFormat::Svg, cfg.out_svg);
  std::size_t failed = 0;
  for (const auto& r : result.rows) failed += r.verdict ? 0 : 1;
  std::fprintf(stderr, "%s: %zu rows, %zu failed\n", name.c_str(), result.rows.size(), failed);
  return failed == 0 ? 0 : 1;
}

std::vector<double> read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sequence file '" + path + "'");
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::stringstream ss(tok);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (!cell.empty()) out.push_back(harness::detail::parse_double(path, cell));
    }
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Besov regularity of Banach-space Brownian motion and Gaussian maxima"};
  app.require_subcommand(1);

  // rho
  auto* rho = app.add_subcommand("rho", "Luxemburg or Orlicz norm of a sequence");
  std::string kind = "theta";
  double beta = 2.0;
  std::vector<double> seq;
  std::string seq_file;
  std::string norm = "luxemburg";
  rho->add_option("--kind", kind, "theta or phi")->check(CLI::IsMember({"theta", "phi"}));
  rho->add_option("--beta", beta, "exponent of exp(|x|^beta) - 1");
  rho->add_option("--seq", seq, "comma-separated sequence")->delimiter(',');
  rho->add_option("--file", seq_file, "whitespace or comma separated sequence file");
  rho->add_option("--norm", norm, "luxemburg or orlicz")->check(CLI::IsMember({"luxemburg", "orlicz"}));

  // besov-norm
  auto* bn = app.add_subcommand("besov-norm", "B^alpha_{p,q} norm of a path (sampled or read)");
  SharedFlags bn_flags;
  add_shared(bn, bn_flags);
  std::string path_csv, per_scale_csv, dump_path;
  double alpha = 0.5, p = 2.0;
  std::string q_text = "inf";
  int n_max = 0;
  bn->add_option("--path-csv", path_csv, "path CSV (k,t,coord_1..)")->check(CLI::ExistingFile);
  bn->add_option("--alpha", alpha, "smoothness in (0,1)");
  bn->add_option("--p", p, "integrability exponent");
  bn->add_option("--q", q_text, "summability exponent ('inf' allowed)");
  bn->add_option("--n-max", n_max, "largest scale (0: depth - 6)");
  bn->add_option("--per-scale-csv", per_scale_csv, "write per-scale terms");
  bn->add_option("--dump-path", dump_path, "write the sampled path as CSV");

  std::vector<std::pair<std::string, SharedFlags>> experiments;
  experiments.reserve(harness::experiment_names().size());
  std::vector<CLI::App*> experiment_cmds;
  for (const auto& name : harness::experiment_names()) {
    experiments.emplace_back(name, SharedFlags{});
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    add_shared(sub, experiments.back().second);
    experiment_cmds.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (rho->parsed()) {
      if (!seq_file.empty()) {
        const auto more = read_sequence_file(seq_file);
        seq.insert(seq.end(), more.begin(), more.end());
      }
      const orlicz::WeightSeq w(seq);
      const auto phi = kind == "theta" ? orlicz::OrliczFunction::theta() : orlicz::OrliczFunction::phi_beta(beta);
      const double value = norm == "luxemburg" ? orlicz::luxemburg_norm(phi, w) : orlicz::orlicz_norm(phi, w);
      std::printf("%s\n", harness::format_number(value).c_str());
      return 0;
    }
    if (bn->parsed()) {
      const double q = harness::detail::parse_double("--q", q_text);
      ExperimentConfig cfg = resolve_config("besov-norm", bn_flags);
      PathSample path = [&] {
        if (!path_csv.empty()) {
          std::ifstream in(path_csv);
          if (!in) throw std::runtime_error("cannot open '" + path_csv + "'");
          return read_path_csv(in, cfg.space());
        }
        return sample_bm(cfg.space(), cfg.sigma, cfg.depth, RngSeed{cfg.seed, 0});
      }();
      if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) throw std::runtime_error("cannot open '" + dump_path + "' for writing");
        write_path_csv(out, path);
      }
      const auto r = besov::besov_norm(path, {alpha, p, q, n_max});
      if (!per_scale_csv.empty()) {
        std::string text = "n,term\n";
        for (const auto& [n, t] : r.per_scale) text += std::to_string(n) + "," + harness::format_number(t) + "\n";
        write_text(per_scale_csv, text);
      }
      nlohmann::ordered_json j;
      j["alpha"] = alpha;
      j["p"] = p;
      j["q"] = harness::json_number(q);
      j["depth"] = path.depth();
      j["lp_part"] = r.lp_part;
      j["seminorm_part"] = r.seminorm_part;
      j["total"] = r.total;
      j["per_scale"] = nlohmann::ordered_json::array();
      for (const auto& [n, t] : r.per_scale) j["per_scale"].push_back({{"n", n}, {"term", t}});
      write_text(bn_flags.out, j.dump(2) + "\n");
      return 0;
    }
    for (std::size_t i = 0; i < experiment_cmds.size(); ++i) {
      if (experiment_cmds[i]->parsed()) return run_experiment_cmd(experiments[i].first, experiments[i].second);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
