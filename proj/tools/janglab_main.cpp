#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "janglab/errors.hpp"
#include "janglab/io.hpp"
#include "janglab/study.hpp"

using janglab::json;

namespace {

int exit_code_for(const janglab::numeric_error& e) {
  if (e.kind() == "parse-error") return 2;
  if (e.kind() == "empty-result") return 3;
  return 4;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  janglab::require(in.good(), "parse-error", "cannot open config '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    janglab::fail("parse-error", path + ": " + e.what());
  }
  return doc;
}

void apply_overrides(janglab::StudyConfig& cfg, std::optional<int> points,
                     std::optional<double> rmax, std::optional<double> tol) {
  if (points) cfg.points = static_cast<std::size_t>(*points);
  if (rmax) cfg.rmax_scale = *rmax;
  if (tol) janglab::jang_ode_tol() = *tol;
  if (const char* seed = std::getenv("JANGLAB_SEED"))
    cfg.seed = std::strtoull(seed, nullptr, 10);
}

void write_or_print(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  janglab::require(out.good(), "io-error", "cannot open '" + out_path + "'");
  out << doc.dump(2) << "\n";
  janglab::require(out.good(), "io-error", "write failed for '" + out_path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"janglab: spherically symmetric initial data, Jang/conformal deformations, "
               "mass functionals, and intrinsic-flat-distance bounds"};
  app.require_subcommand(1);

  std::optional<int> opt_points;
  std::optional<double> opt_rmax, opt_tol;
  app.add_option("--points", opt_points, "grid point count override");
  app.add_option("--rmax", opt_rmax, "outer truncation scale override");
  app.add_option("--tol", opt_tol, "Jang ODE local tolerance override");

  std::string config_path, data_path, out_path, family;
  double A = 4.0 * M_PI, D = 2.0;
  std::optional<double> A_eps;
  double gen_m = 1.0, gen_A = 4.0 * M_PI, gen_L = 10.0, gen_delta = 0.1, gen_c = 0.5;
  int gen_n = 3;
  std::uint64_t gen_seed = 12345;

  auto* cmd_analyze = app.add_subcommand("analyze", "analyze one example from a config");
  cmd_analyze->add_option("config", config_path, "JSON config")->required();
  cmd_analyze->add_option("-o,--output", out_path, "write the JSON document here");

  auto* cmd_study = app.add_subcommand("study", "run a sequence study from a config");
  cmd_study->add_option("config", config_path, "JSON config")->required();

  auto* cmd_generate = app.add_subcommand("generate", "write an example family member as CSV");
  cmd_generate->add_option("family", family,
                           "euclidean|schwarzschild|hawking-random|deep-well|minkowski-graph")
      ->required();
  cmd_generate->add_option("-o,--output", out_path, "output CSV")->required();
  cmd_generate->add_option("--m", gen_m, "Schwarzschild mass");
  cmd_generate->add_option("--n", gen_n, "dimension");
  cmd_generate->add_option("--A", gen_A, "deep well reference area");
  cmd_generate->add_option("--L", gen_L, "deep well depth");
  cmd_generate->add_option("--delta", gen_delta, "deep well mass bound");
  cmd_generate->add_option("--c", gen_c, "graph slope amplitude");
  cmd_generate->add_option("--seed", gen_seed, "random profile seed");

  auto* cmd_bound = app.add_subcommand("bound", "flat-distance bound for a data CSV");
  cmd_bound->add_option("data", data_path, "initial data CSV")->required();
  cmd_bound->add_option("--A", A, "outer level area")->required();
  cmd_bound->add_option("--D", D, "tubular depth")->required();
  cmd_bound->add_option("--Aeps", A_eps, "inner cut area (optimized when omitted)");
  cmd_bound->add_option("-o,--output", out_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (cmd_analyze->parsed()) {
      janglab::StudyConfig cfg = janglab::parse_config(load_json(config_path));
      apply_overrides(cfg, opt_points, opt_rmax, opt_tol);
      const janglab::InitialData d = janglab::build_member(cfg, cfg.seq_start, 0);
      write_or_print(janglab::analyze(d, cfg), out_path);
      return 0;
    }
    if (cmd_study->parsed()) {
      janglab::StudyConfig cfg = janglab::parse_config(load_json(config_path));
      apply_overrides(cfg, opt_points, opt_rmax, opt_tol);
      const janglab::StudyResult res = janglab::run_sequence(cfg);
      janglab::emit_report(res, cfg);
      std::cout << res.verdicts.dump(2) << "\n";
      return res.all_verdicts_pass ? 0 : 1;
    }
    if (cmd_generate->parsed()) {
      janglab::StudyConfig cfg;
      apply_overrides(cfg, opt_points, opt_rmax, opt_tol);
      if (std::getenv("JANGLAB_SEED")) gen_seed = cfg.seed;
      janglab::json params;
      std::string fam = family;
      double value = 0.0;
      cfg.points = opt_points ? static_cast<std::size_t>(*opt_points) : cfg.points;
      if (family == "schwarzschild") {
        cfg.seq_parameter = "m";
        value = gen_m;
      } else if (family == "deep-well") {
        cfg.seq_parameter = "delta";
        value = gen_delta;
        params["A"] = gen_A;
        params["L"] = gen_L;
      } else if (family == "minkowski-graph") {
        cfg.seq_parameter = "c";
        value = gen_c;
      } else if (family == "hawking-random") {
        cfg.seq_parameter = "seed";
        value = static_cast<double>(gen_seed);
      } else if (family != "euclidean") {
        janglab::fail("parse-error", "unknown family '" + family + "'");
      }
      params["n"] = gen_n;
      cfg.family = fam;
      cfg.params = params;
      const janglab::InitialData d = janglab::build_member(cfg, value, 0);
      janglab::save_initial_data_csv(d, out_path);
      return 0;
    }
    if (cmd_bound->parsed()) {
      janglab::StudyConfig cfg;
      apply_overrides(cfg, opt_points, opt_rmax, opt_tol);
      const janglab::InitialData d = janglab::load_initial_data_csv(data_path);
      const janglab::JangSolution sol = janglab::solve_jang_ode(d);
      const janglab::JangMetric jm = janglab::jang_metric(d, sol);
      const janglab::ConformalData cd = janglab::conformal_factor(jm);
      const janglab::VFBoundReport rep =
          A_eps ? janglab::vf_bound(jm, cd, {A, D, A_eps})
                : janglab::optimize_cut(jm, cd, A, D);
      json doc = {{"A", rep.A},
                  {"D", rep.D},
                  {"A_eps", rep.A_eps},
                  {"epsilon", rep.epsilon},
                  {"D0", rep.D0},
                  {"omega", rep.omega},
                  {"lambda", rep.lambda},
                  {"Lambda", rep.Lambda},
                  {"vol_W", rep.vol_W},
                  {"vol_W_prime", rep.vol_Wp},
                  {"vol_excess", rep.vol_excess},
                  {"vol_excess_prime", rep.vol_excess_p},
                  {"area_W", rep.area_W},
                  {"area_W_prime", rep.area_Wp},
                  {"vol_tube", rep.vol_tube},
                  {"vol_ball", rep.vol_ball},
                  {"dF_bound", rep.dF_bound},
                  {"vol_diff", rep.vol_diff},
                  {"dVF_bound", rep.dVF_bound}};
      write_or_print(doc, out_path);
      return 0;
    }
  } catch (const janglab::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
