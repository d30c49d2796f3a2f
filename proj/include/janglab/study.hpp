#ifndef JANGLAB_STUDY_HPP_
#define JANGLAB_STUDY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "janglab/flat_distance.hpp"
#include "janglab/generators.hpp"

namespace janglab {

using json = nlohmann::json;

struct StudyConfig {
  std::string family = "schwarzschild";
  json params = json::object();

  std::string seq_parameter = "m";  // m | delta | lip | seed | c
  double seq_start = 1.0;
  double seq_factor = 0.5;
  int seq_count = 11;

  double A = 4.0 * M_PI;
  double D = 2.0;
  std::optional<double> A_eps;        // fixed cut; otherwise optimized
  std::vector<double> norms = {1.0};  // p values in [1, 2)

  std::size_t points = 2048;
  double rmax_scale = 1e4;
  std::optional<double> k_l2_bound;  // uniform bound B when supplied

  std::uint64_t seed = 12345;
  std::string output_dir = ".";
};

StudyConfig parse_config(const json& doc);
json config_to_json(const StudyConfig& cfg);

// Build one dataset of the configured family; value is the sequence
// parameter for this member.
InitialData build_member(const StudyConfig& cfg, double value, int j);

// Full single-example pipeline: constraints / DEC / horizon / ADM -> Jang ->
// conformal -> masses -> flat-distance bound, every intermediate recorded.
json analyze(const InitialData& d, const StudyConfig& cfg);

struct StudyRow {
  int j = 0;
  double value = 0.0;  // sequence parameter
  double mass = 0.0;
  double dvf = 0.0;
  double vol = 0.0;
  double vol_ball = 0.0;
  std::vector<double> hk;  // one entry per requested norm
  double grad_margin = 0.0;
  double penrose_slack = 0.0;
  double dec_margin = 0.0;
  double k_l2 = 0.0;
  bool ok = false;
  std::string note;  // skip reason for degenerate members
};

struct StudyResult {
  std::vector<StudyRow> rows;
  std::vector<json> documents;  // full analyze output per member (null if skipped)
  json verdicts;
  bool all_verdicts_pass = false;
};

StudyResult run_sequence(const StudyConfig& cfg);

// study.csv + study.json + plots/*.dat under cfg.output_dir.
void emit_report(const StudyResult& res, const StudyConfig& cfg);

}  // namespace janglab

#endif  // JANGLAB_STUDY_HPP_
