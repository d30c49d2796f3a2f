#include "janglab/study.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "janglab/errors.hpp"
#include "janglab/geometry.hpp"
#include "janglab/io.hpp"
#include "janglab/masses.hpp"

namespace janglab {

namespace {

double bridge01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

InitialData euclidean_data(std::size_t points, double rmax_scale) {
  auto grid = RadialGrid::geometric(1e-8, rmax_scale, points);
  RadialProfile one = RadialProfile::constant(grid, 1.0);
  RadialProfile rho = RadialProfile::tabulate(grid, [](double r) { return r; });
  RadialProfile zero = RadialProfile::constant(grid, 0.0);
  return {3, 0.0, BoundaryKind::complete_center, one, rho, zero, zero};
}

double l2_norm_of_k(const InitialData& d) {
  const int n = d.n;
  RadialProfile e = zip(d.kn, d.kt, [n](double a, double b) {
    return a * a + (n - 1) * b * b;
  });
  e = zip(e, d.g11, [](double t, double g) { return t * std::sqrt(g); });
  e = zip(e, d.rho, [n](double t, double rho) { return t * std::pow(rho, n - 1); });
  return std::sqrt(unit_sphere_volume(n) * integral(e));
}

// Trend verdict: strict decrease over the last six valid rows and a fitted
// log-log slope against the mass of at least 0.2.
json trend_verdict(const std::vector<double>& mass, const std::vector<double>& val) {
  json v;
  const std::size_t m = mass.size();
  if (m < 2) {
    v["pass"] = false;
    v["reason"] = "fewer than two valid members";
    return v;
  }
  bool decreasing = true;
  const std::size_t lo = m > 6 ? m - 6 : 0;
  for (std::size_t i = lo; i + 1 < m; ++i)
    if (!(val[i + 1] < val[i])) decreasing = false;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (val[i] <= 0.0 || mass[i] <= 0.0) continue;
    const double x = std::log(mass[i]), y = std::log(val[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  double slope = 0.0;
  if (cnt >= 2) slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  v["strictly_decreasing"] = decreasing;
  v["loglog_slope"] = slope;
  v["pass"] = decreasing && slope >= 0.2;
  return v;
}

}  // namespace

StudyConfig parse_config(const json& doc) {
  StudyConfig cfg;
  try {
    if (doc.contains("family")) cfg.family = doc.at("family").get<std::string>();
    if (doc.contains("params")) cfg.params = doc.at("params");
    if (doc.contains("sequence")) {
      const json& s = doc.at("sequence");
      if (s.contains("parameter")) cfg.seq_parameter = s.at("parameter").get<std::string>();
      if (s.contains("start")) cfg.seq_start = s.at("start").get<double>();
      if (s.contains("factor")) cfg.seq_factor = s.at("factor").get<double>();
      if (s.contains("count")) cfg.seq_count = s.at("count").get<int>();
    }
    if (doc.contains("region")) {
      cfg.A = doc.at("region").value("A", cfg.A);
      cfg.D = doc.at("region").value("D", cfg.D);
      if (doc.at("region").contains("A_eps"))
        cfg.A_eps = doc.at("region").at("A_eps").get<double>();
    }
    if (doc.contains("norms")) cfg.norms = doc.at("norms").get<std::vector<double>>();
    if (doc.contains("grid")) {
      cfg.points = doc.at("grid").value("points", static_cast<int>(cfg.points));
      cfg.rmax_scale = doc.at("grid").value("rmax", cfg.rmax_scale);
    }
    if (doc.contains("k_l2_bound")) cfg.k_l2_bound = doc.at("k_l2_bound").get<double>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
  } catch (const json::exception& e) {
    fail("parse-error", std::string("bad study config: ") + e.what());
  }
  require(cfg.seq_count >= 1, "parse-error", "sequence count must be >= 1");
  for (double p : cfg.norms)
    require(p >= 1.0 && p < 2.0, "parse-error", "norm exponents must lie in [1, 2)");
  return cfg;
}

json config_to_json(const StudyConfig& cfg) {
  json j;
  j["family"] = cfg.family;
  j["params"] = cfg.params;
  j["sequence"] = {{"parameter", cfg.seq_parameter},
                   {"start", cfg.seq_start},
                   {"factor", cfg.seq_factor},
                   {"count", cfg.seq_count}};
  j["region"] = {{"A", cfg.A}, {"D", cfg.D}};
  if (cfg.A_eps) j["region"]["A_eps"] = *cfg.A_eps;
  j["norms"] = cfg.norms;
  j["grid"] = {{"points", cfg.points}, {"rmax", cfg.rmax_scale}};
  if (cfg.k_l2_bound) j["k_l2_bound"] = *cfg.k_l2_bound;
  j["seed"] = cfg.seed;
  return j;
}

InitialData build_member(const StudyConfig& cfg, double value, int j) {
  const int n = cfg.params.value("n", 3);
  const std::size_t pts = cfg.points;
  if (cfg.family == "euclidean") {
    return euclidean_data(pts, cfg.rmax_scale);
  }
  if (cfg.family == "schwarzschild") {
    const double m = cfg.seq_parameter == "m" ? value : cfg.params.value("m", 1.0);
    const double rh = std::pow(2.0 * m, 1.0 / (n - 2));
    auto grid = RadialGrid::geometric(rh * (1.0 + kHorizonOffset),
                                      cfg.rmax_scale * std::max(1.0, m), pts);
    return schwarzschild_slice(m, n, grid);
  }
  if (cfg.family == "deep-well") {
    DeepWellParams p;
    p.area = cfg.params.value("A", cfg.A);
    p.mass_bound = cfg.seq_parameter == "delta" ? value : cfg.params.value("delta", 0.1);
    if (cfg.params.value("L_rule", std::string("fixed")) == "grow") {
      const double r_eps = std::pow(p.mass_bound, 1.0 / (n - 2));
      p.depth = (j + 1) / sphere_area(r_eps, n);
    } else {
      p.depth = cfg.params.value("L", 10.0);
    }
    return deep_well(p, n, pts);
  }
  if (cfg.family == "minkowski-graph") {
    const double c = cfg.seq_parameter == "c" ? value : cfg.params.value("c", 0.5);
    require(std::abs(c) < 2.0, "not-spacelike", "slope amplitude must keep |f'| < 1");
    auto grid = RadialGrid::geometric(1e-8, cfg.rmax_scale, pts);
    RadialProfile fp = RadialProfile::tabulate(grid, [c, n](double r) {
      return c * r * r / (1.0 + std::pow(r, n + 1));
    });
    return minkowski_graph({fp, n});
  }
  if (cfg.family == "minkowski-null") {
    // Spacelike graphs approaching a null profile on a fixed annulus.
    const double gap = cfg.seq_parameter == "lip" ? value : cfg.params.value("lip_gap", 0.5);
    const double lip = 1.0 - gap;
    require(lip > 0.0 && lip < 1.0, "not-spacelike", "lip gap must lie in (0, 1)");
    const double a1 = cfg.params.value("rho_A1", 0.5);
    const double a2 = cfg.params.value("rho_A2", 1.5);
    auto grid = RadialGrid::geometric(1e-8, cfg.rmax_scale, pts);
    RadialProfile fp = RadialProfile::tabulate(grid, [=](double r) {
      const double w = 0.3 * (a2 - a1);
      return lip * bridge01((r - a1 + w) / w) * (1.0 - bridge01((r - a2) / w));
    });
    return minkowski_graph({fp, n});
  }
  if (cfg.family == "hawking-random") {
    const std::uint64_t seed =
        cfg.seq_parameter == "seed" ? static_cast<std::uint64_t>(value) : cfg.seed + j;
    return random_dec_example(seed, n, pts);
  }
  fail("parse-error", "unknown example family '" + cfg.family + "'");
}

json analyze(const InitialData& d, const StudyConfig& cfg) {
  d.validate();
  json doc;
  doc["tolerances"] = {{"ode_local_tol", jang_ode_tol()},
                       {"horizon_bisection_rel", 1e-10},
                       {"hawking_extrapolation_spread", 1e-6},
                       {"dec_margin_floor", -1e-8},
                       {"trace_identity_sup", 1e-8},
                       {"bound_margin_floor", -1e-6},
                       {"flatness_sup", 1e-7}};
  doc["grid"] = {{"points", d.grid()->size()},
                 {"front", d.grid()->front()},
                 {"back", d.grid()->back()},
                 {"policy", to_string(d.grid()->policy())}};
  doc["data"] = {{"n", d.n}, {"r0", d.r0}, {"boundary", to_string(d.boundary)}};

  std::string stage = "constraints";
  try {
    const ConstraintDensities cons = constraint_densities(d);
    const DecReport dec = dec_check(cons);
    doc["constraints"] = {{"dec_margin", dec.margin}, {"dec_margin_radius", dec.r_at_min}};

    stage = "horizon";
    const auto hor = find_outermost_horizon(d);
    doc["horizon"]["found"] = hor.has_value();
    if (hor) {
      doc["horizon"]["radius"] = hor->radius;
      doc["horizon"]["kind"] = to_string(hor->kind);
    }

    stage = "adm";
    const AdmReport adm = adm_quantities(d);
    doc["adm"] = {{"energy", adm.energy},
                  {"energy_surface_integral", adm.energy_surface},
                  {"momentum", adm.momentum},
                  {"mass", adm.mass},
                  {"mass_defined", adm.mass_defined},
                  {"extrapolation_spread", adm.extrapolation_spread},
                  {"k_decay_exponent",
                   std::isfinite(adm.k_decay_exponent) ? json(adm.k_decay_exponent) : json()}};

    stage = "flatness";
    const FlatnessReport fl = verify_asymptotic_flatness(d);
    doc["asymptotic_flatness"] = {
        {"pass", fl.pass},
        {"metric_constant", fl.metric_constant},
        {"metric_exponent", fl.metric_exponent ? json(*fl.metric_exponent) : json()},
        {"k_constant", fl.k_constant},
        {"k_exponent", fl.k_exponent ? json(*fl.k_exponent) : json()}};

    stage = "masses";
    const MassProfileReport mr = mass_report(d);
    const PenroseReport pr = penrose_check(d);
    doc["masses"] = {{"hawking_adm_limit", mr.adm_limit},
                     {"monotonicity_min_slope", mr.monotonicity_min_slope},
                     {"first_variation_identity_residual", mr.identity_residual},
                     {"spacetime_hawking_min", mr.spacetime_min},
                     {"penrose",
                      {{"mass", pr.mass},
                       {"horizon_area_term", pr.horizon_area_term},
                       {"slack", pr.slack},
                       {"horizon_found", pr.horizon_found},
                       {"horizon_area", pr.horizon_area}}}};

    stage = "jang";
    const JangSolution sol = solve_jang_ode(d);
    doc["jang"] = {{"boundary_value", sol.boundary_value},
                   {"observed_vprime_r0", sol.observed_vprime_r0},
                   {"tail_decay_exponent", std::isfinite(sol.tail_decay_exponent)
                                               ? json(sol.tail_decay_exponent)
                                               : json()},
                   {"cylindrical_end", sol.cylindrical_end},
                   {"trace_identity_sup", trace_identity_sup(d, sol)},
                   {"scalar_identity_residual", scalar_identity_residual(d, sol)}};
    if (d.boundary == BoundaryKind::both_horizon) {
      const RadialProfile v_past = solve_v(d, JangBranch::past);
      double mirror = 0.0;
      for (std::size_t i = 0; i < v_past.size(); ++i)
        mirror = std::max(mirror, std::abs(v_past[i] + sol.v[i]));
      doc["jang"]["past_branch_mirror_defect"] = mirror;
    }

    const JangMetric jm = jang_metric(d, sol);
    const double mbar = hawking_adm_limit(hawking_profile(jm.gbar11, jm.rho, d.n));
    doc["jang"]["mass_of_jang_metric"] = mbar;
    doc["jang"]["mass_preservation_defect"] = std::abs(mbar - adm.energy);

    stage = "conformal";
    const ConformalData cd = conformal_factor(jm);
    const double mass = adm.mass_defined ? adm.mass : adm.energy;
    const BoundCheck ge = gradient_energy_check(jm, cd, mass);
    const BoundCheck lg = log_u_gradient_check(jm, cd, mass);
    doc["conformal"] = {{"alpha", cd.alpha},
                        {"mass_relation_defect", std::abs(2.0 * cd.alpha + mass)},
                        {"flatness_sup", conformal_flatness_sup(jm, cd)},
                        {"pde_residual", conformal_pde_residual(jm, cd)},
                        {"gradient_energy",
                         {{"value", ge.value}, {"bound", ge.bound}, {"margin", ge.margin}}},
                        {"log_u_gradient",
                         {{"value", lg.value}, {"bound", lg.bound}, {"margin", lg.margin}}}};
    if (cd.has_cylinder) {
      doc["conformal"]["cylinder_decay_slope"] = cd.cylinder_decay_slope;
      doc["conformal"]["cylinder_fit_r2"] = cd.cylinder_fit_r2;
    }

    stage = "holder";
    {
      const double A0 = cfg.A;
      const double r1 = std::max(2.0 * area_radius(A0, d.n),
                                 mass > 0.0 ? 1.0 / std::sqrt(mass) : 0.0);
      const double r1c = std::min(r1, 0.5 * cd.tilde_r.values().back());
      const HolderCheck hc =
          holder_estimate_check(cd, d.n, mass, A0, sphere_area(r1c, d.n));
      doc["holder"] = {{"seminorm", hc.seminorm},
                       {"bound", hc.bound},
                       {"margin", hc.margin},
                       {"pairs", hc.pairs},
                       {"annulus", {A0, sphere_area(r1c, d.n)}}};
    }

    stage = "flat-distance";
    RegionSpec rs{cfg.A, cfg.D, cfg.A_eps};
    const VFBoundReport vb =
        cfg.A_eps ? vf_bound(jm, cd, rs) : optimize_cut(jm, cd, cfg.A, cfg.D);
    doc["vf"] = {{"A", vb.A},
                 {"D", vb.D},
                 {"A_eps", vb.A_eps},
                 {"epsilon", vb.epsilon},
                 {"D0", vb.D0},
                 {"omega", vb.omega},
                 {"lambda", vb.lambda},
                 {"Lambda", vb.Lambda},
                 {"vol_W", vb.vol_W},
                 {"vol_W_prime", vb.vol_Wp},
                 {"vol_excess", vb.vol_excess},
                 {"vol_excess_prime", vb.vol_excess_p},
                 {"area_W", vb.area_W},
                 {"area_W_prime", vb.area_Wp},
                 {"vol_tube", vb.vol_tube},
                 {"vol_ball", vb.vol_ball},
                 {"dF_bound", vb.dF_bound},
                 {"vol_diff", vb.vol_diff},
                 {"dVF_bound", vb.dVF_bound}};

    stage = "norms";
    json hk = json::array();
    for (double p : cfg.norms) hk.push_back(hk_difference_lp(d, sol, cfg.A, cfg.D, p));
    doc["hk_lp"] = hk;
    doc["k_l2"] = l2_norm_of_k(d);
  } catch (const numeric_error& e) {
    throw numeric_error(e.kind(), "[stage " + stage + "] " + e.what());
  }
  return doc;
}

StudyResult run_sequence(const StudyConfig& cfg) {
  StudyResult res;
  res.rows.resize(cfg.seq_count);
  res.documents.resize(cfg.seq_count);

  std::string abort_error;
  const std::ptrdiff_t count = cfg.seq_count;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const double value = cfg.seq_start * std::pow(cfg.seq_factor, static_cast<double>(j));
    StudyRow row;
    row.j = static_cast<int>(j);
    row.value = value;
    try {
      const InitialData d = build_member(cfg, value, static_cast<int>(j));
      json doc = analyze(d, cfg);
      row.mass = doc["adm"]["mass"].get<double>();
      row.dvf = doc["vf"]["dVF_bound"].get<double>();
      row.vol = doc["vf"]["vol_tube"].get<double>();
      row.vol_ball = doc["vf"]["vol_ball"].get<double>();
      for (const auto& h : doc["hk_lp"]) row.hk.push_back(h.get<double>());
      row.grad_margin = doc["conformal"]["gradient_energy"]["margin"].get<double>();
      row.penrose_slack = doc["masses"]["penrose"]["slack"].get<double>();
      row.dec_margin = doc["constraints"]["dec_margin"].get<double>();
      row.k_l2 = doc["k_l2"].get<double>();
      row.ok = true;
      res.documents[j] = std::move(doc);
    } catch (const numeric_error& e) {
      // A member whose region is geometrically unattainable is recorded and
      // skipped; any other failure aborts the study with the table flushed.
      const bool degenerate =
          e.kind() == "level-not-found" || e.kind() == "region-empty";
      row.ok = false;
      row.note = std::string(e.kind()) + ": " + e.what();
      if (!degenerate) {
#pragma omp critical
        abort_error = row.note;
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.note = e.what();
#pragma omp critical
      abort_error = row.note;
    }
    res.rows[j] = std::move(row);
  }
  if (!abort_error.empty())
    fail("member-failure", "sequence member failed: " + abort_error);

  // Verdicts over the valid members.
  std::vector<double> mass, dvf, vol, volb;
  std::vector<std::vector<double>> hk(cfg.norms.size());
  double k_l2_max = 0.0;
  for (const auto& row : res.rows) {
    if (!row.ok) continue;
    mass.push_back(row.mass);
    dvf.push_back(row.dvf);
    vol.push_back(row.vol);
    volb.push_back(row.vol_ball);
    for (std::size_t p = 0; p < cfg.norms.size(); ++p) hk[p].push_back(row.hk[p]);
    k_l2_max = std::max(k_l2_max, row.k_l2);
  }
  json verdicts;
  verdicts["dvf_to_zero"] = trend_verdict(mass, dvf);
  for (std::size_t p = 0; p < cfg.norms.size(); ++p)
    verdicts["hk_to_zero_p" + format_double(cfg.norms[p])] = trend_verdict(mass, hk[p]);
  if (!vol.empty()) {
    const double ball = unit_sphere_volume(3) *
                        std::pow(area_radius(cfg.A, 3), 3) / 3.0;
    const double rel = std::abs(vol.back() - ball) / ball;
    verdicts["volume_convergence"] = {{"final_vol", vol.back()},
                                      {"euclidean_ball", ball},
                                      {"rel_error", rel},
                                      {"pass", rel <= 0.02}};
  }
  verdicts["k_l2_uniform"] = {{"max", k_l2_max}};
  if (cfg.k_l2_bound) {
    verdicts["k_l2_uniform"]["bound"] = *cfg.k_l2_bound;
    verdicts["k_l2_uniform"]["pass"] = k_l2_max <= *cfg.k_l2_bound;
  }
  bool all = true;
  for (const auto& [key, v] : verdicts.items())
    if (v.contains("pass") && !v["pass"].get<bool>()) all = false;
  res.verdicts = verdicts;
  res.all_verdicts_pass = all;
  return res;
}

void emit_report(const StudyResult& res, const StudyConfig& cfg) {
  require(!res.rows.empty(), "empty-result", "refusing to emit an empty study table");

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(cfg.output_dir) / "plots", ec);
  require(!ec, "io-error", "cannot create output directory '" + cfg.output_dir + "'");

  const std::string csv_path = (fs::path(cfg.output_dir) / "study.csv").string();
  std::ofstream csv(csv_path);
  require(csv.good(), "io-error", "cannot open '" + csv_path + "'");
  csv << "j,m,dVF,vol,vol_ball";
  for (double p : cfg.norms) csv << ",hk_p" << format_double(p);
  csv << ",grad_margin,penrose_slack,dec_margin,k_l2,status\n";
  for (const auto& row : res.rows) {
    csv << row.j << "," << format_double(row.mass) << "," << format_double(row.dvf) << ","
        << format_double(row.vol) << "," << format_double(row.vol_ball);
    for (std::size_t p = 0; p < cfg.norms.size(); ++p)
      csv << "," << (row.ok ? format_double(row.hk[p]) : "nan");
    csv << "," << format_double(row.grad_margin) << "," << format_double(row.penrose_slack)
        << "," << format_double(row.dec_margin) << "," << format_double(row.k_l2) << ","
        << (row.ok ? "ok" : "skipped") << "\n";
  }
  require(csv.good(), "io-error", "write failed for '" + csv_path + "'");

  json out;
  out["config"] = config_to_json(cfg);
  out["verdicts"] = res.verdicts;
  out["rows"] = json::array();
  for (const auto& row : res.rows) {
    json r = {{"j", row.j},           {"value", row.value},
              {"m", row.mass},        {"dVF", row.dvf},
              {"vol", row.vol},       {"vol_ball", row.vol_ball},
              {"hk", row.hk},         {"grad_margin", row.grad_margin},
              {"penrose_slack", row.penrose_slack},
              {"dec_margin", row.dec_margin},
              {"k_l2", row.k_l2},     {"status", row.ok ? "ok" : "skipped"}};
    if (!row.note.empty()) r["note"] = row.note;
    out["rows"].push_back(std::move(r));
  }
  out["documents"] = res.documents;
  const std::string json_path = (fs::path(cfg.output_dir) / "study.json").string();
  std::ofstream js(json_path);
  require(js.good(), "io-error", "cannot open '" + json_path + "'");
  js << out.dump(2) << "\n";
  require(js.good(), "io-error", "write failed for '" + json_path + "'");

  auto emit_dat = [&](const std::string& name, auto getter) {
    const std::string path = (fs::path(cfg.output_dir) / "plots" / name).string();
    std::ofstream dat(path);
    require(dat.good(), "io-error", "cannot open '" + path + "'");
    for (const auto& row : res.rows)
      if (row.ok) dat << format_double(row.mass) << " " << format_double(getter(row)) << "\n";
    require(dat.good(), "io-error", "write failed for '" + path + "'");
  };
  emit_dat("dvf.dat", [](const StudyRow& r) { return r.dvf; });
  emit_dat("vol.dat", [](const StudyRow& r) { return r.vol; });
  for (std::size_t p = 0; p < cfg.norms.size(); ++p)
    emit_dat("hk_p" + format_double(cfg.norms[p]) + ".dat",
             [p](const StudyRow& r) { return r.hk[p]; });
}

}  // namespace janglab
