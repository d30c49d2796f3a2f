#include "janglab/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "janglab/errors.hpp"

namespace janglab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "io-error", "cannot open '" + path + "' for writing");
  return out;
}

struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "parse-error", "cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# meta:", 0) == 0) {
      std::istringstream ss(line.substr(7));
      std::string tok;
      while (ss >> tok) {
        const auto eq = tok.find('=');
        require(eq != std::string::npos, "parse-error",
                path + ": malformed meta token '" + tok + "'");
        t.meta[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      continue;
    }
    if (line[0] == '#') continue;
    std::istringstream ss(line);
    std::string cell;
    if (!header_seen) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      require(!t.columns.empty(), "parse-error", path + ": empty header");
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        require(used == cell.size(), "parse-error",
                path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      } catch (const numeric_error&) {
        throw;
      } catch (...) {
        fail("parse-error", path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    require(row.size() == t.columns.size(), "parse-error",
            path + ":" + std::to_string(lineno) + ": wrong column count");
    t.rows.push_back(std::move(row));
  }
  require(header_seen && !t.rows.empty(), "parse-error", path + ": no data rows");
  return t;
}

std::string meta_or(const CsvTable& t, const std::string& key, const std::string& def) {
  auto it = t.meta.find(key);
  return it == t.meta.end() ? def : it->second;
}

}  // namespace

void save_profile_csv(const RadialProfile& p, const std::string& path,
                      const std::string& units) {
  auto out = open_out(path);
  out << "# meta: policy=" << to_string(p.grid()->policy()) << " units=" << units << "\n";
  out << "r,value\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    out << format_double((*p.grid())[i]) << "," << format_double(p[i]) << "\n";
  require(out.good(), "io-error", "write failed for '" + path + "'");
}

RadialProfile load_profile_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  require(t.columns.size() == 2, "parse-error", path + ": expected columns r,value");
  std::vector<double> r, v;
  for (const auto& row : t.rows) {
    r.push_back(row[0]);
    v.push_back(row[1]);
  }
  return {RadialGrid::supplied(std::move(r)), std::move(v)};
}

void save_initial_data_csv(const InitialData& d, const std::string& path) {
  auto out = open_out(path);
  out << "# meta: n=" << d.n << " r0=" << format_double(d.r0)
      << " boundary=" << to_string(d.boundary)
      << " policy=" << to_string(d.grid()->policy()) << "\n";
  out << "r,g11,rho,kn,kt\n";
  for (std::size_t i = 0; i < d.g11.size(); ++i)
    out << format_double((*d.grid())[i]) << "," << format_double(d.g11[i]) << ","
        << format_double(d.rho[i]) << "," << format_double(d.kn[i]) << ","
        << format_double(d.kt[i]) << "\n";
  require(out.good(), "io-error", "write failed for '" + path + "'");
}

InitialData load_initial_data_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  require(t.columns == std::vector<std::string>({"r", "g11", "rho", "kn", "kt"}),
          "parse-error", path + ": expected columns r,g11,rho,kn,kt");
  std::vector<double> r, g11, rho, kn, kt;
  for (const auto& row : t.rows) {
    r.push_back(row[0]);
    g11.push_back(row[1]);
    rho.push_back(row[2]);
    kn.push_back(row[3]);
    kt.push_back(row[4]);
  }
  GridPtr grid = RadialGrid::supplied(std::move(r));
  InitialData d{std::stoi(meta_or(t, "n", "3")),
                std::stod(meta_or(t, "r0", "0")),
                boundary_from_string(meta_or(t, "boundary", "complete-center")),
                RadialProfile(grid, std::move(g11)),
                RadialProfile(grid, std::move(rho), Interp::monotone),
                RadialProfile(grid, std::move(kn)),
                RadialProfile(grid, std::move(kt))};
  d.validate();
  return d;
}

void save_jang_solution_csv(const JangSolution& sol, const std::string& path) {
  auto out = open_out(path);
  out << "# meta: boundary_value=" << format_double(sol.boundary_value)
      << " policy=" << to_string(sol.v.grid()->policy()) << "\n";
  out << "r,v,f_prime,f,gbar11,h_n,h_t,q,w\n";
  for (std::size_t i = 0; i < sol.v.size(); ++i)
    out << format_double((*sol.v.grid())[i]) << "," << format_double(sol.v[i]) << ","
        << format_double(sol.f_prime[i]) << "," << format_double(sol.f[i]) << ","
        << format_double(sol.gbar11[i]) << "," << format_double(sol.h_n[i]) << ","
        << format_double(sol.h_t[i]) << "," << format_double(sol.q_radial[i]) << ","
        << format_double(sol.w_radial[i]) << "\n";
  require(out.good(), "io-error", "write failed for '" + path + "'");
}

void save_conformal_csv(const ConformalData& cd, const std::string& path) {
  auto out = open_out(path);
  out << "# meta: alpha=" << format_double(cd.alpha)
      << " policy=" << to_string(cd.u.grid()->policy()) << "\n";
  out << "r,tilde_r,u\n";
  for (std::size_t i = 0; i < cd.u.size(); ++i)
    out << format_double((*cd.u.grid())[i]) << "," << format_double(cd.tilde_r[i]) << ","
        << format_double(cd.u[i]) << "\n";
  require(out.good(), "io-error", "write failed for '" + path + "'");
}

}  // namespace janglab
