#ifndef JANGLAB_IO_HPP_
#define JANGLAB_IO_HPP_

#include <string>

#include "janglab/conformal.hpp"
#include "janglab/initial_data.hpp"
#include "janglab/jang.hpp"

namespace janglab {

// Deterministic shortest-round-trip float formatting shared by all writers.
std::string format_double(double v);

// Two-column profile CSV: `# meta:` header line, then `r,value` rows.
void save_profile_csv(const RadialProfile& p, const std::string& path,
                      const std::string& units = "length");
RadialProfile load_profile_csv(const std::string& path);

// Initial data CSV: columns r,g11,rho,kn,kt with
// `# meta: n=<int> r0=<float> boundary=<kind> policy=<grid policy>`.
void save_initial_data_csv(const InitialData& d, const std::string& path);
InitialData load_initial_data_csv(const std::string& path);

// Jang solution CSV: r,v,f_prime,f,gbar11,h_n,h_t,q,w.
void save_jang_solution_csv(const JangSolution& sol, const std::string& path);

// Conformal data CSV: r,tilde_r,u.
void save_conformal_csv(const ConformalData& cd, const std::string& path);

}  // namespace janglab

#endif  // JANGLAB_IO_HPP_
