#pragma once

// Shared model systems for the test suites.

#include "nls/density_matrix.hpp"
#include "nls/level_scheme.hpp"

#include <complex>
#include <random>
#include <vector>

namespace fix {

using nls::Band;
using cplx = std::complex<double>;

inline nls::LevelScheme make_scheme(const std::vector<double>& energies_ha,
                                    const std::vector<Band>& bands,
                                    const std::vector<std::tuple<int, int, cplx>>& mus) {
  nls::LevelScheme s;
  const int n = static_cast<int>(energies_ha.size());
  s.energies.resize(n);
  for (int i = 0; i < n; ++i) s.energies[i] = energies_ha[i];
  s.bands = bands;
  s.labels.resize(n, "");
  s.dipoles = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [i, j, mu] : mus) {
    s.dipoles(i, j) = mu;
    s.dipoles(j, i) = std::conj(mu);
  }
  s.validate();
  return s;
}

// g at 0, e at w_ha, mu_ge = mu.
inline nls::LevelScheme two_level(double w_ha = 0.25, double mu = 1.0) {
  return make_scheme({0.0, w_ha}, {Band::Ground, Band::Valence},
                     {{0, 1, mu}});
}

// V topology: one ground, two close-lying excited states, interband dipoles.
inline nls::LevelScheme v_scheme(double w1_ha = 0.25, double split_ha = 0.002,
                                 double mu1 = 1.0, double mu2 = 0.8) {
  return make_scheme({0.0, w1_ha, w1_ha + split_ha},
                     {Band::Ground, Band::Valence, Band::Valence},
                     {{0, 1, mu1}, {0, 2, mu2}});
}

// Lambda topology: two close-lying low states sharing one excited state.
inline nls::LevelScheme lambda_scheme(double split_ha = 0.002,
                                      double w_exc_ha = 0.25) {
  return make_scheme({0.0, split_ha, w_exc_ha},
                     {Band::Ground, Band::Valence, Band::Valence},
                     {{0, 2, 1.0}, {1, 2, 0.8}});
}

inline nls::DensityMatrix pure_rho(const std::vector<cplx>& kappa) {
  nls::PreparedState st;
  st.kappa.resize(static_cast<int>(kappa.size()));
  for (std::size_t i = 0; i < kappa.size(); ++i) st.kappa[i] = kappa[i];
  st.kappa.normalize();
  return nls::rho_from_kappa(st);
}

inline nls::PreparedState random_kappa(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  nls::PreparedState st;
  st.kappa.resize(n);
  for (int i = 0; i < n; ++i) st.kappa[i] = cplx(g(rng), g(rng));
  st.kappa.normalize();
  return st;
}

// Valid mixed state: convex combination of random pure states.
inline nls::DensityMatrix random_rho(int n, std::uint64_t seed, int rank = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  double wsum = 0.0;
  for (int r = 0; r < rank; ++r) {
    const auto st = random_kappa(n, seed + 17 * (r + 1));
    const double w = u(rng);
    m += w * (st.kappa * st.kappa.adjoint());
    wsum += w;
  }
  nls::DensityMatrix rho{m / wsum};
  rho.validate();
  return rho;
}

// 5 states: g, three valence (two nearly degenerate), interband dipoles.
inline nls::LevelScheme five_level() {
  return make_scheme(
      {0.0, 0.240, 0.242, 0.300, 0.310},
      {Band::Ground, Band::Valence, Band::Valence, Band::Valence, Band::Valence},
      {{0, 1, 1.0}, {0, 2, 0.9}, {0, 3, cplx(0.5, 0.2)}, {0, 4, 0.7}});
}

} // namespace fix
