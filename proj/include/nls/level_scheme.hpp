#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace nls {

enum class Band { Ground, Valence, Core };

Band band_from_string(const std::string& s);
std::string band_to_string(Band b);

// One molecule: state energies (Ha), band tags and the complex transition
// dipole matrix (au). Immutable after construction; validate() enforces the
// structural constraints every signal formula relies on.
struct LevelScheme {
  Eigen::VectorXd energies;        // Ha
  std::vector<Band> bands;
  Eigen::MatrixXcd dipoles;        // au, Hermitian, zero diagonal
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(energies.size()); }

  // omega(a,b) = eps_a - eps_b; antisymmetric by construction.
  double omega(int a, int b) const { return energies[a] - energies[b]; }

  double max_abs_omega() const;

  std::vector<int> states_in_band(Band b) const;

  void validate() const; // throws std::runtime_error on violation
};

LevelScheme load_level_scheme(const std::string& path);
void save_level_scheme(const LevelScheme& scheme, const std::string& path);

struct ManifoldOptions {
  bool intraband_dipoles = false;
  double dipole_min = 0.1;   // au, |mu_ge| range
  double dipole_max = 1.0;
  double intraband_dipole_min = 0.1;
  double intraband_dipole_max = 0.5;
  int n_core = 0;            // optional core-excited manifold
  double core_min_ev = 385.0;
  double core_max_ev = 400.0;
};

// One ground state at 0 plus n_valence states drawn uniformly in
// [e_min_ev, e_max_ev], sorted ascending; deterministic under seed.
LevelScheme generate_synthetic_manifold(int n_valence, double e_min_ev,
                                        double e_max_ev, std::uint64_t seed,
                                        const ManifoldOptions& opt = {});

} // namespace nls
