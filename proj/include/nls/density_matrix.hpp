#pragma once

#include "nls/level_scheme.hpp"

#include <Eigen/Dense>
#include <set>
#include <utility>

namespace nls {

// Hermitian, unit-trace matter state over a level scheme.
struct DensityMatrix {
  Eigen::MatrixXcd rho;

  int size() const { return static_cast<int>(rho.rows()); }

  // Hermiticity and trace to 1e-12, eigenvalues >= -1e-10.
  void validate() const;
};

// Pure-state amplitudes kappa_j; sum |kappa_j|^2 = 1.
struct PreparedState {
  Eigen::VectorXcd kappa;

  int size() const { return static_cast<int>(kappa.size()); }
  double norm_sq() const { return kappa.squaredNorm(); }

  // True when max |kappa_e|^2 over non-ground states is below 0.05, i.e.
  // nearly all population sits in the ground state.
  bool weak_excitation(const LevelScheme& scheme) const;
};

// rho = kappa kappa^dagger. Throws if |sum - 1| > 1e-8.
DensityMatrix rho_from_kappa(const PreparedState& state);

DensityMatrix ground_state(const LevelScheme& scheme);

// Element mask restricting density-matrix sums to selected (row band,
// column band) pairs; used to specialize the general formulas to the
// two-band model.
using BandPairSet = std::set<std::pair<Band, Band>>;

struct BandMask {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> keep;

  bool operator()(int i, int j) const { return keep(i, j); }
  static BandMask all(int n);
};

BandMask band_filter(const LevelScheme& scheme, const BandPairSet& bands);

} // namespace nls
