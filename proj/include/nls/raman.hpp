#pragma once

#include "nls/density_matrix.hpp"
#include "nls/level_scheme.hpp"

#include <Eigen/Dense>

namespace nls {

// Gaussian X-ray pulse in the spectral domain; fields in eV at the I/O
// boundary, converted to Ha internally.
struct PulseSpec {
  double center = 0.0;          // carrier frequency, eV
  double width = 0.0;           // spectral standard deviation, eV
  double amplitude = 0.0;       // peak field amplitude, arbitrary units
  double lifetime_gamma = 0.0;  // core-state damping Gamma_f, eV

  void validate() const; // width > 0, lifetime_gamma >= 0
};

// Unnormalized second-order Raman amplitudes kappa_e, one per valence state
// (zero for ground and core states). Bilinear in the two field amplitudes:
//   kappa_e = sum_f mu_ef mu_fg I_f(e),
//   I_f(e)  = int dw E2*(w - w_eg) E1(w) / (w - w_fg + i Gamma_f).
Eigen::VectorXcd raman_amplitudes(const LevelScheme& scheme,
                                  const PulseSpec& pump,
                                  const PulseSpec& stokes);

// Normalized pure state after the two-pulse Raman preparation; kappa_g
// carries the remaining ground-state amplitude.
PreparedState raman_prepare(const LevelScheme& scheme, const PulseSpec& pump,
                            const PulseSpec& stokes);

} // namespace nls
