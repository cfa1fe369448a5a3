#pragma once

#include "nls/density_matrix.hpp"
#include "nls/level_scheme.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace nls {

enum class Channel { Coherent, Incoherent };

// Orientation-averaged amplitude prefactor, A / sqrt(3) with A = 1.
inline constexpr double a_tilde = 0.57735026918962576451; // 1/sqrt(3)

// Molecule-count factor: N(N-1) pairwise for the coherent channel, N for
// the incoherent one.
double molecule_factor(Channel channel, int n_molecules);

// One component of the polarization, P(t) = sum rho_bc mu_cb e^{-i w_bc t}:
// amp = rho_bc mu_cb at frequency omega = w_bc.
struct EmissionLine {
  int b = 0, c = 0;
  double omega = 0.0;          // Ha
  std::complex<double> amp;    // rho_bc mu_cb
};

// One interfering pair of emission components sharing a final state.
// Incoherent channel: weight = mu_cb mu*_c'b rho_c'c with (w_bc, w_bc').
// Coherent channel: weight = amp_j amp*_k built from two EmissionLines.
// The w(b,c,c') = w*(b,c',c) symmetry makes every assembled signal real.
struct LinePair {
  double omega1 = 0.0, omega2 = 0.0; // Ha
  std::complex<double> weight;
};

std::vector<EmissionLine> coherent_lines(const DensityMatrix& rho,
                                         const LevelScheme& scheme,
                                         const std::optional<BandMask>& mask = {});

std::vector<LinePair> incoherent_pairs(const DensityMatrix& rho,
                                       const LevelScheme& scheme,
                                       const std::optional<BandMask>& mask = {});

// Pair list for either channel, ready for kernel assembly; weights do not
// include the omega^2 omega'^2 radiative prefactor.
std::vector<LinePair> channel_pairs(const DensityMatrix& rho,
                                    const LevelScheme& scheme, Channel channel,
                                    const std::optional<BandMask>& mask = {});

// Stick spectrum: frequency and area per resolvable line, degenerate
// transitions summed at the amplitude level before squaring (coherent) or
// accumulated per population (incoherent). Areas carry the full
// molecule_factor * a_tilde^2 * omega^4 weight.
struct Stick {
  double omega = 0.0; // Ha, > 0 lines only
  double area = 0.0;
};

std::vector<Stick> stick_spectrum(const DensityMatrix& rho,
                                  const LevelScheme& scheme, Channel channel,
                                  int n_molecules,
                                  const std::optional<BandMask>& mask = {});

} // namespace nls
