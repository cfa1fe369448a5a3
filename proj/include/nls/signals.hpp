#pragma once

#include "nls/density_matrix.hpp"
#include "nls/level_scheme.hpp"
#include "nls/lines.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace nls {

// Unit-area Lorentzian of HWHM gamma; the delta-function lineshape used by
// every frequency-gated stick spectrum.
inline double lorentzian(double x, double gamma) {
  return gamma / (3.14159265358979323846 * (x * x + gamma * gamma));
}

// Uniformly sampled series; Nyquist guard against the fastest transition.
struct TimeSeries {
  double t0 = 0.0, dt = 0.0; // au
  std::vector<std::complex<double>> v;

  double time(int i) const { return t0 + dt * i; }
  int size() const { return static_cast<int>(v.size()); }
};

void check_nyquist(double dt, double max_abs_omega);

// P(t) = sum_bc rho_bc mu_cb e^{-i w_bc t}
std::complex<double> polarization(const DensityMatrix& rho,
                                  const LevelScheme& scheme, double t,
                                  const std::optional<BandMask>& mask = {});

// Each term carries the extra w_bc^2 radiative factor; |.|^2 is what enters
// the signals, so the overall sign is conventional.
std::complex<double> polarization_ddot(const DensityMatrix& rho,
                                       const LevelScheme& scheme, double t,
                                       const std::optional<BandMask>& mask = {});

// Pure-gate single-channel signals (arbitrary units).
double s_coh_time(const DensityMatrix& rho, const LevelScheme& scheme,
                  int n_molecules, double t_bar,
                  const std::optional<BandMask>& mask = {});

double s_coh_freq(const DensityMatrix& rho, const LevelScheme& scheme,
                  int n_molecules, double w_bar, double gamma,
                  const std::optional<BandMask>& mask = {});

double s_inc_time(const DensityMatrix& rho, const LevelScheme& scheme,
                  int n_molecules, double t_bar,
                  const std::optional<BandMask>& mask = {});

double s_inc_freq(const DensityMatrix& rho, const LevelScheme& scheme,
                  int n_molecules, double w_bar, double gamma,
                  const std::optional<BandMask>& mask = {});

// Bare spectrograms with the Gamma-damped half-line tau integral in closed
// form; the dispersive part is kept, signals take the real part.
std::complex<double> bare_coh_spectrogram(const DensityMatrix& rho,
                                          const LevelScheme& scheme,
                                          int n_molecules, double t_prime,
                                          double w_prime, double gamma,
                                          const std::optional<BandMask>& mask = {});

std::complex<double> bare_inc_spectrogram(const DensityMatrix& rho,
                                          const LevelScheme& scheme,
                                          int n_molecules, double t_prime,
                                          double w_prime, double gamma,
                                          const std::optional<BandMask>& mask = {});

// Two-band model: the general operations on band-filtered element sets.
BandMask two_band_coherent_mask(const LevelScheme& scheme);
BandMask two_band_incoherent_mask(const LevelScheme& scheme);

// True when the scheme violates the interband-only dipole assumption.
bool has_intraband_dipoles(const LevelScheme& scheme);

double two_band_s_time(const DensityMatrix& rho, const LevelScheme& scheme,
                       int n_molecules, Channel channel, double t_bar);

double two_band_s_freq(const DensityMatrix& rho, const LevelScheme& scheme,
                       int n_molecules, Channel channel, double w_bar,
                       double gamma);

} // namespace nls
