#pragma once

#include "nls/density_matrix.hpp"
#include "nls/gating.hpp"
#include "nls/level_scheme.hpp"
#include "nls/lines.hpp"
#include "nls/signals.hpp"

#include <complex>
#include <vector>

// Brute-force and semiclassical reference implementations used by tests.
// Everything here is deliberately slow: direct quadrature of the defining
// integrals, no shared numerics with the analytic signal path.
namespace nls::oracles {

// Gated signal from the defining detection chain, evaluated numerically:
// Gaussian time gate applied to each emission amplitude, Fourier transform
// by quadrature, spectral filter (convolved with the Lorentzian line
// broadening), modulus squared and integrated. Normalized to the analytic
// kernel scale. Throws if grid refinement does not converge.
double brute_force_gated(const DensityMatrix& rho, const LevelScheme& scheme,
                         int n_molecules, Channel channel,
                         const GateSpec& gate, double t_bar, double w_bar);

// Direct tau quadrature of the half-line bare-spectrogram integral with
// e^{-gamma tau} damping.
std::complex<double> bare_coh_quadrature(const DensityMatrix& rho,
                                         const LevelScheme& scheme,
                                         int n_molecules, double t_prime,
                                         double w_prime, double gamma);

// Classical time-resolved emission, S(t) = B^2 |Pddot(t)|^2.
std::vector<double> classical_larmor(const TimeSeries& pddot, double b);

// Retarded far-field of a point dipole, E(t) = (4 pi eps0 c^2 r)^-1
// Pddot(t - r/c), via spectral differentiation of the sampled polarization.
TimeSeries wave_equation_field(const TimeSeries& p, double r);

// Polarization and its second derivative sampled by direct term sums
// (independent loop, used for constant-ratio checks).
TimeSeries sample_polarization(const DensityMatrix& rho,
                               const LevelScheme& scheme, double t0, double dt,
                               int n);
TimeSeries sample_pddot(const DensityMatrix& rho, const LevelScheme& scheme,
                        double t0, double dt, int n);

// Central-difference second derivative of the polarization at t.
std::complex<double> fd_polarization_ddot(const DensityMatrix& rho,
                                          const LevelScheme& scheme, double t,
                                          double h);

// Frequency (rad / time unit of dt) of the strongest nonzero DFT bin.
double dominant_frequency(const std::vector<double>& trace, double dt);

} // namespace nls::oracles
