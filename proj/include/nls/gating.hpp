#pragma once

#include "nls/density_matrix.hpp"
#include "nls/level_scheme.hpp"
#include "nls/lines.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace nls {

enum class GateMode { PureTime, PureFrequency, Combined };

// Detector gating configuration. sigma_T in au, sigma_w in Ha, gamma
// (line broadening) in Ha. Combined mode enforces the Fourier uncertainty
// sigma_T * sigma_w >= 1 at construction.
struct GateSpec {
  GateMode mode = GateMode::Combined;
  double sigma_T = 0.0;
  double sigma_w = 0.0;
  double gamma = 0.0;

  static GateSpec pure_time();
  static GateSpec pure_frequency(double gamma);
  static GateSpec combined(double sigma_T, double sigma_w, double gamma);
};

// Faddeeva function w(z) = e^{-z^2} erfc(-iz), upper half plane.
std::complex<double> faddeeva_w(std::complex<double> z);

// Unit-area Voigt profile: Gaussian of std sigma convolved with a
// Lorentzian of HWHM gamma.
double voigt(double x, double sigma, double gamma);

// Detector kernel acting on one pair of emission lines. The gated signal is
//   S(tbar, wbar) = molecule_factor * a_tilde^2 *
//                   Re sum_pairs w * w1^2 w2^2 * K(w1, w2; tbar, wbar).
// Combined mode: time gate applied to the emitted amplitude, then the
// frequency filter, then modulus-squared-and-integrated; closed form is a
// Gaussian interference cutoff in (w1 - w2), a Voigt lineshape in
// (wbar - (w1+w2)/2) and the oscillation e^{i(w2-w1) tbar}.
// Satisfies K(w1,w2) = conj(K(w2,w1)).
std::complex<double> gate_kernel(double w1, double w2, double t_bar,
                                 double w_bar, const GateSpec& gate);

// Maximum level spacing whose beat survives the gate, Delta = sigma_w + 1/sigma_T.
double interference_window(const GateSpec& gate); // Ha

double beat_period_to_splitting(double t_beat_fs); // -> |w_ab| in eV
double splitting_to_beat_period(double w_ab_ev);   // -> fs

struct Spectrogram {
  std::vector<double> t_fs;  // gate center times
  std::vector<double> w_ev;  // gate center frequencies
  Eigen::MatrixXd values;    // (i_t, i_w), real
  GateSpec gate;
  Channel channel = Channel::Incoherent;
  int n_molecules = 1;
};

Spectrogram gated_spectrogram(const DensityMatrix& rho,
                              const LevelScheme& scheme, int n_molecules,
                              Channel channel, const GateSpec& gate,
                              const std::vector<double>& t_grid_au,
                              const std::vector<double>& w_grid_ha);

// (max - min) / (max + min) of a sampled trace.
double beat_contrast(const std::vector<double>& trace);

std::vector<double> linspace(double lo, double hi, int n);

} // namespace nls
