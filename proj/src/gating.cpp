#include "nls/gating.hpp"
#include "nls/signals.hpp"
#include "nls/units.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace nls {

namespace {
constexpr double pi = 3.14159265358979323846;
}

GateSpec GateSpec::pure_time() { return {GateMode::PureTime, 0.0, 0.0, 0.0}; }

GateSpec GateSpec::pure_frequency(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  return {GateMode::PureFrequency, 0.0, 0.0, gamma};
}

GateSpec GateSpec::combined(double sigma_T, double sigma_w, double gamma) {
  if (!(sigma_T > 0.0) || !(sigma_w > 0.0))
    throw std::invalid_argument("gate widths must be > 0");
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (sigma_T * sigma_w < 1.0)
    throw std::invalid_argument(
        "sigma_T * sigma_w >= 1 required (Fourier uncertainty)");
  return {GateMode::Combined, sigma_T, sigma_w, gamma};
}

// Weideman's rational expansion of the Faddeeva function (SIAM Rev. 36, 1994).
namespace {

constexpr int fadN = 40;

struct FadCoeffs {
  double L;
  std::array<double, fadN> a; // highest power first

  FadCoeffs() {
    const int M = 2 * fadN;
    const int M2 = 2 * M;
    L = std::sqrt(fadN / std::sqrt(2.0));
    std::vector<double> f(M2, 0.0);
    // f[0] = 0; f[1..2M-1] sampled on the tangent grid
    for (int idx = 1; idx < M2; ++idx) {
      const int k = idx - M; // -M+1 .. M-1
      const double theta = k * pi / M;
      const double t = L * std::tan(0.5 * theta);
      f[idx] = std::exp(-t * t) * (L * L + t * t);
    }
    // fftshift
    std::vector<double> fs(M2);
    for (int i = 0; i < M2; ++i) fs[i] = f[(i + M) % M2];
    // real part of the DFT, coefficients 1..fadN, flipped
    for (int n = 1; n <= fadN; ++n) {
      double re = 0.0;
      for (int m = 0; m < M2; ++m) re += fs[m] * std::cos(2.0 * pi * n * m / M2);
      a[fadN - n] = re / M2;
    }
  }
};

const FadCoeffs& fad_coeffs() {
  static const FadCoeffs c;
  return c;
}

} // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  const auto& c = fad_coeffs();
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> d = c.L - iz;
  const std::complex<double> Z = (c.L + iz) / d;
  std::complex<double> p = 0.0;
  for (int k = 0; k < fadN; ++k) p = p * Z + c.a[k];
  return 2.0 * p / (d * d) + (1.0 / std::sqrt(pi)) / d;
}

double voigt(double x, double sigma, double gamma) {
  if (gamma <= 0.0)
    return std::exp(-0.5 * x * x / (sigma * sigma)) /
           (sigma * std::sqrt(2.0 * pi));
  const std::complex<double> z(x / (sigma * std::sqrt(2.0)),
                               gamma / (sigma * std::sqrt(2.0)));
  return faddeeva_w(z).real() / (sigma * std::sqrt(2.0 * pi));
}

std::complex<double> gate_kernel(double w1, double w2, double t_bar,
                                 double w_bar, const GateSpec& gate) {
  const double mid = 0.5 * (w1 + w2);
  const std::complex<double> osc =
      std::exp(std::complex<double>(0.0, (w2 - w1) * t_bar));
  switch (gate.mode) {
    case GateMode::PureTime:
      if (gate.sigma_w > 0.0)
        throw std::invalid_argument(
            "pure-time gating cannot provide frequency resolution");
      return 0.5 * osc;
    case GateMode::PureFrequency:
      // Ideal frequency gate: only degenerate pairs survive the infinite
      // time integration; the lineshape is the broadened stick.
      if (std::abs(w1 - w2) > 1e-9) return 0.0;
      return lorentzian(w_bar - mid, gate.gamma) * osc;
    case GateMode::Combined: {
      const double cut = 0.25 * gate.sigma_T * gate.sigma_T * (w1 - w2) * (w1 - w2);
      if (cut > 700.0) return 0.0;
      const double sig_eff = std::sqrt(
          0.5 * (gate.sigma_w * gate.sigma_w +
                 1.0 / (gate.sigma_T * gate.sigma_T)));
      return std::exp(-cut) * voigt(w_bar - mid, sig_eff, gate.gamma) * osc;
    }
  }
  return 0.0;
}

double interference_window(const GateSpec& gate) {
  if (gate.mode != GateMode::Combined)
    throw std::invalid_argument("interference window needs a combined gate");
  return gate.sigma_w + 1.0 / gate.sigma_T;
}

double beat_period_to_splitting(double t_beat_fs) {
  if (!(t_beat_fs > 0.0)) throw std::invalid_argument("beat period must be > 0");
  return units::ha_to_ev(2.0 * pi / units::fs_to_au(t_beat_fs));
}

double splitting_to_beat_period(double w_ab_ev) {
  if (!(w_ab_ev > 0.0)) throw std::invalid_argument("splitting must be > 0");
  return units::au_to_fs(2.0 * pi / units::ev_to_ha(w_ab_ev));
}

Spectrogram gated_spectrogram(const DensityMatrix& rho,
                              const LevelScheme& scheme, int n_molecules,
                              Channel channel, const GateSpec& gate,
                              const std::vector<double>& t_grid_au,
                              const std::vector<double>& w_grid_ha) {
  if (gate.mode == GateMode::PureTime && gate.sigma_w > 0.0)
    throw std::invalid_argument(
        "pure-time gating cannot provide frequency resolution");
  auto pairs = channel_pairs(rho, scheme, channel);
  const double pref = molecule_factor(channel, n_molecules) * a_tilde * a_tilde;

  // Drop pairs whose interference is unobservable through this gate.
  double scale = 0.0;
  for (const auto& p : pairs)
    scale = std::max(scale, std::abs(p.weight) * p.omega1 * p.omega1 *
                                p.omega2 * p.omega2);
  std::vector<LinePair> kept;
  double max_beat = 0.0;
  for (const auto& p : pairs) {
    double damp = 1.0;
    if (gate.mode == GateMode::Combined) {
      const double cut =
          0.25 * std::pow(gate.sigma_T * (p.omega1 - p.omega2), 2);
      damp = cut > 700.0 ? 0.0 : std::exp(-cut);
    }
    const double mag = std::abs(p.weight) * p.omega1 * p.omega1 * p.omega2 *
                       p.omega2 * damp;
    if (mag > 1e-15 * scale) {
      kept.push_back(p);
      max_beat = std::max(max_beat, std::abs(p.omega1 - p.omega2));
    }
  }

  if (t_grid_au.size() > 1) {
    const double dt = t_grid_au[1] - t_grid_au[0];
    if (max_beat > 0.0 && dt > pi / (1.2 * max_beat))
      std::cerr << "warning: t grid undersamples the fastest surviving beat\n";
  }
  if (w_grid_ha.size() > 1 && gate.gamma > 0.0) {
    const double dw = w_grid_ha[1] - w_grid_ha[0];
    if (dw > gate.gamma)
      std::cerr << "warning: w grid too coarse to resolve gamma\n";
  }

  Spectrogram sg;
  sg.gate = gate;
  sg.channel = channel;
  sg.n_molecules = n_molecules;
  sg.t_fs.reserve(t_grid_au.size());
  for (double t : t_grid_au) sg.t_fs.push_back(units::au_to_fs(t));
  sg.w_ev.reserve(w_grid_ha.size());
  for (double w : w_grid_ha) sg.w_ev.push_back(units::ha_to_ev(w));

  const int nt = static_cast<int>(t_grid_au.size());
  const int nw = static_cast<int>(w_grid_ha.size());
  sg.values = Eigen::MatrixXd::Zero(nt, nw);

  // K is separable in (tbar, wbar): accumulate outer products per pair.
  std::vector<std::complex<double>> phase(nt);
  std::vector<double> shape(nw);
  for (const auto& p : kept) {
    for (int it = 0; it < nt; ++it)
      phase[it] = p.weight * std::exp(std::complex<double>(
                                 0.0, (p.omega2 - p.omega1) * t_grid_au[it]));
    const double mid = 0.5 * (p.omega1 + p.omega2);
    double damp = 1.0;
    double sig_eff = 0.0;
    if (gate.mode == GateMode::Combined) {
      damp = std::exp(-0.25 * std::pow(gate.sigma_T * (p.omega1 - p.omega2), 2));
      sig_eff = std::sqrt(0.5 * (gate.sigma_w * gate.sigma_w +
                                 1.0 / (gate.sigma_T * gate.sigma_T)));
    }
    for (int iw = 0; iw < nw; ++iw) {
      switch (gate.mode) {
        case GateMode::PureTime:
          shape[iw] = 0.5;
          break;
        case GateMode::PureFrequency:
          shape[iw] = std::abs(p.omega1 - p.omega2) > 1e-9
                          ? 0.0
                          : lorentzian(w_grid_ha[iw] - mid, gate.gamma);
          break;
        case GateMode::Combined:
          shape[iw] = damp * voigt(w_grid_ha[iw] - mid, sig_eff, gate.gamma);
          break;
      }
    }
    const double amp = pref * p.omega1 * p.omega1 * p.omega2 * p.omega2;
    for (int it = 0; it < nt; ++it) {
      const double re = phase[it].real();
      for (int iw = 0; iw < nw; ++iw)
        sg.values(it, iw) += amp * re * shape[iw];
    }
  }
  return sg;
}

double beat_contrast(const std::vector<double>& trace) {
  const auto [mn, mx] = std::minmax_element(trace.begin(), trace.end());
  const double lo = *mn, hi = *mx;
  if (hi + lo == 0.0) return 0.0;
  return (hi - lo) / (hi + lo);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

} // namespace nls
