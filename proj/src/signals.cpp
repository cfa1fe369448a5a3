#include "nls/signals.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace nls {

namespace {
constexpr double pi = 3.14159265358979323846;
}

void check_nyquist(double dt, double max_abs_omega) {
  if (max_abs_omega > 0.0 && dt > pi / (1.2 * max_abs_omega))
    throw std::runtime_error("sampling step violates the Nyquist bound");
}

std::complex<double> polarization(const DensityMatrix& rho,
                                  const LevelScheme& scheme, double t,
                                  const std::optional<BandMask>& mask) {
  std::complex<double> p = 0.0;
  for (const auto& ln : coherent_lines(rho, scheme, mask))
    p += ln.amp * std::exp(std::complex<double>(0.0, -ln.omega * t));
  return p;
}

std::complex<double> polarization_ddot(const DensityMatrix& rho,
                                       const LevelScheme& scheme, double t,
                                       const std::optional<BandMask>& mask) {
  std::complex<double> p = 0.0;
  for (const auto& ln : coherent_lines(rho, scheme, mask))
    p += ln.omega * ln.omega * ln.amp *
         std::exp(std::complex<double>(0.0, -ln.omega * t));
  return p;
}

double s_coh_time(const DensityMatrix& rho, const LevelScheme& scheme,
                  int n_molecules, double t_bar,
                  const std::optional<BandMask>& mask) {
  const double pref =
      molecule_factor(Channel::Coherent, n_molecules) * a_tilde * a_tilde / 2.0;
  return pref * std::norm(polarization_ddot(rho, scheme, t_bar, mask));
}

double s_coh_freq(const DensityMatrix& rho, const LevelScheme& scheme,
                  int n_molecules, double w_bar, double gamma,
                  const std::optional<BandMask>& mask) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  double s = 0.0;
  for (const auto& st :
       stick_spectrum(rho, scheme, Channel::Coherent, n_molecules, mask))
    s += st.area * lorentzian(w_bar - st.omega, gamma);
  return s;
}

double s_inc_time(const DensityMatrix& rho, const LevelScheme& scheme,
                  int n_molecules, double t_bar,
                  const std::optional<BandMask>& mask) {
  const double pref =
      molecule_factor(Channel::Incoherent, n_molecules) * a_tilde * a_tilde / 2.0;
  std::complex<double> acc = 0.0;
  for (const auto& p : incoherent_pairs(rho, scheme, mask))
    acc += p.omega1 * p.omega1 * p.omega2 * p.omega2 * p.weight *
           std::exp(std::complex<double>(0.0, (p.omega2 - p.omega1) * t_bar));
  return pref * acc.real();
}

double s_inc_freq(const DensityMatrix& rho, const LevelScheme& scheme,
                  int n_molecules, double w_bar, double gamma,
                  const std::optional<BandMask>& mask) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  double s = 0.0;
  for (const auto& st :
       stick_spectrum(rho, scheme, Channel::Incoherent, n_molecules, mask))
    s += st.area * lorentzian(w_bar - st.omega, gamma);
  return s;
}

namespace {

std::complex<double> bare_from_pairs(const std::vector<LinePair>& pairs,
                                     double pref, double t_prime,
                                     double w_prime, double gamma) {
  std::complex<double> acc = 0.0;
  for (const auto& p : pairs) {
    const double mid = 0.5 * (p.omega1 + p.omega2);
    const std::complex<double> half_line =
        1.0 / std::complex<double>(gamma, w_prime - mid);
    acc += p.omega1 * p.omega1 * p.omega2 * p.omega2 * p.weight *
           std::exp(std::complex<double>(0.0, (p.omega2 - p.omega1) * t_prime)) *
           half_line;
  }
  return pref * acc;
}

} // namespace

std::complex<double> bare_coh_spectrogram(const DensityMatrix& rho,
                                          const LevelScheme& scheme,
                                          int n_molecules, double t_prime,
                                          double w_prime, double gamma,
                                          const std::optional<BandMask>& mask) {
  return bare_from_pairs(
      channel_pairs(rho, scheme, Channel::Coherent, mask),
      molecule_factor(Channel::Coherent, n_molecules) * a_tilde * a_tilde,
      t_prime, w_prime, gamma);
}

std::complex<double> bare_inc_spectrogram(const DensityMatrix& rho,
                                          const LevelScheme& scheme,
                                          int n_molecules, double t_prime,
                                          double w_prime, double gamma,
                                          const std::optional<BandMask>& mask) {
  return bare_from_pairs(
      channel_pairs(rho, scheme, Channel::Incoherent, mask),
      molecule_factor(Channel::Incoherent, n_molecules) * a_tilde * a_tilde,
      t_prime, w_prime, gamma);
}

BandMask two_band_coherent_mask(const LevelScheme& scheme) {
  return band_filter(scheme, {{Band::Ground, Band::Valence},
                              {Band::Valence, Band::Ground}});
}

BandMask two_band_incoherent_mask(const LevelScheme& scheme) {
  return band_filter(scheme, {{Band::Valence, Band::Valence}});
}

bool has_intraband_dipoles(const LevelScheme& scheme) {
  const int n = scheme.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (scheme.bands[i] == scheme.bands[j] &&
          std::abs(scheme.dipoles(i, j)) > 0.0)
        return true;
  return false;
}

namespace {
void warn_if_intraband(const LevelScheme& scheme) {
  if (has_intraband_dipoles(scheme))
    std::cerr << "warning: two-band model requested on a scheme with "
                 "intraband dipoles\n";
}
} // namespace

double two_band_s_time(const DensityMatrix& rho, const LevelScheme& scheme,
                       int n_molecules, Channel channel, double t_bar) {
  warn_if_intraband(scheme);
  if (channel == Channel::Coherent)
    return s_coh_time(rho, scheme, n_molecules, t_bar,
                      two_band_coherent_mask(scheme));
  return s_inc_time(rho, scheme, n_molecules, t_bar,
                    two_band_incoherent_mask(scheme));
}

double two_band_s_freq(const DensityMatrix& rho, const LevelScheme& scheme,
                       int n_molecules, Channel channel, double w_bar,
                       double gamma) {
  warn_if_intraband(scheme);
  if (channel == Channel::Coherent)
    return s_coh_freq(rho, scheme, n_molecules, w_bar, gamma,
                      two_band_coherent_mask(scheme));
  return s_inc_freq(rho, scheme, n_molecules, w_bar, gamma,
                    two_band_incoherent_mask(scheme));
}

} // namespace nls
