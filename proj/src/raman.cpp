#include "nls/raman.hpp"
#include "nls/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace nls {

void PulseSpec::validate() const {
  if (!(width > 0.0)) throw std::invalid_argument("pulse width must be > 0");
  if (lifetime_gamma < 0.0) throw std::invalid_argument("lifetime_gamma must be >= 0");
}

namespace {

std::complex<double> overlap_integral(double c1, double s1, double a1,
                                      double c2, double s2, double a2,
                                      double w_eg, double w_fg, double gamma) {
  // int dw E2*(w - w_eg) E1(w) / (w - w_fg + i gamma), Gaussian envelopes.
  const double lo = std::max(c1 - 8.0 * s1, w_eg + c2 - 8.0 * s2);
  const double hi = std::min(c1 + 8.0 * s1, w_eg + c2 + 8.0 * s2);
  if (!(lo < hi)) return 0.0;

  const double g = std::max(gamma, 1e-8); // keep the denominator off the axis
  const double step_target = std::min({s1, s2, 4.0 * g}) / 16.0;
  int n = static_cast<int>(std::ceil((hi - lo) / step_target));
  n = std::clamp(n, 64, 200000);
  if (n % 2) ++n;
  const double h = (hi - lo) / n;

  auto f = [&](double w) -> std::complex<double> {
    const double e1 = a1 * std::exp(-0.5 * std::pow((w - c1) / s1, 2));
    const double e2 = a2 * std::exp(-0.5 * std::pow((w - w_eg - c2) / s2, 2));
    return e1 * e2 / std::complex<double>(w - w_fg, g);
  };

  // Simpson rule
  std::complex<double> acc = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

} // namespace

Eigen::VectorXcd raman_amplitudes(const LevelScheme& scheme,
                                  const PulseSpec& pump,
                                  const PulseSpec& stokes) {
  pump.validate();
  stokes.validate();
  const auto cores = scheme.states_in_band(Band::Core);
  if (cores.empty()) throw std::runtime_error("Raman pathway requires f manifold");
  const auto grounds = scheme.states_in_band(Band::Ground);
  const int g = grounds.front();

  const double c1 = units::ev_to_ha(pump.center);
  const double s1 = units::ev_to_ha(pump.width);
  const double c2 = units::ev_to_ha(stokes.center);
  const double s2 = units::ev_to_ha(stokes.width);
  const double gam = units::ev_to_ha(pump.lifetime_gamma);

  Eigen::VectorXcd kappa = Eigen::VectorXcd::Zero(scheme.size());
  if (pump.amplitude == 0.0 || stokes.amplitude == 0.0) return kappa;

  for (int e = 0; e < scheme.size(); ++e) {
    if (scheme.bands[e] != Band::Valence) continue;
    const double w_eg = scheme.omega(e, g);
    std::complex<double> amp = 0.0;
    for (int f : cores) {
      const std::complex<double> mu_ef = scheme.dipoles(e, f);
      const std::complex<double> mu_fg = scheme.dipoles(f, g);
      if (mu_ef == 0.0 || mu_fg == 0.0) continue;
      amp += mu_ef * mu_fg *
             overlap_integral(c1, s1, pump.amplitude, c2, s2, stokes.amplitude,
                              w_eg, scheme.omega(f, g), gam);
    }
    kappa[e] = amp;
  }
  return kappa;
}

PreparedState raman_prepare(const LevelScheme& scheme, const PulseSpec& pump,
                            const PulseSpec& stokes) {
  Eigen::VectorXcd kappa = raman_amplitudes(scheme, pump, stokes);
  const double excited = kappa.squaredNorm();
  if (excited >= 1.0)
    throw std::runtime_error(
        "excitation too strong for a perturbative Raman preparation");
  const int g = scheme.states_in_band(Band::Ground).front();
  kappa[g] = std::sqrt(1.0 - excited);
  PreparedState st{std::move(kappa)};
  return st;
}

} // namespace nls
