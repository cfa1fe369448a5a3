#include "nls/lines.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nls {

double molecule_factor(Channel channel, int n_molecules) {
  const double n = static_cast<double>(n_molecules);
  return channel == Channel::Coherent ? n * (n - 1.0) : n;
}

std::vector<EmissionLine> coherent_lines(const DensityMatrix& rho,
                                         const LevelScheme& scheme,
                                         const std::optional<BandMask>& mask) {
  std::vector<EmissionLine> out;
  const int n = scheme.size();
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      if (mask && !(*mask)(b, c)) continue;
      const std::complex<double> amp = rho.rho(b, c) * scheme.dipoles(c, b);
      if (std::abs(amp) == 0.0) continue;
      out.push_back({b, c, scheme.omega(b, c), amp});
    }
  return out;
}

std::vector<LinePair> incoherent_pairs(const DensityMatrix& rho,
                                       const LevelScheme& scheme,
                                       const std::optional<BandMask>& mask) {
  // V is the lowering part of the dipole coupling, so only downward
  // transitions c -> b emit; a populated ground state gives no signal.
  std::vector<LinePair> out;
  const int n = scheme.size();
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      if (scheme.omega(c, b) <= 1e-12) continue;
      const std::complex<double> mu_cb = scheme.dipoles(c, b);
      if (mu_cb == 0.0) continue;
      for (int cp = 0; cp < n; ++cp) {
        if (scheme.omega(cp, b) <= 1e-12) continue;
        if (mask && !(*mask)(cp, c)) continue;
        const std::complex<double> w =
            mu_cb * std::conj(scheme.dipoles(cp, b)) * rho.rho(cp, c);
        if (std::abs(w) == 0.0) continue;
        out.push_back({scheme.omega(c, b), scheme.omega(cp, b), w});
      }
    }
  return out;
}

std::vector<LinePair> channel_pairs(const DensityMatrix& rho,
                                    const LevelScheme& scheme, Channel channel,
                                    const std::optional<BandMask>& mask) {
  if (channel == Channel::Incoherent) return incoherent_pairs(rho, scheme, mask);
  const auto lines = coherent_lines(rho, scheme, mask);
  std::vector<LinePair> out;
  out.reserve(lines.size() * lines.size());
  for (const auto& j : lines)
    for (const auto& k : lines)
      out.push_back({j.omega, k.omega, j.amp * std::conj(k.amp)});
  return out;
}

namespace {
constexpr double degeneracy_tol = 1e-9; // Ha
}

std::vector<Stick> stick_spectrum(const DensityMatrix& rho,
                                  const LevelScheme& scheme, Channel channel,
                                  int n_molecules,
                                  const std::optional<BandMask>& mask) {
  const double pref = molecule_factor(channel, n_molecules) * a_tilde * a_tilde;
  // Bin key: frequency quantized at the degeneracy tolerance.
  auto key = [](double w) { return std::llround(w / degeneracy_tol); };

  std::vector<Stick> out;
  if (channel == Channel::Coherent) {
    std::map<long long, std::complex<double>> groups; // coherent amplitude sums
    for (const auto& ln : coherent_lines(rho, scheme, mask)) {
      if (ln.omega <= degeneracy_tol) continue;
      groups[key(ln.omega)] += ln.omega * ln.omega * ln.amp;
    }
    for (const auto& [k, amp] : groups)
      out.push_back({k * degeneracy_tol, pref * std::norm(amp)});
  } else {
    std::map<long long, double> groups;
    const int n = scheme.size();
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (mask && !(*mask)(c, c)) continue;
        const double w = scheme.omega(c, b);
        if (w <= degeneracy_tol) continue; // emission c -> b only
        const double pop = rho.rho(c, c).real();
        const double area =
            std::pow(w, 4) * std::norm(scheme.dipoles(c, b)) * pop;
        if (area == 0.0) continue;
        groups[key(w)] += area;
      }
    for (const auto& [k, area] : groups)
      out.push_back({k * degeneracy_tol, pref * area});
  }
  std::sort(out.begin(), out.end(),
            [](const Stick& a, const Stick& b) { return a.omega < b.omega; });
  return out;
}

} // namespace nls
