#include "nls/level_scheme.hpp"
#include "nls/units.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

using json = nlohmann::json;

namespace nls {

Band band_from_string(const std::string& s) {
  if (s == "g") return Band::Ground;
  if (s == "e") return Band::Valence;
  if (s == "f") return Band::Core;
  throw std::runtime_error("unknown band tag '" + s + "' (expected g, e or f)");
}

std::string band_to_string(Band b) {
  switch (b) {
    case Band::Ground: return "g";
    case Band::Valence: return "e";
    case Band::Core: return "f";
  }
  return "?";
}

double LevelScheme::max_abs_omega() const {
  double m = 0.0;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < a; ++b) m = std::max(m, std::abs(omega(a, b)));
  return m;
}

std::vector<int> LevelScheme::states_in_band(Band b) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (bands[i] == b) out.push_back(i);
  return out;
}

void LevelScheme::validate() const {
  const int n = size();
  if (n == 0) throw std::runtime_error("level scheme is empty");
  if (static_cast<int>(bands.size()) != n ||
      dipoles.rows() != n || dipoles.cols() != n)
    throw std::runtime_error("level scheme field sizes disagree");
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(energies[i]))
      throw std::runtime_error("non-finite energy at state " + std::to_string(i));
  if (states_in_band(Band::Ground).empty())
    throw std::runtime_error("level scheme has no ground (g) state");
  for (int i = 0; i < n; ++i) {
    if (std::abs(dipoles(i, i)) > 0.0)
      throw std::runtime_error("nonzero diagonal dipole at state " + std::to_string(i));
    for (int j = 0; j < i; ++j) {
      if (std::abs(dipoles(i, j) - std::conj(dipoles(j, i))) > 1e-12) {
        std::ostringstream os;
        os << "dipole matrix not Hermitian for pair (" << i << "," << j << ")";
        throw std::runtime_error(os.str());
      }
    }
  }
}

LevelScheme load_level_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open level scheme file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("level scheme parse failure in " + path + ": " + e.what());
  }

  LevelScheme s;
  if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty())
    throw std::runtime_error("level scheme schema error: missing 'states' array");
  const auto& states = doc["states"];
  const int n = static_cast<int>(states.size());
  s.energies.resize(n);
  s.bands.resize(n);
  s.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& st = states[i];
    if (!st.contains("energy_ev") || !st.contains("band"))
      throw std::runtime_error("level scheme schema error: state " + std::to_string(i) +
                               " needs 'energy_ev' and 'band'");
    s.energies[i] = units::ev_to_ha(st["energy_ev"].get<double>());
    s.bands[i] = band_from_string(st["band"].get<std::string>());
    s.labels[i] = st.value("label", "s" + std::to_string(i));
  }

  s.dipoles = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXi given = Eigen::MatrixXi::Zero(n, n);
  for (const auto& d : doc.value("dipoles", json::array())) {
    const int i = d.at("i").get<int>();
    const int j = d.at("j").get<int>();
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::runtime_error("level scheme schema error: dipole index out of range");
    s.dipoles(i, j) = {d.value("re", 0.0), d.value("im", 0.0)};
    given(i, j) = 1;
  }
  // Mirror entries given on one side only; entries given on both sides must
  // already be Hermitian partners.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (given(i, j) && !given(j, i)) s.dipoles(j, i) = std::conj(s.dipoles(i, j));

  s.validate();
  return s;
}

void save_level_scheme(const LevelScheme& scheme, const std::string& path) {
  json doc;
  doc["states"] = json::array();
  for (int i = 0; i < scheme.size(); ++i) {
    doc["states"].push_back({{"label", scheme.labels[i]},
                             {"energy_ev", units::ha_to_ev(scheme.energies[i])},
                             {"band", band_to_string(scheme.bands[i])}});
  }
  doc["dipoles"] = json::array();
  for (int i = 0; i < scheme.size(); ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(scheme.dipoles(i, j)) > 0.0)
        doc["dipoles"].push_back({{"i", i},
                                  {"j", j},
                                  {"re", scheme.dipoles(i, j).real()},
                                  {"im", scheme.dipoles(i, j).imag()}});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write level scheme file: " + path);
  out << doc.dump(2) << "\n";
}

LevelScheme generate_synthetic_manifold(int n_valence, double e_min_ev,
                                        double e_max_ev, std::uint64_t seed,
                                        const ManifoldOptions& opt) {
  if (n_valence < 1) throw std::invalid_argument("n_valence must be >= 1");
  if (!(e_min_ev < e_max_ev)) throw std::invalid_argument("need e_min < e_max");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<double> ev(n_valence);
  for (double& e : ev) e = e_min_ev + (e_max_ev - e_min_ev) * u01(rng);
  std::sort(ev.begin(), ev.end());

  const int n = 1 + n_valence + opt.n_core;
  LevelScheme s;
  s.energies.resize(n);
  s.bands.resize(n);
  s.labels.resize(n);
  s.dipoles = Eigen::MatrixXcd::Zero(n, n);

  s.energies[0] = 0.0;
  s.bands[0] = Band::Ground;
  s.labels[0] = "g0";
  for (int i = 0; i < n_valence; ++i) {
    s.energies[1 + i] = units::ev_to_ha(ev[i]);
    s.bands[1 + i] = Band::Valence;
    s.labels[1 + i] = "e" + std::to_string(i);
  }

  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };

  for (int i = 1; i <= n_valence; ++i) {
    const double mu = draw(opt.dipole_min, opt.dipole_max);
    s.dipoles(0, i) = mu;
    s.dipoles(i, 0) = mu;
  }
  if (opt.intraband_dipoles) {
    for (int i = 1; i <= n_valence; ++i)
      for (int j = i + 1; j <= n_valence; ++j) {
        const double mu = draw(opt.intraband_dipole_min, opt.intraband_dipole_max);
        s.dipoles(i, j) = mu;
        s.dipoles(j, i) = mu;
      }
  }

  if (opt.n_core > 0) {
    std::vector<double> fc(opt.n_core);
    for (double& e : fc) e = draw(opt.core_min_ev, opt.core_max_ev);
    std::sort(fc.begin(), fc.end());
    for (int k = 0; k < opt.n_core; ++k) {
      const int f = 1 + n_valence + k;
      s.energies[f] = units::ev_to_ha(fc[k]);
      s.bands[f] = Band::Core;
      s.labels[f] = "f" + std::to_string(k);
      // Core states couple to the ground state and the valence manifold.
      for (int i = 0; i <= n_valence; ++i) {
        const double mu = draw(opt.dipole_min, opt.dipole_max);
        s.dipoles(i, f) = mu;
        s.dipoles(f, i) = mu;
      }
    }
  }

  s.validate();
  return s;
}

} // namespace nls
