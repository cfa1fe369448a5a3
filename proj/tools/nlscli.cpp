// Command-line front end: every subcommand reads one JSON config and writes
// self-describing CSV/JSON outputs. Exit codes: 0 ok, 2 bad config or
// inputs, 3 numerical failure during the computation.

#include "nls/csv.hpp"
#include "nls/density_matrix.hpp"
#include "nls/ensemble.hpp"
#include "nls/gating.hpp"
#include "nls/level_scheme.hpp"
#include "nls/raman.hpp"
#include "nls/signals.hpp"
#include "nls/units.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using json = nlohmann::json;
using namespace nls;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

// Loading and validation failures count as config errors.
template <typename F>
auto loading(F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

PulseSpec pulse_from(const json& j) {
  PulseSpec p;
  p.center = j.at("center").get<double>();
  p.width = j.at("width").get<double>();
  p.amplitude = j.value("amplitude", 1.0);
  p.lifetime_gamma = j.value("lifetime_gamma", 0.5);
  p.validate();
  return p;
}

DensityMatrix load_state(const json& cfg, const LevelScheme& scheme) {
  const std::string spec = cfg.value("state", "ground");
  if (spec == "ground") return ground_state(scheme);
  std::ifstream f(spec);
  if (!f) throw ConfigError("cannot open state " + spec);
  json j = json::parse(f);
  PreparedState st;
  st.kappa = Eigen::VectorXcd::Zero(j.at("kappa").size());
  int i = 0;
  for (const auto& k : j.at("kappa"))
    st.kappa[i++] = {k.at("re").get<double>(), k.at("im").get<double>()};
  if (st.size() != scheme.size())
    throw ConfigError("state dimension does not match the scheme");
  return rho_from_kappa(st);
}

Channel channel_from(const std::string& s) {
  if (s == "coherent") return Channel::Coherent;
  if (s == "incoherent") return Channel::Incoherent;
  throw ConfigError("unknown channel '" + s + "'");
}

GateSpec gate_from(const json& j) {
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "pure_time") return GateSpec::pure_time();
  if (mode == "pure_frequency")
    return GateSpec::pure_frequency(units::ev_to_ha(j.at("gamma_ev").get<double>()));
  if (mode == "combined")
    return GateSpec::combined(units::fs_to_au(j.at("sigma_T_fs").get<double>()),
                              units::ev_to_ha(j.at("sigma_w_ev").get<double>()),
                              units::ev_to_ha(j.value("gamma_ev", 0.04)));
  throw ConfigError("unknown gate mode '" + mode + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

int cmd_synth(const json& cfg, const std::string& out,
              std::optional<std::uint64_t> seed) {
  const auto scheme = loading([&] {
    ManifoldOptions opt;
    opt.intraband_dipoles = cfg.value("intraband_dipoles", false);
    opt.dipole_min = cfg.value("dipole_min", opt.dipole_min);
    opt.dipole_max = cfg.value("dipole_max", opt.dipole_max);
    opt.n_core = cfg.value("n_core", 0);
    opt.core_min_ev = cfg.value("core_min_ev", opt.core_min_ev);
    opt.core_max_ev = cfg.value("core_max_ev", opt.core_max_ev);
    return generate_synthetic_manifold(
        cfg.at("n_valence").get<int>(), cfg.at("e_min_ev").get<double>(),
        cfg.at("e_max_ev").get<double>(),
        seed.value_or(cfg.value("seed", 1)), opt);
  });
  save_level_scheme(scheme, out);
  return 0;
}

int cmd_prepare(const json& cfg, const std::string& out,
                std::optional<std::uint64_t>) {
  LevelScheme scheme;
  PulseSpec pump, stokes;
  loading([&] {
    scheme = load_level_scheme(cfg.at("scheme").get<std::string>());
    pump = pulse_from(cfg.at("pump"));
    // one broadband pulse may serve as both fields
    stokes = cfg.contains("stokes") ? pulse_from(cfg.at("stokes")) : pump;
    return 0;
  });
  const auto state = raman_prepare(scheme, pump, stokes);
  json j;
  j["kappa"] = json::array();
  for (int i = 0; i < state.size(); ++i)
    j["kappa"].push_back({{"re", state.kappa[i].real()},
                          {"im", state.kappa[i].imag()}});
  j["weak_excitation"] = state.weak_excitation(scheme);
  j["config"] = cfg;
  write_text(out, j.dump(2) + "\n");
  return 0;
}

int cmd_spectrum(const json& cfg, const std::string& out,
                 std::optional<std::uint64_t>) {
  LevelScheme scheme;
  DensityMatrix rho;
  loading([&] {
    scheme = load_level_scheme(cfg.at("scheme").get<std::string>());
    rho = load_state(cfg, scheme);
    rho.validate();
    return 0;
  });
  const int n_mol = cfg.value("n_molecules", 2);
  const double gamma = units::ev_to_ha(cfg.value("gamma_ev", 0.04));
  const bool two_band = cfg.value("two_band", false);
  const std::string domain = cfg.value("domain", "frequency");
  const auto& ax = cfg.at("axis");
  const auto grid = linspace(ax.at("min").get<double>(),
                             ax.at("max").get<double>(), ax.at("points").get<int>());

  CsvTable t;
  t.meta.push_back("config=" + cfg.dump());
  t.rows.reserve(grid.size());
  if (domain == "frequency") {
    t.columns = {"w_ev", "coherent", "incoherent", "total"};
    for (double w_ev : grid) {
      const double w = units::ev_to_ha(w_ev);
      const double c =
          two_band
              ? two_band_s_freq(rho, scheme, n_mol, Channel::Coherent, w, gamma)
              : s_coh_freq(rho, scheme, n_mol, w, gamma);
      const double i =
          two_band
              ? two_band_s_freq(rho, scheme, n_mol, Channel::Incoherent, w, gamma)
              : s_inc_freq(rho, scheme, n_mol, w, gamma);
      t.rows.push_back({w_ev, c, i, c + i});
    }
  } else if (domain == "time") {
    t.columns = {"t_fs", "coherent", "incoherent", "total"};
    for (double t_fs : grid) {
      const double tb = units::fs_to_au(t_fs);
      const double c =
          two_band ? two_band_s_time(rho, scheme, n_mol, Channel::Coherent, tb)
                   : s_coh_time(rho, scheme, n_mol, tb);
      const double i =
          two_band ? two_band_s_time(rho, scheme, n_mol, Channel::Incoherent, tb)
                   : s_inc_time(rho, scheme, n_mol, tb);
      t.rows.push_back({t_fs, c, i, c + i});
    }
  } else {
    throw ConfigError("domain must be 'frequency' or 'time'");
  }
  write_csv(t, out);
  return 0;
}

int cmd_spectrogram(const json& cfg, const std::string& out,
                    std::optional<std::uint64_t>) {
  LevelScheme scheme;
  DensityMatrix rho;
  GateSpec gate;
  loading([&] {
    scheme = load_level_scheme(cfg.at("scheme").get<std::string>());
    rho = load_state(cfg, scheme);
    rho.validate();
    gate = gate_from(cfg.at("gate"));
    return 0;
  });
  const int n_mol = cfg.value("n_molecules", 2);
  const auto channel = channel_from(cfg.value("channel", "incoherent"));
  const auto& tj = cfg.at("t");
  const auto& wj = cfg.at("w");
  std::vector<double> t_grid, w_grid;
  for (double v : linspace(tj.at("min_fs").get<double>(),
                           tj.at("max_fs").get<double>(),
                           tj.at("points").get<int>()))
    t_grid.push_back(units::fs_to_au(v));
  for (double v : linspace(wj.at("min_ev").get<double>(),
                           wj.at("max_ev").get<double>(),
                           wj.at("points").get<int>()))
    w_grid.push_back(units::ev_to_ha(v));

  const auto sg = gated_spectrogram(rho, scheme, n_mol, channel, gate, t_grid,
                                    w_grid);
  auto table = spectrogram_table(sg);
  table.meta.insert(table.meta.begin(), "config=" + cfg.dump());
  write_csv(table, out);
  write_text(out + ".gp", spectrogram_gnuplot(out, sg));
  return 0;
}

int cmd_ensemble(const json& cfg, const std::string& out,
                 std::optional<std::uint64_t> seed_opt) {
  LevelScheme scheme;
  DensityMatrix rho;
  std::string mode;
  loading([&] {
    mode = cfg.at("mode").get<std::string>();
    if (mode != "grains") {
      scheme = load_level_scheme(cfg.at("scheme").get<std::string>());
      rho = load_state(cfg, scheme);
      rho.validate();
    }
    return 0;
  });
  const std::uint64_t seed = seed_opt.value_or(cfg.value("seed", 1));

  CsvTable t;
  t.meta.push_back("config=" + cfg.dump());
  t.meta.push_back("seed=" + std::to_string(seed));

  if (mode == "grains") {
    const int n_real = cfg.value("n_realizations", 64);
    const int m_fixed = cfg.value("m_fixed", 8);
    const int n_fixed = cfg.value("n_fixed", 16);
    std::vector<int> n_list = cfg.value("n_list", std::vector<int>{4, 8, 16, 32});
    std::vector<int> m_list = cfg.value("m_list", std::vector<int>{4, 8, 16, 32});
    const auto rep_n = grain_scaling_vs_n(n_list, m_fixed, n_real, seed);
    const auto rep_m = grain_scaling_vs_m(n_fixed, m_list, n_real, seed + 7);
    t.meta.push_back("slope_vs_n=" + std::to_string(rep_n.slope));
    t.meta.push_back("slope_vs_m=" + std::to_string(rep_m.slope));
    t.columns = {"scan", "x", "mean", "stderr"};
    for (const auto& p : rep_n.points) t.rows.push_back({0, p.x, p.mean, p.stderr_});
    for (const auto& p : rep_m.points) t.rows.push_back({1, p.x, p.mean, p.stderr_});
    write_csv(t, out);
    return 0;
  }

  const double gamma = units::ev_to_ha(cfg.value("gamma_ev", 0.04));
  const double w_bar = units::ev_to_ha(cfg.at("w_bar_ev").get<double>());
  const double r_c = cfg.value("r_c_au", 50.0);
  const double det = cfg.value("detector_distance_au", 1e4);
  const auto shape = cfg.value("shape", std::string("sphere")) == "slab"
                         ? SampleShape::Slab
                         : SampleShape::Sphere;
  // excitation wavevector along +z with the optical magnitude w/c
  const Eigen::Vector3d k_n(0.0, 0.0, w_bar / units::c_au);

  if (mode == "scan") {
    const int n = cfg.value("n", 64);
    auto geom = sample_positions(shape, r_c, n, seed, det, k_n);
    geom.retardation = cfg.value("retardation", true);
    t.columns = {"angle_deg", "intensity"};
    for (const auto& p :
         directional_scan(rho, scheme, geom, w_bar, gamma,
                          cfg.value("n_angles", 181)))
      t.rows.push_back({p.angle_deg, p.intensity});
    write_csv(t, out);
    return 0;
  }

  if (mode == "scaling") {
    std::vector<int> n_list =
        cfg.value("n_list", std::vector<int>{2, 4, 8, 16, 32});
    const int n_seeds = cfg.value("n_seeds", 8);
    t.columns = {"n", "coh_mean", "coh_stderr", "inc_mean", "inc_stderr"};
    std::vector<ScalingPoint> coh_pts, inc_pts;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      double cs = 0, cs2 = 0, is = 0, is2 = 0;
      for (int s = 0; s < n_seeds; ++s) {
        auto geom = sample_positions(shape, r_c, n_list[i],
                                     seed + 1000 * i + s, det, k_n);
        geom.retardation = cfg.value("retardation", true);
        const double c = coherent_ensemble_freq(rho, scheme, geom, w_bar, gamma);
        const double in = incoherent_ensemble_freq(rho, scheme, geom, w_bar, gamma);
        cs += c;
        cs2 += c * c;
        is += in;
        is2 += in * in;
      }
      const double cm = cs / n_seeds, im = is / n_seeds;
      const double cv = std::max(0.0, cs2 / n_seeds - cm * cm);
      const double iv = std::max(0.0, is2 / n_seeds - im * im);
      t.rows.push_back({static_cast<double>(n_list[i]), cm,
                        std::sqrt(cv / n_seeds), im, std::sqrt(iv / n_seeds)});
      coh_pts.push_back({static_cast<double>(n_list[i]), cm, 0.0});
      inc_pts.push_back({static_cast<double>(n_list[i]), im, 0.0});
    }
    t.meta.push_back("coh_slope=" + std::to_string(fit_loglog(coh_pts).slope));
    t.meta.push_back("inc_slope=" + std::to_string(fit_loglog(inc_pts).slope));
    write_csv(t, out);
    return 0;
  }

  throw ConfigError("mode must be 'scaling', 'scan' or 'grains'");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"gated nonlinear light scattering from multilevel emitters"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;

  int (*handler)(const json&, const std::string&, std::optional<std::uint64_t>) =
      nullptr;
  const struct {
    const char* name;
    const char* help;
    const char* default_out;
    int (*fn)(const json&, const std::string&, std::optional<std::uint64_t>);
  } cmds[] = {
      {"synth", "generate a synthetic level scheme", "scheme.json", cmd_synth},
      {"prepare", "stimulated Raman preparation", "prepared.json", cmd_prepare},
      {"spectrum", "pure-gate spectra or time traces", "spectrum.csv",
       cmd_spectrum},
      {"spectrogram", "gated spectrogram", "spectrogram.csv", cmd_spectrogram},
      {"ensemble", "spatial ensemble observables", "ensemble.csv", cmd_ensemble},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "JSON configuration file")
        ->required();
    sub->add_option("--out", out_path, "output path");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--threads", threads, "worker threads");
    sub->callback([&, c] {
      handler = c.fn;
      if (out_path.empty()) out_path = c.default_out;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Eigen::setNbThreads(threads);

  json cfg;
  try {
    cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    return handler(cfg, out_path, seed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
