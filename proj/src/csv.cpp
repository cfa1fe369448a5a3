#include "nls/csv.hpp"
#include "nls/units.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nls {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string channel_name(Channel c) {
  return c == Channel::Coherent ? "coherent" : "incoherent";
}

std::string gate_name(GateMode m) {
  switch (m) {
    case GateMode::PureTime: return "pure_time";
    case GateMode::PureFrequency: return "pure_frequency";
    case GateMode::Combined: return "combined";
  }
  return "?";
}

} // namespace

std::string format_csv(const CsvTable& table) {
  std::ostringstream os;
  for (const auto& m : table.meta) os << "# " << m << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << fmt(row[i]);
    os << "\n";
  }
  return os.str();
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << format_csv(table);
}

CsvTable spectrogram_table(const Spectrogram& sg) {
  CsvTable t;
  t.meta.push_back("channel=" + channel_name(sg.channel));
  t.meta.push_back("gate=" + gate_name(sg.gate.mode));
  t.meta.push_back("sigma_T_au=" + fmt(sg.gate.sigma_T));
  t.meta.push_back("sigma_w_ev=" + fmt(units::ha_to_ev(sg.gate.sigma_w)));
  t.meta.push_back("gamma_ev=" + fmt(units::ha_to_ev(sg.gate.gamma)));
  if (sg.gate.mode == GateMode::Combined)
    t.meta.push_back("interference_window_ev=" +
                     fmt(units::ha_to_ev(interference_window(sg.gate))));
  t.meta.push_back("n_molecules=" + std::to_string(sg.n_molecules));
  t.columns = {"t_fs", "w_ev", "value"};
  for (std::size_t it = 0; it < sg.t_fs.size(); ++it)
    for (std::size_t iw = 0; iw < sg.w_ev.size(); ++iw)
      t.rows.push_back({sg.t_fs[it], sg.w_ev[iw],
                        sg.values(static_cast<int>(it), static_cast<int>(iw))});
  return t;
}

std::string spectrogram_gnuplot(const std::string& csv_name,
                                const Spectrogram& sg) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set view map\n"
     << "set xlabel 't (fs)'\n"
     << "set ylabel 'omega (eV)'\n"
     << "set title '" << channel_name(sg.channel) << " "
     << gate_name(sg.gate.mode) << " spectrogram'\n"
     << "splot '" << csv_name << "' using 1:2:3 with points pt 5 ps 1.5 "
        "palette notitle\n"
     << "pause -1\n";
  return os.str();
}

} // namespace nls
