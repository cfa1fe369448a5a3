#pragma once

// Atomic units internally (hbar = 1, e = 1, m_e = 1); eV and fs appear only
// at the I/O boundary.

namespace nls::units {

inline constexpr double hartree_ev = 27.2114;   // 1 Ha in eV
inline constexpr double au_time_fs = 0.0241888; // 1 au of time in fs
inline constexpr double c_au = 137.036;         // speed of light in au
inline constexpr double eps0_au = 1.0 / (4.0 * 3.14159265358979323846); // Gaussian-like au

inline constexpr double ev_to_ha(double ev) { return ev / hartree_ev; }
inline constexpr double ha_to_ev(double ha) { return ha * hartree_ev; }
inline constexpr double fs_to_au(double fs) { return fs / au_time_fs; }
inline constexpr double au_to_fs(double au) { return au * au_time_fs; }

} // namespace nls::units
