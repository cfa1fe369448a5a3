#pragma once

#include "nls/density_matrix.hpp"
#include "nls/level_scheme.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace nls {

enum class SampleShape { Sphere, Slab };

// Molecular positions plus detector and excitation wavevector, all in au.
struct SampleGeometry {
  std::vector<Eigen::Vector3d> positions;
  Eigen::Vector3d detector = Eigen::Vector3d::Zero();
  Eigen::Vector3d k_n = Eigen::Vector3d::Zero();
  double r_c = 0.0;        // characteristic sample size
  bool retardation = true; // when false, spatial phases are dropped

  int n() const { return static_cast<int>(positions.size()); }
  double distance(int alpha) const {
    return (positions[alpha] - detector).norm();
  }
  bool small_sample() const { return k_n.norm() * r_c <= 0.01; }
  void validate() const;
};

// Deterministic uniform draw inside the shape; detector on +z at
// detector_distance from the origin. Throws if the detector would sit
// inside the sample.
SampleGeometry sample_positions(SampleShape shape, double r_c, int n,
                                std::uint64_t seed, double detector_distance,
                                const Eigen::Vector3d& k_n);

// Spatially resolved pair sum of the coherent channel: the phased molecular
// sum modulo self terms times the single-molecule-pair line spectrum.
// N = 1 gives exactly zero. include_self_pairs keeps the alpha = beta terms,
// i.e. the literal |sum_alpha phasor|^2 form.
double coherent_ensemble_freq(const DensityMatrix& rho,
                              const LevelScheme& scheme,
                              const SampleGeometry& geom, double w_bar,
                              double gamma, bool include_self_pairs = false);

// Isotropic single-molecule sum: sum_alpha R_alpha^-2 times the
// single-molecule incoherent spectrum; independent of k_n.
double incoherent_ensemble_freq(const DensityMatrix& rho,
                                const LevelScheme& scheme,
                                const SampleGeometry& geom, double w_bar,
                                double gamma);

// Time-domain coherent pair sum with exact retardation R_alpha / c.
double coherent_ensemble_time(const DensityMatrix& rho,
                              const LevelScheme& scheme,
                              const SampleGeometry& geom, double t_bar);

struct ScanPoint {
  double angle_deg = 0.0; // from the k_n direction, in the scan plane
  double intensity = 0.0;
};

// Coherent intensity versus detector direction at fixed detector distance.
std::vector<ScanPoint> directional_scan(const DensityMatrix& rho,
                                        const LevelScheme& scheme,
                                        const SampleGeometry& geom,
                                        double w_bar, double gamma,
                                        int n_angles);

struct ScalingPoint {
  double x = 0.0; // N or M
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  double slope = 0.0;        // log-log least squares
  double slope_stderr = 0.0;
};

ScalingReport fit_loglog(const std::vector<ScalingPoint>& points);

// Hyper-Rayleigh grain model: coherent within a grain, random phase between
// grains; Monte Carlo over >= n_realizations phase draws. The returned
// means estimate n_grains * M (M - 1).
double grain_coherent_signal(int n_grains, int grain_size, std::uint64_t seed);

ScalingReport grain_scaling_vs_n(const std::vector<int>& n_grains,
                                 int grain_size, int n_realizations,
                                 std::uint64_t seed);

ScalingReport grain_scaling_vs_m(int n_grains,
                                 const std::vector<int>& grain_sizes,
                                 int n_realizations, std::uint64_t seed);

} // namespace nls
