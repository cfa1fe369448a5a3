#include "nls/ensemble.hpp"
#include "nls/lines.hpp"
#include "nls/signals.hpp"
#include "nls/units.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

namespace nls {

namespace {
constexpr double pi = 3.14159265358979323846;
}

void SampleGeometry::validate() const {
  if (positions.empty()) throw std::runtime_error("geometry has no molecules");
  for (int a = 0; a < n(); ++a)
    if (!(distance(a) > 0.0))
      throw std::runtime_error("molecule coincides with the detector");
}

SampleGeometry sample_positions(SampleShape shape, double r_c, int n,
                                std::uint64_t seed, double detector_distance,
                                const Eigen::Vector3d& k_n) {
  if (n < 1) throw std::invalid_argument("need at least one molecule");
  if (!(r_c > 0.0)) throw std::invalid_argument("r_c must be > 0");
  if (detector_distance <= r_c)
    throw std::runtime_error("detector placed inside the sample");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  SampleGeometry g;
  g.r_c = r_c;
  g.k_n = k_n;
  g.detector = Eigen::Vector3d(0.0, 0.0, detector_distance);
  g.positions.reserve(n);
  while (static_cast<int>(g.positions.size()) < n) {
    Eigen::Vector3d p(u(rng), u(rng), u(rng));
    if (shape == SampleShape::Sphere) {
      if (p.norm() > 1.0) continue;
      g.positions.push_back(r_c * p);
    } else {
      // thin slab normal to z
      g.positions.push_back(
          Eigen::Vector3d(r_c * p.x(), r_c * p.y(), 0.05 * r_c * p.z()));
    }
  }
  g.validate();
  return g;
}

namespace {

// Phase factor of molecule alpha at detection frequency w: outgoing
// spherical wave plus the excitation driving phase e^{i k_n . r_alpha}.
std::complex<double> molecular_phasor(const SampleGeometry& geom, int alpha,
                                      double w) {
  const double r = geom.distance(alpha);
  if (!geom.retardation) return 1.0 / r;
  const double phase =
      w * r / units::c_au + geom.k_n.dot(geom.positions[alpha]);
  return std::exp(std::complex<double>(0.0, phase)) / r;
}

// Pair-sum geometric factor: |sum phasors|^2 minus the self terms.
double pair_factor(const SampleGeometry& geom, double w,
                   bool include_self = false) {
  std::complex<double> total = 0.0;
  double self = 0.0;
  for (int a = 0; a < geom.n(); ++a) {
    const auto z = molecular_phasor(geom, a, w);
    total += z;
    self += std::norm(z);
  }
  return std::norm(total) - (include_self ? 0.0 : self);
}

// Single-molecule-pair coherent line spectrum (unit molecule factor).
double coherent_unit_spectrum(const DensityMatrix& rho,
                              const LevelScheme& scheme, double w_bar,
                              double gamma) {
  return 0.5 * s_coh_freq(rho, scheme, 2, w_bar, gamma);
}

} // namespace

double coherent_ensemble_freq(const DensityMatrix& rho,
                              const LevelScheme& scheme,
                              const SampleGeometry& geom, double w_bar,
                              double gamma, bool include_self_pairs) {
  geom.validate();
  return pair_factor(geom, w_bar, include_self_pairs) *
         coherent_unit_spectrum(rho, scheme, w_bar, gamma);
}

double incoherent_ensemble_freq(const DensityMatrix& rho,
                                const LevelScheme& scheme,
                                const SampleGeometry& geom, double w_bar,
                                double gamma) {
  geom.validate();
  double geo = 0.0;
  for (int a = 0; a < geom.n(); ++a) geo += 1.0 / std::pow(geom.distance(a), 2);
  return geo * s_inc_freq(rho, scheme, 1, w_bar, gamma);
}

double coherent_ensemble_time(const DensityMatrix& rho,
                              const LevelScheme& scheme,
                              const SampleGeometry& geom, double t_bar) {
  geom.validate();
  std::complex<double> total = 0.0;
  double self = 0.0;
  for (int a = 0; a < geom.n(); ++a) {
    const double r = geom.distance(a);
    std::complex<double> z =
        polarization_ddot(rho, scheme, t_bar - r / units::c_au) / r;
    if (geom.retardation)
      z *= std::exp(std::complex<double>(0.0, geom.k_n.dot(geom.positions[a])));
    total += z;
    self += std::norm(z);
  }
  return 0.5 * a_tilde * a_tilde * (std::norm(total) - self);
}

std::vector<ScanPoint> directional_scan(const DensityMatrix& rho,
                                        const LevelScheme& scheme,
                                        const SampleGeometry& geom,
                                        double w_bar, double gamma,
                                        int n_angles) {
  geom.validate();
  const double rd = geom.detector.norm();
  // Scan plane spanned by k_n (or z if k_n = 0) and a perpendicular axis.
  Eigen::Vector3d axis = geom.k_n.norm() > 0.0 ? geom.k_n.normalized()
                                               : Eigen::Vector3d(0, 0, 1);
  Eigen::Vector3d perp = axis.cross(Eigen::Vector3d(0, 0, 1));
  if (perp.norm() < 1e-12) perp = axis.cross(Eigen::Vector3d(0, 1, 0));
  perp.normalize();

  const double base = coherent_unit_spectrum(rho, scheme, w_bar, gamma);
  std::vector<ScanPoint> out;
  out.reserve(n_angles);
  for (int i = 0; i < n_angles; ++i) {
    const double ang = 2.0 * pi * i / n_angles;
    SampleGeometry g = geom;
    g.detector = rd * (std::cos(ang) * axis + std::sin(ang) * perp);
    out.push_back({ang * 180.0 / pi, pair_factor(g, w_bar) * base});
  }
  return out;
}

ScalingReport fit_loglog(const std::vector<ScalingPoint>& points) {
  ScalingReport rep;
  rep.points = points;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = static_cast<int>(points.size());
  for (const auto& p : points) {
    const double x = std::log(p.x), y = std::log(p.mean);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  rep.slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - rep.slope * sx) / m;
  double ss = 0.0;
  for (const auto& p : points) {
    const double r = std::log(p.mean) - (intercept + rep.slope * std::log(p.x));
    ss += r * r;
  }
  if (m > 2) rep.slope_stderr = std::sqrt(ss / (m - 2) / (sxx - sx * sx / m));
  return rep;
}

double grain_coherent_signal(int n_grains, int grain_size, std::uint64_t seed) {
  if (n_grains < 1 || grain_size < 1)
    throw std::invalid_argument("grain counts must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * pi);
  std::complex<double> total = 0.0;
  for (int g = 0; g < n_grains; ++g) {
    const double th = u(rng);
    total += static_cast<double>(grain_size) *
             std::exp(std::complex<double>(0.0, th));
  }
  // subtract the self (alpha = beta) terms of the molecule double sum
  return std::norm(total) - static_cast<double>(n_grains) * grain_size;
}

namespace {

ScalingPoint grain_mc_point(double x, int n_grains, int grain_size,
                            int n_realizations, std::uint64_t seed) {
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < n_realizations; ++r) {
    const double v = grain_coherent_signal(n_grains, grain_size, seed + r);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n_realizations;
  const double var = std::max(0.0, sum2 / n_realizations - mean * mean);
  return {x, mean, std::sqrt(var / n_realizations)};
}

} // namespace

ScalingReport grain_scaling_vs_n(const std::vector<int>& n_grains,
                                 int grain_size, int n_realizations,
                                 std::uint64_t seed) {
  std::vector<ScalingPoint> pts;
  for (std::size_t i = 0; i < n_grains.size(); ++i)
    pts.push_back(grain_mc_point(n_grains[i], n_grains[i], grain_size,
                                 n_realizations, seed + 1000 * i));
  return fit_loglog(pts);
}

ScalingReport grain_scaling_vs_m(int n_grains,
                                 const std::vector<int>& grain_sizes,
                                 int n_realizations, std::uint64_t seed) {
  std::vector<ScalingPoint> pts;
  for (std::size_t i = 0; i < grain_sizes.size(); ++i)
    pts.push_back(grain_mc_point(grain_sizes[i], n_grains, grain_sizes[i],
                                 n_realizations, seed + 1000 * i));
  return fit_loglog(pts);
}

} // namespace nls
