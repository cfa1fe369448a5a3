#include "nls/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace nls {

void DensityMatrix::validate() const {
  const int n = size();
  if (n == 0 || rho.cols() != n) throw std::runtime_error("density matrix is not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::runtime_error("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12)
    throw std::runtime_error("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::runtime_error("density matrix is not positive semidefinite");
}

bool PreparedState::weak_excitation(const LevelScheme& scheme) const {
  double max_pop = 0.0;
  for (int i = 0; i < size(); ++i)
    if (scheme.bands[i] != Band::Ground)
      max_pop = std::max(max_pop, std::norm(kappa[i]));
  return max_pop < 0.05;
}

DensityMatrix rho_from_kappa(const PreparedState& state) {
  if (std::abs(state.norm_sq() - 1.0) > 1e-8)
    throw std::runtime_error("prepared state is not normalized");
  DensityMatrix dm;
  dm.rho = state.kappa * state.kappa.adjoint();
  // Pin the trace so validate() holds despite roundoff in the outer product.
  dm.rho /= dm.rho.trace().real();
  return dm;
}

DensityMatrix ground_state(const LevelScheme& scheme) {
  const auto g = scheme.states_in_band(Band::Ground);
  DensityMatrix dm;
  dm.rho = Eigen::MatrixXcd::Zero(scheme.size(), scheme.size());
  dm.rho(g.front(), g.front()) = 1.0;
  return dm;
}

BandMask BandMask::all(int n) {
  BandMask m;
  m.keep.setConstant(n, n, true);
  return m;
}

BandMask band_filter(const LevelScheme& scheme, const BandPairSet& bands) {
  const int n = scheme.size();
  BandMask m;
  m.keep.setConstant(n, n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (bands.count({scheme.bands[i], scheme.bands[j]})) m.keep(i, j) = true;
  return m;
}

} // namespace nls
