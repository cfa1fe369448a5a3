#include <doctest.h>

#include "fixtures.hpp"
#include "nls/gating.hpp"
#include "nls/lines.hpp"
#include "nls/oracles.hpp"
#include "nls/signals.hpp"
#include "nls/units.hpp"

#include <cmath>
#include <complex>

using namespace nls;
using namespace nls::oracles;
using fix::cplx;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("pure-frequency brute force reproduces the analytic spectrum") {
  const auto scheme = fix::two_level();
  const auto rho = fix::pure_rho({std::sqrt(0.99), std::sqrt(0.01)});
  const double gamma = units::ev_to_ha(0.04);
  const auto gate = GateSpec::pure_frequency(gamma);
  for (double w : {0.24, 0.25, 0.2503, 0.26}) {
    const double oracle = brute_force_gated(rho, scheme, 2, Channel::Incoherent,
                                            gate, 0.0, w);
    const double analytic = s_inc_freq(rho, scheme, 2, w, gamma);
    CHECK(oracle == doctest::Approx(analytic).epsilon(1e-6));
  }
}

TEST_CASE("brute force trivial zeros") {
  const auto scheme = fix::two_level();
  const auto diag = ground_state(scheme);
  const auto gate = GateSpec::combined(1000.0, 0.002, 0.0015);
  CHECK(brute_force_gated(diag, scheme, 2, Channel::Coherent, gate, 0.0, 0.25) ==
        0.0);
  CHECK(brute_force_gated(fix::pure_rho({1.0, 0.0}), scheme, 3,
                          Channel::Incoherent, gate, 0.0, 0.25) == 0.0);
}

TEST_CASE("pure-time brute force equals the analytic time signal") {
  const auto scheme = fix::v_scheme(0.25, 0.002);
  const auto rho = fix::pure_rho({0.9, 0.3, 0.3});
  const auto gate = GateSpec::pure_time();
  for (double t : {0.0, 500.0, 1111.0}) {
    CHECK(brute_force_gated(rho, scheme, 2, Channel::Incoherent, gate, t, 0.0) ==
          doctest::Approx(s_inc_time(rho, scheme, 2, t)).epsilon(1e-12));
    CHECK(brute_force_gated(rho, scheme, 3, Channel::Coherent, gate, t, 0.0) ==
          doctest::Approx(s_coh_time(rho, scheme, 3, t)).epsilon(1e-12));
  }
}

TEST_CASE("combined-gate brute force agrees with the kernel assembly") {
  const auto scheme = fix::v_scheme(0.25, 0.002);
  const auto rho = fix::pure_rho({0.9, 0.3, 0.3});
  const auto gate = GateSpec::combined(800.0, 0.00125, 0.0015);
  const double period = 2.0 * pi / 0.002;
  for (auto [t, w] : {std::pair{0.0, 0.251}, {0.3 * period, 0.2495},
                      {0.6 * period, 0.253}}) {
    const auto sg = gated_spectrogram(rho, scheme, 2, Channel::Incoherent, gate,
                                      {t}, {w});
    const double oracle =
        brute_force_gated(rho, scheme, 2, Channel::Incoherent, gate, t, w);
    CHECK(oracle == doctest::Approx(sg.values(0, 0)).epsilon(1e-4));
  }
  // coherent channel too
  const auto sg = gated_spectrogram(rho, scheme, 2, Channel::Coherent, gate,
                                    {0.2 * period}, {0.2505});
  CHECK(brute_force_gated(rho, scheme, 2, Channel::Coherent, gate, 0.2 * period,
                          0.2505) == doctest::Approx(sg.values(0, 0)).epsilon(1e-4));
}

TEST_CASE("classical Larmor oracle") {
  const auto scheme = fix::five_level();
  const auto rho = fix::random_rho(5, 3);
  const auto pddot = sample_pddot(rho, scheme, 0.0, 0.7, 400);
  const double B = 2.5;
  const auto larmor = classical_larmor(pddot, B);
  SUBCASE("zero in, zero out") {
    TimeSeries z;
    z.dt = 1.0;
    z.v.assign(16, 0.0);
    for (double v : classical_larmor(z, B)) CHECK(v == 0.0);
  }
  SUBCASE("constant ratio against s_coh_time") {
    double mx = 0.0;
    for (int i = 0; i < pddot.size(); ++i)
      mx = std::max(mx, s_coh_time(rho, scheme, 2, pddot.time(i)));
    double ratio = -1.0;
    for (int i = 0; i < pddot.size(); ++i) {
      const double s = s_coh_time(rho, scheme, 2, pddot.time(i));
      if (s < 1e-6 * mx) continue;
      const double r = larmor[i] / s;
      if (ratio < 0.0) ratio = r;
      CHECK(r == doctest::Approx(ratio).epsilon(1e-10));
    }
    // documented constant: B^2 / (N(N-1) A~^2 / 2)
    CHECK(ratio == doctest::Approx(B * B / (2.0 / 3.0 / 2.0)).epsilon(1e-10));
  }
  SUBCASE("global phase invariance") {
    auto phased = pddot;
    for (auto& v : phased.v) v *= std::exp(cplx(0.0, 1.234));
    const auto other = classical_larmor(phased, B);
    for (int i = 0; i < pddot.size(); ++i)
      CHECK(other[i] == doctest::Approx(larmor[i]).epsilon(1e-12));
  }
}

TEST_CASE("wave-equation field oracle") {
  const auto scheme = fix::two_level(0.25);
  const auto rho = fix::pure_rho({std::sqrt(0.99), std::sqrt(0.01)});
  // grid commensurate with the transition: 4 periods over 256 samples
  const int n = 256;
  const double dt = 4.0 * (2.0 * pi / 0.25) / n;
  const auto p = sample_polarization(rho, scheme, 0.0, dt, n);

  SUBCASE("1/r law") {
    const auto e1 = wave_equation_field(p, 1000.0);
    const auto e2 = wave_equation_field(p, 2000.0);
    // retardation shifts differ, but the energy over one full period of the
    // periodic series is shift invariant
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
      m1 += std::norm(e1.v[i]);
      m2 += std::norm(e2.v[i]);
    }
    CHECK(m1 == doctest::Approx(4.0 * m2).epsilon(1e-9));
  }
  SUBCASE("monochromatic amplitude scales as omega^2") {
    TimeSeries mono;
    mono.dt = dt;
    const double w_bin = 2.0 * pi * 4.0 / (n * dt); // exactly on bin 4
    mono.v.resize(n);
    for (int i = 0; i < n; ++i)
      mono.v[i] = std::exp(cplx(0.0, -w_bin * i * dt));
    TimeSeries mono2 = mono;
    for (int i = 0; i < n; ++i)
      mono2.v[i] = std::exp(cplx(0.0, -2.0 * w_bin * i * dt));
    const double a1 = std::abs(wave_equation_field(mono, 500.0).v[7]);
    const double a2 = std::abs(wave_equation_field(mono2, 500.0).v[7]);
    CHECK(a2 == doctest::Approx(4.0 * a1).epsilon(1e-9));
  }
  SUBCASE("self-consistency with the Larmor form") {
    const double r = 750.0;
    const auto e = wave_equation_field(p, r);
    const double B = 1.0 / (4.0 * pi * units::eps0_au * units::c_au *
                            units::c_au * r);
    // P is band limited and periodic on this grid, so the retarded
    // second derivative is exact
    const auto shifted =
        sample_pddot(rho, scheme, -r / units::c_au, dt, n);
    const auto ref = classical_larmor(shifted, B);
    double mx = 0.0;
    for (double v : ref) mx = std::max(mx, v);
    for (int i = 0; i < n; ++i)
      CHECK(std::norm(e.v[i]) == doctest::Approx(ref[i]).epsilon(1e-8).scale(mx));
  }
}

TEST_CASE("dominant_frequency picks the strongest bin") {
  const int n = 128;
  const double dt = 0.5;
  std::vector<double> trace(n);
  const double w = 2.0 * pi * 9.0 / (n * dt);
  for (int i = 0; i < n; ++i) trace[i] = 3.0 + std::cos(w * i * dt);
  CHECK(dominant_frequency(trace, dt) == doctest::Approx(w).epsilon(1e-12));
}

TEST_CASE("oracle convergence guard reports failure honestly") {
  // the pure-frequency path refines; a tiny gamma with a huge detuning is
  // still expected to converge, so just assert it does not throw
  const auto scheme = fix::two_level();
  const auto rho = fix::pure_rho({std::sqrt(0.99), std::sqrt(0.01)});
  const auto gate = GateSpec::pure_frequency(units::ev_to_ha(0.04));
  CHECK_NOTHROW(brute_force_gated(rho, scheme, 2, Channel::Incoherent, gate,
                                  0.0, 0.5));
}
