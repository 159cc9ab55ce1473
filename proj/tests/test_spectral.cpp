#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "casimir/spectral.hpp"

using namespace casimir;

namespace {

CavityConfig wires_cavity(double gamma) {
  CavityConfig cfg;
  cfg.L = 1.0e-7;
  cfg.gamma = gamma;
  cfg.plate1 = {{IdealConductor{}, Vacuum{}}, IdealWires{}};
  cfg.plate2 = cfg.plate1;
  return cfg;
}

CavityConfig mirror_cavity() {
  CavityConfig cfg;
  cfg.L = 1.0e-7;
  cfg.plate1 = {{IdealConductor{}, IdealConductor{}}, SemiInfinite{}};
  cfg.plate2 = cfg.plate1;
  return cfg;
}

CavityConfig drude_cavity(double gamma) {
  CavityConfig cfg;
  cfg.L = 1.0e-7;
  cfg.gamma = gamma;
  const double w0 = kPi * kSpeedOfLight / cfg.L;
  const UniaxialMaterial mat{Drude{2.0 * w0, 0.0, true}, Drude{0.8 * w0, 0.0, true}};
  cfg.plate1 = {mat, SemiInfinite{}};
  cfg.plate2 = {mat, SemiInfinite{}};
  return cfg;
}

std::mt19937& rng() {
  static std::mt19937 g(31);
  return g;
}

double uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng());
}

}  // namespace

TEST_CASE("make_node kinematics and zero-mode proxy") {
  const CavityConfig cfg = wires_cavity(0.0);
  const double cL = kSpeedOfLight / cfg.L;
  const SpectralNode n = make_node(cfg, 1.0 * cL, 2.0 / cfg.L, 0.3);
  CHECK(n.decay == doctest::Approx(2.0 * std::sqrt(5.0)).epsilon(1e-12));
  CHECK(n.kin.sin2th.real() == doctest::Approx(-4.0).epsilon(1e-12));
  // u below the proxy threshold is clamped to eta * c * Q.
  const SpectralNode z = make_node(cfg, 0.0, 2.0 / cfg.L, 0.3);
  CHECK(z.u == doctest::Approx(kZeroModeEta * kSpeedOfLight * 2.0 / cfg.L).epsilon(1e-12));
}

TEST_CASE("round_trip anchors") {
  const CavityConfig cfg = mirror_cavity();
  const double cL = kSpeedOfLight / cfg.L;
  const SpectralNode n = make_node(cfg, 0.7 * cL, 1.3 / cfg.L, 0.2);
  // Perfect mirrors: r1 r2 = diag(1,-1)^2 = identity.
  const Mat2C K = round_trip(cfg, n);
  CHECK((K - std::exp(-n.decay) * Mat2C::Identity()).norm() < 1e-14);

  // Vacuum plate2 kills the round trip.
  CavityConfig cfg2 = cfg;
  cfg2.plate2 = {{Vacuum{}, Vacuum{}}, SemiInfinite{}};
  CHECK(round_trip(cfg2, n).norm() < 1e-14);
}

TEST_CASE("round_trip trace matches the ideal-wire closed form") {
  for (int i = 0; i < 200; ++i) {
    const CavityConfig cfg = wires_cavity(uniform(0.0, kPi));
    const double cL = kSpeedOfLight / cfg.L;
    const SpectralNode n =
        make_node(cfg, uniform(0.05, 3.0) * cL, uniform(0.05, 3.0) / cfg.L, uniform(0.0, kPi));
    const Complex tr = mat2_trace(round_trip(cfg, n));
    const Complex a2 =
        alpha_squared(n.kin.sin2th, n.psi1, -n.psi1 - cfg.gamma, cfg.gamma);
    CHECK(std::abs(tr - a2 * std::exp(-n.decay)) < 1e-12);

    // Wire reflections are rank-1, so log Delta has the closed form too.
    const Complex ld = log_delta(round_trip(cfg, n));
    CHECK(std::abs(ld - std::log(1.0 - a2 * std::exp(-n.decay))) < 1e-12);
  }
}

TEST_CASE("log_delta basics") {
  CHECK(std::abs(log_delta(Mat2C::Zero())) == 0.0);
  const Mat2C K = 0.25 * Mat2C::Identity();
  CHECK(std::abs(log_delta(K) - 2.0 * std::log(0.75)) < 1e-14);
  CHECK_THROWS_AS(log_delta(Mat2C::Identity()), CavityResonance);
}

TEST_CASE("alpha_squared closed-form values") {
  CHECK(std::abs(alpha_squared(Complex(-2.3), 0.7, -0.7, 0.0) - Complex(1.0)) < 1e-14);
  CHECK(std::abs(alpha_squared(Complex(0.0), 0.3, -0.3 - 1.1, 1.1) -
                 Complex(std::cos(1.1) * std::cos(1.1))) < 1e-14);
  CHECK(std::abs(alpha_squared(Complex(-0.8), 0.0, -kPi / 2.0, kPi / 2.0)) < 1e-14);
}

TEST_CASE("delta is invariant under plate swap") {
  for (int i = 0; i < 100; ++i) {
    CavityConfig cfg = drude_cavity(uniform(0.0, kPi));
    cfg.plate2.material.eps_par = Drude{3.0e15, 0.0, true};
    const double cL = kSpeedOfLight / cfg.L;
    const SpectralNode n =
        make_node(cfg, uniform(0.05, 3.0) * cL, uniform(0.05, 3.0) / cfg.L, uniform(0.0, kPi));
    const Complex a = log_delta(round_trip(cfg, n));
    // Swapped cavity evaluated at the old psi2 (so that its own psi2 becomes
    // the old psi1): Delta must be unchanged because det(I-AB) = det(I-BA).
    CavityConfig sw = cfg;
    std::swap(sw.plate1, sw.plate2);
    SpectralNode m = n;
    m.psi1 = -n.psi1 - cfg.gamma;
    const Complex b = log_delta(round_trip(sw, m));
    CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("imaginary-branch positivity: Delta in (0, 1]") {
  for (int i = 0; i < 200; ++i) {
    const CavityConfig cfg =
        (i % 2 == 0) ? wires_cavity(uniform(0.0, kPi)) : drude_cavity(uniform(0.0, kPi));
    const double cL = kSpeedOfLight / cfg.L;
    const SpectralNode n =
        make_node(cfg, uniform(0.05, 4.0) * cL, uniform(0.05, 4.0) / cfg.L, uniform(0.0, kPi));
    const Complex ld = log_delta(round_trip(cfg, n));
    CHECK(std::abs(ld.imag()) < 1e-12);
    CHECK(ld.real() <= 1e-15);  // Delta <= 1
  }
}

TEST_CASE("dlogdelta_dL matches finite differences and the mirror closed form") {
  // Mirror cavity: log Delta = 2 ln(1 - e^{-2 kbar L}).
  const CavityConfig cfg = mirror_cavity();
  const double cL = kSpeedOfLight / cfg.L;
  const SpectralNode n = make_node(cfg, 0.8 * cL, 0.9 / cfg.L, 0.1);
  const double kbar = std::sqrt(std::pow(0.8 / cfg.L, 2) + std::pow(0.9 / cfg.L, 2));
  const double e = std::exp(-2.0 * kbar * cfg.L);
  const double expect = 2.0 * 2.0 * kbar * e / (1.0 - e);
  CHECK(std::abs(dlogdelta_dL(cfg, n).real() - expect) < 1e-8 * expect);

  // Random cavities: centered difference in L (u, Q held fixed).
  for (int i = 0; i < 50; ++i) {
    CavityConfig c = drude_cavity(uniform(0.0, kPi));
    const double u = uniform(0.2, 2.0) * kSpeedOfLight / c.L;
    const double Q = uniform(0.2, 2.0) / c.L;
    const double psi = uniform(0.0, kPi);
    const double h = 1e-6 * c.L;
    CavityConfig cp = c, cm = c;
    cp.L = c.L + h;
    cm.L = c.L - h;
    const double fd = (log_delta(round_trip(cp, make_node(cp, u, Q, psi))).real() -
                       log_delta(round_trip(cm, make_node(cm, u, Q, psi))).real()) /
                      (2.0 * h);
    const double an = dlogdelta_dL(c, make_node(c, u, Q, psi)).real();
    CHECK(std::abs(an - fd) < 1e-7 * std::max(1.0 / c.L, std::abs(fd)));
  }
}

TEST_CASE("dlogdelta_dgamma: oracles") {
  // Isotropic plates: no gamma dependence at all.
  CavityConfig iso;
  iso.L = 1.0e-7;
  iso.gamma = 0.6;
  iso.plate1 = {{ConstantEps{Complex(3.0)}, ConstantEps{Complex(3.0)}}, SemiInfinite{}};
  iso.plate2 = iso.plate1;
  const double cL = kSpeedOfLight / iso.L;
  const SpectralNode niso = make_node(iso, 0.8 * cL, 1.1 / iso.L, 0.4);
  CHECK(std::abs(dlogdelta_dgamma(iso, niso)) < 1e-9);

  // Ideal wires: analytic derivative of ln(1 - alpha^2 e^{-decay}).
  for (int i = 0; i < 100; ++i) {
    const double g = uniform(0.1, kPi - 0.1);
    const CavityConfig cfg = wires_cavity(g);
    const SpectralNode n = make_node(cfg, uniform(0.1, 2.0) * kSpeedOfLight / cfg.L,
                                     uniform(0.1, 2.0) / cfg.L, uniform(0.0, kPi));
    const double hg = 1e-6;
    auto ld_at = [&](double gamma) {
      CavityConfig c = cfg;
      c.gamma = gamma;
      const Complex a2 = alpha_squared(n.kin.sin2th, n.psi1, -n.psi1 - gamma, gamma);
      return std::log(1.0 - a2.real() * std::exp(-n.decay));
    };
    const double analytic = (ld_at(g + hg) - ld_at(g - hg)) / (2.0 * hg);
    const double engine = dlogdelta_dgamma(cfg, n).real();
    CHECK(std::abs(engine - analytic) < 1e-6 * std::max(1.0, std::abs(analytic)));
  }

  // General materials: centered difference of log_delta in gamma.
  for (int i = 0; i < 50; ++i) {
    const CavityConfig cfg = drude_cavity(uniform(0.1, kPi - 0.1));
    const SpectralNode n = make_node(cfg, uniform(0.2, 2.0) * kSpeedOfLight / cfg.L,
                                     uniform(0.2, 2.0) / cfg.L, uniform(0.0, kPi));
    const double hg = 1e-5;
    CavityConfig cp = cfg, cm = cfg;
    cp.gamma += hg;
    cm.gamma -= hg;
    const double fd = (log_delta(round_trip(cp, n)).real() -
                       log_delta(round_trip(cm, n)).real()) /
                      (2.0 * hg);
    const double an = dlogdelta_dgamma(cfg, n).real();
    CHECK(std::abs(an - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("gamma periodicity per node") {
  for (int i = 0; i < 100; ++i) {
    const double g = uniform(0.0, kPi);
    const CavityConfig a = wires_cavity(g);
    const CavityConfig b = wires_cavity(g + kPi);
    const SpectralNode n = make_node(a, uniform(0.1, 2.0) * kSpeedOfLight / a.L,
                                     uniform(0.1, 2.0) / a.L, uniform(0.0, kPi));
    CHECK(std::abs(log_delta(round_trip(a, n)) - log_delta(round_trip(b, n))) < 1e-12);
  }
}
