#include "casimir/observables.hpp"

#include <cmath>
#include <functional>

namespace casimir {

namespace {

// Which scalar integrand to assemble at each (u, Q, psi1) node.
enum class NodeKind { LogDelta, DLogDeltaDL, DLogDeltaDGamma };

// The gamma derivative differentiates r2 by centered difference, which leaves
// ~eps/h noise on the integrand. Absolute tolerances below that noise are not
// certifiable, so the derivative assembly floors them here.
constexpr double kFdNoiseFloor = 1e-9;

double abs_floor(NodeKind kind, double abs_tol) {
  return kind == NodeKind::DLogDeltaDGamma ? std::max(abs_tol, kFdNoiseFloor) : abs_tol;
}

double node_value(const CavityConfig& cfg, const SpectralNode& node, NodeKind kind) {
  switch (kind) {
    case NodeKind::LogDelta:
      return log_delta(round_trip(cfg, node)).real();
    case NodeKind::DLogDeltaDL:
      return cfg.L * dlogdelta_dL(cfg, node).real();  // dimensionless
    case NodeKind::DLogDeltaDGamma:
      return dlogdelta_dgamma(cfg, node).real();
  }
  return 0.0;
}

// 2 * int_0^pi dpsi1 int_0^inf kappa dkappa <node integrand> at fixed lambda.
// The psi1 integral is innermost (periodic, geometric convergence), kappa
// next. The psi1 fold to [0, pi) uses director periodicity.
double radial_angular(const CavityConfig& cfg, double lambda, NodeKind kind,
                      const QuadratureSpec& spec, double eta) {
  QuadratureSpec kappa_spec = spec;
  kappa_spec.rel_tol = spec.rel_tol / 10.0;
  kappa_spec.abs_tol = abs_floor(kind, spec.abs_tol / 10.0);
  // Near the zero mode the psi integrand develops dips of width ~u/(cQ)
  // around cos(psi) = 0, so the angular rule must be adaptive rather than a
  // uniform periodic one.
  QuadratureSpec psi_spec = spec;
  psi_spec.rel_tol = spec.rel_tol / 30.0;
  psi_spec.abs_tol = abs_floor(kind, spec.abs_tol / 30.0);
  const double cL = kSpeedOfLight / cfg.L;
  const auto f_kappa = [&](double kappa) {
    if (kappa <= 0.0) return 0.0;
    const auto f_psi = [&](double psi1) {
      const SpectralNode node = make_node(cfg, lambda * cL, kappa / cfg.L, psi1, eta);
      return node_value(cfg, node, kind);
    };
    const QuadResult psi = integrate_interval(f_psi, 0.0, kPi, psi_spec);
    return kappa * psi.value;
  };
  return 2.0 * integrate_semiinf(f_kappa, kappa_spec).value;
}

QuadResult assemble_T0(const CavityConfig& cfg, NodeKind kind, const QuadratureSpec& spec) {
  const auto f_lambda = [&](double lambda) {
    return radial_angular(cfg, lambda, kind, spec, kZeroModeEta);
  };
  QuadratureSpec outer = spec;
  outer.abs_tol = abs_floor(kind, spec.abs_tol);
  const QuadResult r = integrate_semiinf(f_lambda, outer, /*parallel=*/true);
  const double pref = 1.0 / (8.0 * kPi * kPi * kPi);
  return {pref * r.value, pref * r.err_est};
}

QuadResult assemble_finiteT(const CavityConfig& cfg, NodeKind kind, const QuadratureSpec& spec,
                            const MatsubaraSpec& mspec_in) {
  MatsubaraSpec mspec = mspec_in;
  mspec.T = cfg.T;
  const double t = natural_temperature(cfg);
  const double cL = kSpeedOfLight / cfg.L;
  // The l = 0 term runs at the proxy frequency. The proxy error is linear in
  // eta, so a plain eta vs eta/2 comparison cannot certify 1e-6; Richardson-
  // extrapolate the eta -> 0 limit from successive halvings and certify with
  // two extrapolants, evaluated tighter than requested so the comparison sees
  // eta convergence rather than quadrature noise.
  const auto l0_extrapolated = [&](const CavityConfig& c, NodeKind k) {
    QuadratureSpec cert = spec;
    cert.rel_tol = std::min(spec.rel_tol, 1e-8);
    const double va = radial_angular(c, 0.0, k, cert, kZeroModeEta);
    const double vb = radial_angular(c, 0.0, k, cert, kZeroModeEta / 2.0);
    const double vc = radial_angular(c, 0.0, k, cert, kZeroModeEta / 4.0);
    const double e1 = 2.0 * vb - va;
    const double e2 = 2.0 * vc - vb;
    const double scale = std::max(std::abs(e1), std::abs(e2));
    const double noise = 10.0 * abs_floor(k, spec.abs_tol);
    if (std::abs(e1 - e2) > std::max(1e-6 * scale, noise))
      throw IllConditionedZeroMode("Matsubara l=0 term does not converge under eta halving");
    return e2;
  };
  const auto term = [&](int l, double u_l) {
    const double lambda = u_l / cL;
    if (l > 0) return radial_angular(cfg, lambda, kind, spec, kZeroModeEta);
    if (kind != NodeKind::DLogDeltaDGamma) return l0_extrapolated(cfg, kind);
    // Torque: the finite-difference derivative of r2 cannot resolve the
    // zero-mode angular dips (width ~eta), so differentiate the certified
    // l = 0 energy term in gamma instead.
    const double hg = 2e-3;
    CavityConfig cp = cfg, cm = cfg;
    cp.gamma += hg;
    cm.gamma -= hg;
    return (l0_extrapolated(cp, NodeKind::LogDelta) -
            l0_extrapolated(cm, NodeKind::LogDelta)) /
           (2.0 * hg);
  };
  const QuadResult r = matsubara_sum(term, mspec);
  const double pref = t / (4.0 * kPi * kPi);
  return {pref * r.value, pref * r.err_est};
}

QuadResult assemble(const CavityConfig& cfg, NodeKind kind, const QuadratureSpec& spec,
                    const MatsubaraSpec& mspec) {
  if (natural_temperature(cfg) < kMatsubaraCrossover) return assemble_T0(cfg, kind, spec);
  return assemble_finiteT(cfg, kind, spec, mspec);
}

struct ScalarPair {
  double par, perp;
};

ScalarPair scalar_plate(const PlateSpec& plate, const FrequencyPoint& f) {
  return std::visit(
      [&](const auto& g) -> ScalarPair {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, IdealWires>) {
          return {-1.0, 0.0};
        } else if constexpr (std::is_same_v<G, Film>) {
          return {scalar_reflect_film(plate.material.eps_par, g.d, f).real(),
                  scalar_reflect_film(plate.material.eps_perp, g.d, f).real()};
        } else {
          if (is_ideal_conductor(plate.material.eps_par) &&
              is_ideal_conductor(plate.material.eps_perp))
            return {-1.0, -1.0};
          return {scalar_reflect(plate.material.eps_par, f).real(),
                  scalar_reflect(plate.material.eps_perp, f).real()};
        }
      },
      plate.geometry);
}

}  // namespace

double natural_temperature(const CavityConfig& cfg) {
  return kBoltzmann * cfg.T * cfg.L / (kHbar * kSpeedOfLight);
}

Observable energy(const CavityConfig& cfg, const QuadratureSpec& spec,
                  const MatsubaraSpec& mspec) {
  const QuadResult r = assemble(cfg, NodeKind::LogDelta, spec, mspec);
  return {r.value, r.err_est};
}

Observable force(const CavityConfig& cfg, const QuadratureSpec& spec,
                 const MatsubaraSpec& mspec) {
  const QuadResult r = assemble(cfg, NodeKind::DLogDeltaDL, spec, mspec);
  return {-r.value, r.err_est};
}

Observable torque(const CavityConfig& cfg, const QuadratureSpec& spec,
                  const MatsubaraSpec& mspec) {
  const QuadResult r = assemble(cfg, NodeKind::DLogDeltaDGamma, spec, mspec);
  return {-r.value, r.err_est};
}

Observables compute_observables(const CavityConfig& cfg, const QuadratureSpec& spec,
                                const MatsubaraSpec& mspec) {
  Observables obs;
  obs.energy = energy(cfg, spec, mspec);
  obs.force = force(cfg, spec, mspec);
  obs.torque = torque(cfg, spec, mspec);
  obs.zero_mode_proxy = natural_temperature(cfg) >= kMatsubaraCrossover;
  return obs;
}

Observable torque_1d(const CavityConfig& cfg, const QuadratureSpec& spec) {
  if (natural_temperature(cfg) >= kMatsubaraCrossover)
    throw Error("torque_1d: defined at T = 0 only");
  const double g = cfg.gamma;
  const double sin2g = std::sin(2.0 * g), sing2 = std::sin(g) * std::sin(g);
  // The torque vanishes identically at alignment, where the bare u-integral
  // behind the sin(2 gamma) prefactor diverges logarithmically.
  if (sin2g == 0.0) return {0.0, 0.0};
  const double cL = kSpeedOfLight / cfg.L;
  const auto f = [&](double lambda) {
    const FrequencyPoint fp = FrequencyPoint::imaginary(lambda * cL);
    const ScalarPair r1 = scalar_plate(cfg.plate1, fp);
    const ScalarPair r2 = scalar_plate(cfg.plate2, fp);
    const double e = std::exp(-2.0 * lambda);
    const double dr1 = r1.par - r1.perp, dr2 = r2.par - r2.perp;
    const double num = dr1 * dr2 * e;
    const double den =
        num * sing2 + (1.0 - r1.par * r2.par * e) * (1.0 - r1.perp * r2.perp * e);
    return num / den;
  };
  const QuadResult r = integrate_semiinf(f, spec);
  const double pref = -sin2g / (2.0 * kPi);
  return {pref * r.value, std::abs(pref) * r.err_est};
}

std::vector<AnisotropyRow> anisotropy_diagnostic(const UniaxialMaterial& mat, double omega,
                                                 const std::vector<double>& d_grid) {
  const FrequencyPoint f = FrequencyPoint::real_axis(omega);
  std::vector<AnisotropyRow> rows;
  rows.reserve(d_grid.size());
  for (double d : d_grid) {
    const Complex rp = scalar_reflect_film(mat.eps_par, d, f);
    const Complex ro = scalar_reflect_film(mat.eps_perp, d, f);
    rows.push_back({d, std::abs(rp), std::abs(ro), std::abs(rp - ro)});
  }
  return rows;
}

ThicknessOptimum optimize_thickness(const CavityConfig& cfg, const QuadratureSpec& spec,
                                    const ThicknessSearch& search) {
  if (!std::holds_alternative<Film>(cfg.plate2.geometry))
    throw Error("optimize_thickness: plate2 must be a Film");
  if (!(search.d_min > 0.0 && search.d_max > search.d_min))
    throw ConfigError("optimize_thickness: need 0 < d_min < d_max");

  const auto torque_at = [&](double d) {
    CavityConfig c = cfg;
    c.plate2.geometry = Film{d};
    return search.one_d ? torque_1d(c, spec).value : torque(c, spec).value;
  };

  ThicknessOptimum opt;
  {
    const auto* par = std::get_if<Drude>(&cfg.plate2.material.eps_par);
    const auto* perp = std::get_if<Drude>(&cfg.plate2.material.eps_perp);
    if (par && perp && par->omega_p > 0.0 && perp->omega_p > 0.0) {
      // Skin-depth estimate d ~ 2 |omega| c / (wp_perp wp_par) at the cavity
      // frequency |omega| = c/L.
      opt.seed_estimate =
          2.0 * (kSpeedOfLight / cfg.L) * kSpeedOfLight / (par->omega_p * perp->omega_p);
    }
  }

  // Coarse log-d scan to bracket the maximum of |torque|.
  const int n_scan = 13;
  const double la = std::log(search.d_min), lb = std::log(search.d_max);
  std::vector<double> dval(n_scan), tval(n_scan);
  for (int i = 0; i < n_scan; ++i) {
    dval[i] = std::exp(la + (lb - la) * i / (n_scan - 1));
    tval[i] = std::abs(torque_at(dval[i]));
  }
  int imax = 0;
  for (int i = 1; i < n_scan; ++i)
    if (tval[i] > tval[imax]) imax = i;

  {
    CavityConfig c = cfg;
    c.plate2.geometry = SemiInfinite{};
    opt.torque_asymptotic = search.one_d ? torque_1d(c, spec).value : torque(c, spec).value;
  }

  if (imax == 0 || imax == n_scan - 1) {
    opt.interior = false;
    opt.d_opt = dval[imax];
    opt.torque_at_opt = torque_at(opt.d_opt);
    opt.ratio = std::abs(opt.torque_at_opt) / std::max(std::abs(opt.torque_asymptotic), 1e-300);
    return opt;
  }

  // Golden-section maximization in log d, converged to 1e-3 relative in d.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::log(dval[imax - 1]), b = std::log(dval[imax + 1]);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = std::abs(torque_at(std::exp(x1))), f2 = std::abs(torque_at(std::exp(x2)));
  while (b - a > 1e-3) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = std::abs(torque_at(std::exp(x2)));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = std::abs(torque_at(std::exp(x1)));
    }
  }
  opt.interior = true;
  opt.d_opt = std::exp(0.5 * (a + b));
  {
    CavityConfig c = cfg;
    c.plate2.geometry = Film{opt.d_opt};
    opt.torque_at_opt = search.one_d ? torque_1d(c, spec).value : torque(c, spec).value;
  }
  opt.ratio = std::abs(opt.torque_at_opt) / std::max(std::abs(opt.torque_asymptotic), 1e-300);
  return opt;
}

}  // namespace casimir
