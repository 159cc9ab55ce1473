#pragma once

// Public observable API: Casimir energy, force and torque per unit area (zero
// and finite temperature), the 1D normal-incidence torque, the reflection
// anisotropy diagnostic, and film-thickness optimization.
//
// Engine-internal variables are the natural dimensionless ones, lambda = uL/c
// and kappa = QL; energies come back in hbar c / L^3 per unit area, forces in
// hbar c / L^4 per unit area, and SI conversion happens only at the CLI
// boundary.

#include <vector>

#include "casimir/quadrature.hpp"
#include "casimir/spectral.hpp"

namespace casimir {

struct Observable {
  double value = 0.0;
  double err_est = 0.0;
};

struct Observables {
  Observable energy;  // hbar c / L^3 per unit area
  Observable force;   // hbar c / L^4 per unit area
  Observable torque;  // hbar c / L^3 per unit area
  bool zero_mode_proxy = false;  // finite-T l=0 term evaluated at the proxy frequency
};

// Dimensionless temperature k_B T L / (hbar c); below this the Matsubara sum
// is a Riemann sum of the T=0 integral and we delegate to it.
double natural_temperature(const CavityConfig& cfg);
inline constexpr double kMatsubaraCrossover = 1e-3;

Observable energy(const CavityConfig& cfg, const QuadratureSpec& spec,
                  const MatsubaraSpec& mspec = {});
Observable force(const CavityConfig& cfg, const QuadratureSpec& spec,
                 const MatsubaraSpec& mspec = {});
Observable torque(const CavityConfig& cfg, const QuadratureSpec& spec,
                  const MatsubaraSpec& mspec = {});
Observables compute_observables(const CavityConfig& cfg, const QuadratureSpec& spec,
                                const MatsubaraSpec& mspec = {});

// T=0 torque of the normally-incident (1D) cavity, in hbar c / L units.
Observable torque_1d(const CavityConfig& cfg, const QuadratureSpec& spec);

// SI conversion factors at separation L.
inline double si_energy_per_area(double L) { return kHbar * kSpeedOfLight / (L * L * L); }
inline double si_force_per_area(double L) { return kHbar * kSpeedOfLight / (L * L * L * L); }
inline double si_torque_per_area(double L) { return si_energy_per_area(L); }

struct AnisotropyRow {
  double d = 0.0;       // m
  double r_par = 0.0;   // |r^par|
  double r_perp = 0.0;  // |r^perp|
  double dr = 0.0;      // |r^par - r^perp|
};
std::vector<AnisotropyRow> anisotropy_diagnostic(const UniaxialMaterial& mat, double omega,
                                                 const std::vector<double>& d_grid);

struct ThicknessSearch {
  double d_min = 0.0;  // m
  double d_max = 0.0;  // m
  bool one_d = false;  // use the 1D torque instead of the full 3D integral
};

struct ThicknessOptimum {
  double d_opt = 0.0;           // m
  double torque_at_opt = 0.0;
  double torque_asymptotic = 0.0;
  double ratio = 0.0;           // |torque_at_opt| / |torque_asymptotic|
  double seed_estimate = 0.0;   // m; skin-depth estimate, 0 if not a Drude pair
  bool interior = false;        // false: |torque| monotone, boundary reported
};

ThicknessOptimum optimize_thickness(const CavityConfig& cfg, const QuadratureSpec& spec,
                                    const ThicknessSearch& search);

}  // namespace casimir
