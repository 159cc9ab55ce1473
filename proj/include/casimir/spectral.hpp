#pragma once

// Cavity round-trip assembly and scalar integrands: log Delta and its
// analytic derivatives with respect to the separation L and the axis angle
// gamma. All evaluation happens on the imaginary-frequency branch.

#include "casimir/optics.hpp"

namespace casimir {

struct CavityConfig {
  double L = 0.0;      // m, > 0
  double gamma = 0.0;  // rad, angle between optical axes
  double T = 0.0;      // K
  PlateSpec plate1;
  PlateSpec plate2;
};

// One (u, Q, psi1) node. psi2 is always derived as -psi1 - gamma; it is the
// single source of truth for the sign convention.
struct SpectralNode {
  double u = 0.0;     // rad/s, >= 0 (after zero-mode clamping)
  double Q = 0.0;     // 1/m
  double psi1 = 0.0;  // rad
  Kinematics kin;
  double decay = 0.0;  // 2 L sqrt(u^2/c^2 + Q^2)
};

// Fraction of c*Q below which u is clamped (zero-mode proxy).
inline constexpr double kZeroModeEta = 1e-4;

SpectralNode make_node(const CavityConfig& cfg, double u, double Q, double psi1,
                       double eta = kZeroModeEta);

// K = e^{2ikL} r1 r2; real with spectral radius < 1 on the imaginary branch
// for dissipationless passive plates.
Mat2C round_trip(const CavityConfig& cfg, const SpectralNode& node);

// log det(I - K); Delta is real positive in production so the principal log
// branch is immaterial.
Complex log_delta(const Mat2C& K);

// Closed-form trace of r1 r2 for the ideal-wire pair.
Complex alpha_squared(Complex sin2th, double psi1, double psi2, double gamma);

// d(log Delta)/dL = -tr((I-K)^-1 dK/dL) with dK/dL = -2 sqrt(u^2/c^2+Q^2) K.
Complex dlogdelta_dL(const CavityConfig& cfg, const SpectralNode& node);

// d(log Delta)/dgamma = -tr((I-K)^-1 e^{-decay} r1 dr2/dgamma), with
// dr2/dgamma = -dr2/dpsi2 taken by centered difference.
inline constexpr double kPsiDerivStep = 1e-5;  // rad
Complex dlogdelta_dgamma(const CavityConfig& cfg, const SpectralNode& node);

}  // namespace casimir
