#include "casimir/spectral.hpp"

#include <cmath>

namespace casimir {

SpectralNode make_node(const CavityConfig& cfg, double u, double Q, double psi1, double eta) {
  SpectralNode n;
  // sin^2(theta) = -Q^2 c^2 / u^2 diverges at u = 0; nodes too close to the
  // zero mode are evaluated at the proxy frequency eta * c * Q.
  n.u = std::max(u, eta * kSpeedOfLight * Q);
  n.Q = Q;
  n.psi1 = psi1;
  n.kin = Kinematics::imaginary(n.u, Q);
  const double uc = n.u / kSpeedOfLight;
  n.decay = 2.0 * cfg.L * std::sqrt(uc * uc + Q * Q);
  return n;
}

Mat2C round_trip(const CavityConfig& cfg, const SpectralNode& node) {
  const double psi2 = -node.psi1 - cfg.gamma;
  const Mat2C r1 = reflect_plate(cfg.plate1, node.psi1, node.kin);
  const Mat2C r2 = reflect_plate(cfg.plate2, psi2, node.kin);
  return std::exp(-node.decay) * (r1 * r2);
}

Complex log_delta(const Mat2C& K) {
  const Complex det = mat2_det(Mat2C(Mat2C::Identity() - K));
  if (std::abs(det) < 1e-300) throw CavityResonance("log_delta: det(I-K) ~ 0");
  return std::log(det);
}

Complex alpha_squared(Complex sin2th, double psi1, double psi2, double gamma) {
  const Complex num = std::cos(gamma) - sin2th * std::cos(psi1) * std::cos(psi2);
  const Complex d1 = 1.0 - sin2th * std::cos(psi1) * std::cos(psi1);
  const Complex d2 = 1.0 - sin2th * std::cos(psi2) * std::cos(psi2);
  return num * num / (d1 * d2);
}

namespace {

Mat2C resolvent(const Mat2C& K) {
  try {
    return mat2_inv(Mat2C(Mat2C::Identity() - K));
  } catch (const SingularMatrix&) {
    throw CavityResonance("resolvent: I - K singular");
  }
}

}  // namespace

Complex dlogdelta_dL(const CavityConfig& cfg, const SpectralNode& node) {
  const Mat2C K = round_trip(cfg, node);
  const double uc = node.u / kSpeedOfLight;
  const double kbar2 = 2.0 * std::sqrt(uc * uc + node.Q * node.Q);
  return kbar2 * mat2_trace(resolvent(K) * K);
}

Complex dlogdelta_dgamma(const CavityConfig& cfg, const SpectralNode& node) {
  const double psi2 = -node.psi1 - cfg.gamma;
  const Mat2C r1 = reflect_plate(cfg.plate1, node.psi1, node.kin);
  const Mat2C r2 = reflect_plate(cfg.plate2, psi2, node.kin);
  const double h = kPsiDerivStep;
  const Mat2C dr2_dpsi2 =
      (reflect_plate(cfg.plate2, psi2 + h, node.kin) - reflect_plate(cfg.plate2, psi2 - h, node.kin)) /
      (2.0 * h);
  const Mat2C dr2_dgamma = -dr2_dpsi2;  // chain rule through psi2 = -psi1 - gamma
  const double phase = std::exp(-node.decay);
  const Mat2C K = phase * (r1 * r2);
  return -phase * mat2_trace(resolvent(K) * (r1 * dr2_dgamma));
}

}  // namespace casimir
