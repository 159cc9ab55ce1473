#pragma once

// Small complex linear algebra used throughout: 2x2 reflection matrices,
// the 4x4 field-propagation matrix and its 4-component field column.

#include <Eigen/Dense>
#include <complex>

#include "casimir/errors.hpp"

namespace casimir {

using Complex = std::complex<double>;
using Mat2C = Eigen::Matrix2cd;
using Mat3C = Eigen::Matrix3cd;
using Mat4C = Eigen::Matrix4cd;
using Vec4C = Eigen::Vector4cd;

inline Complex mat2_det(const Mat2C& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

inline Complex mat2_trace(const Mat2C& m) { return m(0, 0) + m(1, 1); }

inline Mat2C mat2_mul(const Mat2C& a, const Mat2C& b) { return a * b; }

// Inverse with an absolute singularity floor. Near-singular 2x2 matrices in
// this code signal a cavity resonance or a degenerate interface, which must
// surface as an error rather than amplified noise.
inline Mat2C mat2_inv(const Mat2C& m, double det_floor = 1e-300) {
  const Complex d = mat2_det(m);
  if (std::abs(d) < det_floor) throw SingularMatrix("mat2_inv: |det| below floor");
  Mat2C r;
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return r / d;
}

inline Vec4C mat4_apply(const Mat4C& g, const Vec4C& v) { return g * v; }

// Residual of the eigenvalue equation (k I - q G) v = 0, used as a
// verification probe for the analytic eigenpairs.
inline double mat4_residual(const Mat4C& g, Complex q, Complex k, const Vec4C& v) {
  const double nv = v.norm();
  if (nv == 0.0) throw ZeroVector("mat4_residual: zero vector");
  return ((k * v - q * (g * v)).norm()) / nv;
}

// Principal square root with Re >= 0 and Im >= 0 as tie-break on the
// negative real axis; matches Im(k) > 0 for decaying waves.
inline Complex branch_sqrt(Complex z) {
  Complex s = std::sqrt(z);
  if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) s = -s;
  return s;
}

}  // namespace casimir
