#pragma once

// Reflection and transmission amplitudes: semi-infinite uniaxial slab,
// ideal-wire mirror, free-standing anisotropic film, and the scalar 1D
// coefficients. All formulas are parametrized by (sin^2 theta, cos theta) as
// complex numbers derived from (omega, Q), so the same code serves
// propagating, evanescent and imaginary-frequency evaluation.

#include "casimir/constants.hpp"
#include "casimir/linalg.hpp"
#include "casimir/materials.hpp"

namespace casimir {

struct Kinematics {
  FrequencyPoint f;
  double Q = 0.0;    // 1/m, in-plane wavenumber
  Complex q;         // omega/c
  Complex k_vac;     // sqrt(q^2 - Q^2), Im >= 0
  Complex sin2th;    // Q^2/q^2
  Complex costh;     // k_vac/q

  // Imaginary branch (omega = i u): k = i sqrt(u^2/c^2 + Q^2), cos theta real
  // >= 1 and sin^2 theta real <= 0.
  static Kinematics imaginary(double u, double Q) {
    Kinematics k;
    k.f = FrequencyPoint::imaginary(u);
    k.Q = Q;
    const double uc = u / kSpeedOfLight;
    const double kappa = std::sqrt(uc * uc + Q * Q);
    k.q = Complex(0.0, uc);
    k.k_vac = Complex(0.0, kappa);
    k.sin2th = Complex(-(Q * Q) / (uc * uc), 0.0);
    k.costh = Complex(kappa / uc, 0.0);
    return k;
  }

  static Kinematics real_axis(double omega, double Q) {
    Kinematics k;
    k.f = FrequencyPoint::real_axis(omega);
    k.Q = Q;
    const double qc = omega / kSpeedOfLight;
    k.q = Complex(qc, 0.0);
    k.k_vac = branch_sqrt(Complex(qc * qc - Q * Q, 0.0));
    if (k.k_vac.imag() < 0.0) k.k_vac = -k.k_vac;
    k.sin2th = Complex((Q * Q) / (qc * qc), 0.0);
    k.costh = k.k_vac / k.q;
    return k;
  }
};

struct SemiInfinite {};
struct Film {
  double d = 0.0;  // m, > 0
};
struct IdealWires {};
using Geometry = std::variant<SemiInfinite, Film, IdealWires>;

struct PlateSpec {
  UniaxialMaterial material;
  Geometry geometry = SemiInfinite{};
};

struct IJPair {
  Complex I2;
  Complex J2;
};

// I^2 = eps_perp eps_par - sin^2(theta) (eps_perp sin^2 psi + eps_par cos^2 psi)
// J^2 = eps_perp - sin^2(theta)
IJPair ij_quantities(Complex eps_par, Complex eps_perp, Complex sin2th, double psi);

// Rotated dielectric tensor of a uniaxial medium whose optical axis lies in
// the surface plane at angle psi from the plane of incidence.
Mat3C dielectric_tensor(Complex eps_par, Complex eps_perp, double psi);

// 4x4 first-order propagation matrix for the tangential field column
// F = (E_x, B_y, E_y, -B_x).
Mat4C gamma_matrix(const Mat3C& eps, Complex sinth);

// Analytic eigenmodes of the uniaxial medium. Eigenvectors are returned
// rescaled (ordinary by cos psi, extraordinary by sin psi), which removes the
// tan/cot poles at the decoupling angles while leaving the physical
// reflection matrices unchanged.
struct Eigenmodes {
  Complex k_o;  // 1/m
  Complex k_e;  // 1/m
  Vec4C Vo_plus, Vo_minus, Ve_plus, Ve_minus;
};
Eigenmodes eigenmodes(const UniaxialMaterial& mat, double psi, const Kinematics& kin);

// Reflection matrix of a semi-infinite uniaxial slab, vacuum incidence.
// Spinor layout (p, s) with the p amplitude carried by B_y.
Mat2C reflect_semi_infinite(const UniaxialMaterial& mat, double psi, const Kinematics& kin);

// Perfect conductor along the optical axis, inert across it (closed form).
Mat2C reflect_ideal_wires(const Kinematics& kin, double psi);

struct InterfaceMatrices {
  Mat2C r02, r20, t02, t20;
  Complex k_o, k_e;  // 1/m, Im >= 0
};
InterfaceMatrices film_interface_matrices(const UniaxialMaterial& mat, double psi,
                                          const Kinematics& kin);

// Free-standing film of thickness d via tensorial multiple reflections:
// r2 = r02 + t20 K r20 K (I - (r20 K)^2)^-1 t02 with K = diag(e^{i k_o d}, e^{i k_e d}).
Mat2C reflect_film(const UniaxialMaterial& mat, double d, double psi, const Kinematics& kin);

// Geometry dispatch used by the spectral assembly.
Mat2C reflect_plate(const PlateSpec& plate, double psi, const Kinematics& kin);

// Scalar 1D (normal incidence) coefficients, E-field convention:
// r = (1 - sqrt(eps)) / (1 + sqrt(eps)).
Complex scalar_reflect(const DispersionModel& model, const FrequencyPoint& f);
Complex scalar_reflect_film(const DispersionModel& model, double d, const FrequencyPoint& f);

}  // namespace casimir
