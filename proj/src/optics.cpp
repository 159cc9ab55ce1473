#include "casimir/optics.hpp"

#include <cmath>

namespace casimir {

namespace {

const Mat2C kIdentity2 = Mat2C::Identity();

Mat2C mirror_reflection() {
  // Perfect isotropic mirror in the (p, s) spinor convention: the p amplitude
  // rides on B_y, so its reflection coefficient is +1 while s gets -1.
  Mat2C r;
  r << 1.0, 0.0, 0.0, -1.0;
  return r;
}

struct SlabBasis {
  Complex J, keb;  // k_o / q and k_e / q
  Mat2C s1, s2, s3, s4;
};

// s-matrices assembled from the analytic eigenvectors, with the ordinary
// column rescaled by cos(psi) and the extraordinary one by sin(psi). The
// rescaling is diagonal in the mode basis and commutes with the film phase
// matrix, so r02 and the film reflection are unchanged while the tan/cot
// poles at psi = 0, pi/2 disappear.
//
// Branch choice: the eigenvectors depend on I and n_o only through the ratio
// I/n_o (= k_e/q) and the product I*n_o, and flipping the sign of I merely
// swaps which extraordinary mode counts as "+". So the branch is fixed on the
// physical wavevector k_e directly (decaying/outgoing, via branch_sqrt of
// I^2/eps_perp) and the product is derived as I^2 / (k_e/q). Taking
// branch_sqrt of I^2 and eps_perp separately is wrong for Re(eps) < 0, where
// the two square roots can land on mismatched branches.
SlabBasis slab_basis(Complex eps_par, Complex eps_perp, Complex sin2th, double psi) {
  SlabBasis b;
  const IJPair ij = ij_quantities(eps_par, eps_perp, sin2th, psi);
  b.J = branch_sqrt(ij.J2);
  b.keb = branch_sqrt(ij.I2 / eps_perp);
  // For anisotropic lossy media k_e^2 can sit in the lower half-plane, where
  // the Re >= 0 root grows into the medium; the transmitted mode must decay,
  // so flip to Im >= 0 (a backward but evanescent wave).
  if (b.keb.imag() < 0.0) b.keb = -b.keb;
  const Complex prod = ij.I2 / b.keb;         // I * n_o
  const Complex ratio = eps_perp / prod;      // n_o / I
  const double sp = std::sin(psi), cp = std::cos(psi);
  const Complex J2 = ij.J2;
  b.s1 << sp / b.J, -J2 * cp / prod, cp, sp;
  b.s2 << eps_perp * sp / J2, -cp, cp / b.J, ratio * sp;
  b.s3 << -sp / b.J, J2 * cp / prod, cp, sp;
  b.s4 << eps_perp * sp / J2, -cp, -cp / b.J, -ratio * sp;
  return b;
}

Mat2C reflect_from_basis(const SlabBasis& b, Complex costh) {
  // r = (s2^-1 + s1^-1 cos)^-1 (s1^-1 cos - s2^-1), rewritten as
  // I - 2 (I + cos * s2 s1^-1)^-1 so only s1 needs inversion.
  try {
    const Mat2C m = kIdentity2 + costh * (b.s2 * mat2_inv(b.s1));
    return kIdentity2 - 2.0 * mat2_inv(m);
  } catch (const SingularMatrix&) {
    throw SingularInterface("reflect_semi_infinite: singular interface matrix");
  }
}

bool both_ideal(const UniaxialMaterial& m) {
  return is_ideal_conductor(m.eps_par) && is_ideal_conductor(m.eps_perp);
}

bool any_ideal(const UniaxialMaterial& m) {
  return is_ideal_conductor(m.eps_par) || is_ideal_conductor(m.eps_perp);
}

}  // namespace

IJPair ij_quantities(Complex eps_par, Complex eps_perp, Complex sin2th, double psi) {
  const double sp = std::sin(psi), cp = std::cos(psi);
  IJPair ij;
  ij.I2 = eps_perp * eps_par - sin2th * (eps_perp * sp * sp + eps_par * cp * cp);
  ij.J2 = eps_perp - sin2th;
  return ij;
}

Mat3C dielectric_tensor(Complex eps_par, Complex eps_perp, double psi) {
  const double sp = std::sin(psi), cp = std::cos(psi);
  Mat3C e = Mat3C::Zero();
  e(0, 0) = eps_par * cp * cp + eps_perp * sp * sp;
  e(0, 1) = (eps_perp - eps_par) * sp * cp;
  e(1, 0) = e(0, 1);
  e(1, 1) = eps_perp * cp * cp + eps_par * sp * sp;
  e(2, 2) = eps_perp;
  return e;
}

Mat4C gamma_matrix(const Mat3C& eps, Complex sinth) {
  const Complex ezz = eps(2, 2);
  if (std::abs(ezz) < 1e-150) throw DegenerateEpsZZ("gamma_matrix: eps_zz ~ 0");
  const Complex s2 = sinth * sinth;
  Mat4C g = Mat4C::Zero();
  g(0, 0) = -sinth * eps(2, 0) / ezz;
  g(0, 1) = 1.0 - s2 / ezz;
  g(0, 2) = -sinth * eps(2, 1) / ezz;
  g(1, 0) = eps(0, 0) - eps(0, 2) * eps(2, 0) / ezz;
  g(1, 1) = -sinth * eps(0, 2) / ezz;
  g(1, 2) = eps(0, 1) - eps(0, 2) * eps(2, 1) / ezz;
  g(2, 3) = 1.0;
  g(3, 0) = eps(1, 0) - eps(1, 2) * eps(2, 0) / ezz;
  g(3, 1) = sinth * eps(1, 2) / ezz;
  g(3, 2) = eps(1, 1) - s2 - eps(1, 2) * eps(2, 1) / ezz;
  return g;
}

Eigenmodes eigenmodes(const UniaxialMaterial& mat, double psi, const Kinematics& kin) {
  const EpsPair eps = eval_uniaxial(mat, kin.f);
  const SlabBasis b = slab_basis(eps.par, eps.perp, kin.sin2th, psi);
  Eigenmodes em;
  em.k_o = b.J * kin.q;
  em.k_e = b.keb * kin.q;
  // The s-matrix columns are the rescaled eigenvector components.
  em.Vo_plus << b.s1(0, 0), b.s2(0, 0), b.s2(1, 0), b.s1(1, 0);
  em.Vo_minus << b.s3(0, 0), b.s4(0, 0), b.s4(1, 0), b.s3(1, 0);
  em.Ve_plus << b.s1(0, 1), b.s2(0, 1), b.s2(1, 1), b.s1(1, 1);
  em.Ve_minus << b.s3(0, 1), b.s4(0, 1), b.s4(1, 1), b.s3(1, 1);
  return em;
}

Mat2C reflect_semi_infinite(const UniaxialMaterial& mat, double psi, const Kinematics& kin) {
  if (both_ideal(mat)) return mirror_reflection();
  if (any_ideal(mat))
    throw IdealConductorEval("mixed IdealConductor slab has no closed form; use IdealWires");
  const EpsPair eps = eval_uniaxial(mat, kin.f);
  return reflect_from_basis(slab_basis(eps.par, eps.perp, kin.sin2th, psi), kin.costh);
}

Mat2C reflect_ideal_wires(const Kinematics& kin, double psi) {
  const double sp = std::sin(psi), cp = std::cos(psi);
  const Complex c = kin.costh;
  const Complex denom = 1.0 - kin.sin2th * cp * cp;
  Mat2C r;
  r << c * c * cp * cp, -sp * cp * c, sp * cp * c, Complex(-sp * sp, 0.0);
  return r / denom;
}

InterfaceMatrices film_interface_matrices(const UniaxialMaterial& mat, double psi,
                                          const Kinematics& kin) {
  if (any_ideal(mat)) throw IdealConductorEval("film interfaces need an evaluable material");
  const EpsPair eps = eval_uniaxial(mat, kin.f);
  const SlabBasis b = slab_basis(eps.par, eps.perp, kin.sin2th, psi);
  InterfaceMatrices im;
  im.k_o = b.J * kin.q;
  im.k_e = b.keb * kin.q;
  try {
    im.r20 = -mat2_inv(b.s1 + b.s2 * kin.costh) * (b.s3 + b.s4 * kin.costh);
    im.t20 = b.s4 + b.s2 * im.r20;
    im.r02 = reflect_from_basis(b, kin.costh);
    im.t02 = mat2_inv(b.s1) * kin.costh * (kIdentity2 - im.r02);
  } catch (const SingularMatrix&) {
    throw SingularInterface("film_interface_matrices: singular interface matrix");
  }
  return im;
}

Mat2C reflect_film(const UniaxialMaterial& mat, double d, double psi, const Kinematics& kin) {
  const InterfaceMatrices im = film_interface_matrices(mat, psi, kin);
  Mat2C phase = Mat2C::Zero();
  phase(0, 0) = std::exp(Complex(0.0, 1.0) * im.k_o * d);
  phase(1, 1) = std::exp(Complex(0.0, 1.0) * im.k_e * d);
  const Mat2C rk = im.r20 * phase;
  Mat2C denom_inv;
  try {
    denom_inv = mat2_inv(kIdentity2 - rk * rk);
  } catch (const SingularMatrix&) {
    throw ResonantFilm("reflect_film: resonant film denominator");
  }
  return im.r02 + im.t20 * phase * im.r20 * phase * denom_inv * im.t02;
}

Mat2C reflect_plate(const PlateSpec& plate, double psi, const Kinematics& kin) {
  Mat2C r = std::visit(
      [&](const auto& g) -> Mat2C {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, IdealWires>) {
          return reflect_ideal_wires(kin, psi);
        } else if constexpr (std::is_same_v<G, Film>) {
          return reflect_film(plate.material, g.d, psi, kin);
        } else {
          return reflect_semi_infinite(plate.material, psi, kin);
        }
      },
      plate.geometry);
  if (!r.allFinite()) throw SingularInterface("reflect_plate: non-finite reflection matrix");
  return r;
}

Complex scalar_reflect(const DispersionModel& model, const FrequencyPoint& f) {
  const Complex n = branch_sqrt(eval_eps(model, f));
  return (1.0 - n) / (1.0 + n);
}

Complex scalar_reflect_film(const DispersionModel& model, double d, const FrequencyPoint& f) {
  const Complex n = branch_sqrt(eval_eps(model, f));
  const Complex r1 = (1.0 - n) / (1.0 + n);
  const Complex omega = f.branch == Branch::ImaginaryAxis ? Complex(0.0, f.value)
                                                          : Complex(f.value, 0.0);
  Complex k = n * omega / kSpeedOfLight;
  if (k.imag() < 0.0) k = -k;
  const Complex phase = std::exp(Complex(0.0, 2.0) * k * d);
  return r1 * (1.0 - phase) / (1.0 - r1 * r1 * phase);
}

}  // namespace casimir
