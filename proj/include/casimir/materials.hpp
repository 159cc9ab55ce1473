#pragma once

// Frequency-dependent dielectric models for the two principal responses of a
// uniaxial medium, evaluable on the real axis (diagnostics) and on the
// imaginary axis (all production integrals).

#include <cmath>
#include <variant>

#include "casimir/errors.hpp"
#include "casimir/linalg.hpp"

namespace casimir {

enum class Branch { RealAxis, ImaginaryAxis };

// One evaluation frequency: omega on the real branch, u on the imaginary
// branch (omega = i u, u >= 0).
struct FrequencyPoint {
  Branch branch = Branch::ImaginaryAxis;
  double value = 0.0;  // rad/s

  static FrequencyPoint real_axis(double omega) { return {Branch::RealAxis, omega}; }
  static FrequencyPoint imaginary(double u) { return {Branch::ImaginaryAxis, u}; }
};

struct Vacuum {};
struct ConstantEps {
  Complex eps{1.0, 0.0};
};
struct Drude {
  double omega_p = 0.0;  // rad/s
  double tau = 0.0;      // s; ignored when tau_infinite
  bool tau_infinite = false;
};
struct TwoOscillator {
  double C_ir = 0.0;
  double omega_ir = 0.0;  // rad/s
  double C_uv = 0.0;
  double omega_uv = 0.0;  // rad/s
};
// Symbolic tag, resolved by the optics layer through closed forms; never
// evaluated as eps = infinity.
struct IdealConductor {};

using DispersionModel = std::variant<Vacuum, ConstantEps, Drude, TwoOscillator, IdealConductor>;

inline bool is_ideal_conductor(const DispersionModel& m) {
  return std::holds_alternative<IdealConductor>(m);
}

Complex eval_eps(const DispersionModel& model, const FrequencyPoint& f);

// eps_par responds along the optical axis (extraordinary, n_e = sqrt(eps_par)),
// eps_perp across it (ordinary, n_o = sqrt(eps_perp)).
struct UniaxialMaterial {
  DispersionModel eps_par;
  DispersionModel eps_perp;
};

struct EpsPair {
  Complex par;
  Complex perp;
};

inline EpsPair eval_uniaxial(const UniaxialMaterial& mat, const FrequencyPoint& f) {
  return {eval_eps(mat.eps_par, f), eval_eps(mat.eps_perp, f)};
}

inline Complex eval_eps(const DispersionModel& model, const FrequencyPoint& f) {
  struct Visitor {
    const FrequencyPoint& f;
    Complex operator()(const Vacuum&) const { return {1.0, 0.0}; }
    Complex operator()(const ConstantEps& c) const { return c.eps; }
    Complex operator()(const Drude& d) const {
      if (f.branch == Branch::ImaginaryAxis) {
        const double u = f.value;
        const double damping = d.tau_infinite ? 0.0 : u / d.tau;
        return {1.0 + d.omega_p * d.omega_p / (u * u + damping), 0.0};
      }
      const double w = f.value;
      const Complex denom = d.tau_infinite ? Complex(w * w, 0.0) : Complex(w * w, w / d.tau);
      return 1.0 - d.omega_p * d.omega_p / denom;
    }
    Complex operator()(const TwoOscillator& t) const {
      if (f.branch == Branch::ImaginaryAxis) {
        const double u = f.value;
        const double xir = u / t.omega_ir, xuv = u / t.omega_uv;
        return {1.0 + t.C_ir / (1.0 + xir * xir) + t.C_uv / (1.0 + xuv * xuv), 0.0};
      }
      const double w = f.value;
      for (double wres : {t.omega_ir, t.omega_uv}) {
        if (std::abs(w - wres) / wres < 1e-12)
          throw EvalAtResonance("two-oscillator model evaluated at an undamped resonance");
      }
      const double xir = w / t.omega_ir, xuv = w / t.omega_uv;
      return {1.0 + t.C_ir / (1.0 - xir * xir) + t.C_uv / (1.0 - xuv * xuv), 0.0};
    }
    Complex operator()(const IdealConductor&) const {
      throw IdealConductorEval("IdealConductor is a symbolic tag and cannot be evaluated");
    }
  };
  return std::visit(Visitor{f}, model);
}

}  // namespace casimir
