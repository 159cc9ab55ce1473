#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "casimir/materials.hpp"

using namespace casimir;

TEST_CASE("eval_eps direct substitutions") {
  const FrequencyPoint u1 = FrequencyPoint::imaginary(1.0);
  CHECK(eval_eps(Vacuum{}, u1) == Complex(1.0));
  CHECK(eval_eps(Drude{1.0, 0.0, true}, u1) == Complex(2.0));
  CHECK(eval_eps(Drude{2.0, 1.0, false}, u1) == Complex(3.0));
  const TwoOscillator t{1.0, 1.0, 2.0, 10.0};
  CHECK(eval_eps(t, FrequencyPoint::imaginary(0.0)) == Complex(4.0));
  CHECK(eval_eps(ConstantEps{Complex(3.0, 0.5)}, u1) == Complex(3.0, 0.5));
}

TEST_CASE("eval_eps real branch") {
  // Drude: 1 - wp^2/(w^2 + i w/tau).
  const Complex e = eval_eps(Drude{2.0, 1.0, false}, FrequencyPoint::real_axis(1.0));
  const Complex expect = 1.0 - 4.0 / Complex(1.0, 1.0);
  CHECK(std::abs(e - expect) < 1e-14);
  // Undamped oscillator: 1 + C/(1 - (w/wr)^2), singular only at resonance.
  const TwoOscillator t{1.0, 1.0, 2.0, 10.0};
  const Complex e2 = eval_eps(t, FrequencyPoint::real_axis(2.0));
  CHECK(std::abs(e2 - Complex(1.0 + 1.0 / (1.0 - 4.0) + 2.0 / (1.0 - 0.04))) < 1e-12);
  CHECK_THROWS_AS(eval_eps(t, FrequencyPoint::real_axis(1.0)), EvalAtResonance);
  CHECK_THROWS_AS(eval_eps(IdealConductor{}, FrequencyPoint::imaginary(1.0)),
                  IdealConductorEval);
}

TEST_CASE("eval_uniaxial componentwise") {
  const FrequencyPoint u1 = FrequencyPoint::imaginary(1.0);
  const auto [par0, perp0] = eval_uniaxial({Vacuum{}, Vacuum{}}, u1);
  CHECK(par0 == Complex(1.0));
  CHECK(perp0 == Complex(1.0));
  const auto [par1, perp1] =
      eval_uniaxial({Drude{2.0, 0.0, true}, Drude{1.0, 0.0, true}}, u1);
  CHECK(par1 == Complex(5.0));
  CHECK(perp1 == Complex(2.0));
  const auto [par2, perp2] =
      eval_uniaxial({ConstantEps{Complex(3.0)}, ConstantEps{Complex(2.0)}}, u1);
  CHECK(par2 == Complex(3.0));
  CHECK(perp2 == Complex(2.0));
}

TEST_CASE("imaginary-axis models are real, >= 1 and non-increasing") {
  const DispersionModel models[] = {Drude{1.0e15, 1.0e-14, false},
                                    Drude{1.0e15, 0.0, true},
                                    TwoOscillator{3.0, 1.0e14, 2.0, 1.0e16}};
  for (const auto& m : models) {
    double prev = 1.0e308;
    for (int i = 0; i <= 48; ++i) {
      const double u = 1.0e15 * std::pow(10.0, -6.0 + 0.25 * i);
      const Complex e = eval_eps(m, FrequencyPoint::imaginary(u));
      CHECK(e.imag() == 0.0);
      CHECK(e.real() >= 1.0);
      CHECK(e.real() <= prev * (1.0 + 1e-14));
      prev = e.real();
    }
  }
}

TEST_CASE("tau_infinite equals the large-tau limit") {
  const double wp = 1.0e15;
  const Drude inf{wp, 0.0, true};
  const Drude big{wp, 1.0e12 / wp, false};
  for (double x : {1e-3, 1e-1, 1.0, 1e2}) {
    const FrequencyPoint f = FrequencyPoint::imaginary(x * wp);
    const double a = eval_eps(inf, f).real();
    const double b = eval_eps(big, f).real();
    CHECK(std::abs(a - b) < 1e-6 * a);
  }
}

TEST_CASE("causality sanity: Im eps >= 0 on the real axis for finite tau") {
  const Drude d{1.0e15, 1.0e-14, false};
  for (double x : {1e-2, 0.5, 1.0, 3.0, 1e2}) {
    CHECK(eval_eps(d, FrequencyPoint::real_axis(x * 1.0e15)).imag() >= 0.0);
  }
}

TEST_CASE("is_ideal_conductor tag") {
  CHECK(is_ideal_conductor(IdealConductor{}));
  CHECK(!is_ideal_conductor(Vacuum{}));
  CHECK(!is_ideal_conductor(Drude{1.0, 1.0, false}));
}
