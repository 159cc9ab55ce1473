#pragma once

// Numerical integration engine: adaptive Gauss-Kronrod panels with embedded
// error estimates, semi-infinite mappings, a spectrally convergent periodic
// rule, Matsubara summation, and an independent fixed-grid oracle used by the
// tests to certify the adaptive engine.
//
// All reductions run in a fixed order with compensated summation, so results
// are bitwise reproducible regardless of the thread count.

#include <functional>
#include <utility>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

enum class Mapping { Rational, Exponential };

struct QuadratureSpec {
  double rel_tol = 1e-7;
  double abs_tol = 1e-12;
  int max_panels = 4096;
  Mapping mapping = Mapping::Rational;
};

struct MatsubaraSpec {
  double T = 0.0;  // K
  int max_terms = 10000;
  double tail_tol = 1e-9;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
};

using Integrand = std::function<double(double)>;

// Number of worker threads (CASIMIR_THREADS env var, default: hardware).
int num_threads();

// Evaluate f(i) for i in [0, n) across threads; results land in index order.
void parallel_map(int n, const std::function<double(int)>& f, double* out);

// Integral of f over [0, inf) via the spec's mapping onto (0, 1) and adaptive
// 15-point Kronrod panels. `parallel` evaluates the nodes of each new panel
// concurrently (panel subdivision order stays deterministic).
QuadResult integrate_semiinf(const Integrand& f, const QuadratureSpec& spec,
                             bool parallel = false);

// Adaptive integral over a finite interval [a, b].
QuadResult integrate_interval(const Integrand& f, double a, double b,
                              const QuadratureSpec& spec, bool parallel = false);

// Uniform midpoint rule for a periodic integrand on [a, b), doubled until the
// Richardson difference meets the tolerance. Geometric convergence for
// analytic periodic integrands.
QuadResult integrate_periodic(const Integrand& f, double a, double b,
                              double rel_tol, double abs_tol, int max_points = 2048);

// Primed Matsubara sum: term(0)/2 + sum_{l>=1} term(l, u_l), truncated when
// three consecutive terms drop below tail_tol * |partial sum|.
QuadResult matsubara_sum(const std::function<double(int, double)>& term,
                         const MatsubaraSpec& mspec);

// Independent verification oracle: composite midpoint with one Richardson
// halving on the mapped semi-infinite domain. No adaptivity; test use only.
double oracle_integrate(const Integrand& f, int n_points,
                        Mapping mapping = Mapping::Rational);

}  // namespace casimir
