#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

namespace casimir {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights; the odd
// entries form the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

struct Panel {
  double a, b;
  double val, err;
};

struct PanelEval {
  double val, err;
};

// Evaluate the GK 7-15 pair on [a, b]; node values may be computed in
// parallel but are combined in a fixed order.
PanelEval eval_panel(const Integrand& f, double a, double b, bool parallel) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double xs[15];
  for (int i = 0; i < 7; ++i) {
    xs[2 * i] = c - h * kXgk[i];
    xs[2 * i + 1] = c + h * kXgk[i];
  }
  xs[14] = c;
  double fs[15];
  if (parallel && num_threads() > 1) {
    parallel_map(15, [&](int i) { return f(xs[i]); }, fs);
  } else {
    for (int i = 0; i < 15; ++i) fs[i] = f(xs[i]);
  }
  Kahan kron, gauss;
  for (int i = 0; i < 7; ++i) {
    const double pair = fs[2 * i] + fs[2 * i + 1];
    kron.add(kWgk[i] * pair);
    if (i % 2 == 1) gauss.add(kWg[i / 2] * pair);
  }
  kron.add(kWgk[7] * fs[14]);
  gauss.add(kWg[3] * fs[14]);
  PanelEval pe;
  pe.val = h * kron.sum;
  const double diff = h * std::abs(kron.sum - gauss.sum);
  pe.err = diff;
  return pe;
}

QuadResult adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                    bool parallel) {
  std::vector<Panel> panels;
  panels.reserve(64);
  {
    const PanelEval pe = eval_panel(f, a, b, parallel);
    panels.push_back({a, b, pe.val, pe.err});
  }
  for (;;) {
    Kahan total, toterr;
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total.add(panels[i].val);
      toterr.add(panels[i].err);
      if (panels[i].err > worst_err) {
        worst_err = panels[i].err;
        worst = i;
      }
    }
    const double tol = std::max(spec.rel_tol * std::abs(total.sum), spec.abs_tol);
    if (toterr.sum <= tol) return {total.sum, toterr.sum};
    if (static_cast<int>(panels.size()) >= spec.max_panels)
      throw NoConvergence("adaptive quadrature: max_panels exhausted");
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b))
      throw NoConvergence("adaptive quadrature: interval collapsed below roundoff");
    const PanelEval left = eval_panel(f, p.a, mid, parallel);
    const PanelEval right = eval_panel(f, mid, p.b, parallel);
    panels[worst] = {p.a, mid, left.val, left.err};
    panels.push_back({mid, p.b, right.val, right.err});
    // Keep panel order deterministic: sort by left endpoint.
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
  }
}

Integrand map_semiinf(const Integrand& f, Mapping mapping) {
  if (mapping == Mapping::Rational) {
    return [f](double t) {
      const double om = 1.0 - t;
      const double x = t / om;
      return f(x) / (om * om);
    };
  }
  return [f](double t) {
    const double om = 1.0 - t;
    return f(-std::log(om)) / om;
  };
}

}  // namespace

int num_threads() {
  static const int n = [] {
    if (const char* env = std::getenv("CASIMIR_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return n;
}

void parallel_map(int n, const std::function<double(int)>& f, double* out) {
  const int nt = std::min(num_threads(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    workers.emplace_back([&, t] {
      for (int i = t; i < n; i += nt) out[i] = f(i);
    });
  }
  for (auto& w : workers) w.join();
}

QuadResult integrate_semiinf(const Integrand& f, const QuadratureSpec& spec, bool parallel) {
  return adaptive(map_semiinf(f, spec.mapping), 0.0, 1.0, spec, parallel);
}

QuadResult integrate_interval(const Integrand& f, double a, double b,
                              const QuadratureSpec& spec, bool parallel) {
  return adaptive(f, a, b, spec, parallel);
}

QuadResult integrate_periodic(const Integrand& f, double a, double b, double rel_tol,
                              double abs_tol, int max_points) {
  const double len = b - a;
  int n = 8;
  auto midpoint = [&](int m) {
    const double h = len / m;
    std::vector<double> vals(m);
    parallel_map(m, [&](int i) { return f(a + (i + 0.5) * h); }, vals.data());
    Kahan s;
    for (double v : vals) s.add(v);
    return h * s.sum;
  };
  double prev = midpoint(n);
  while (n < max_points) {
    n *= 2;
    const double cur = midpoint(n);
    const double err = std::abs(cur - prev);
    if (err <= std::max(rel_tol * std::abs(cur), abs_tol)) return {cur, err};
    prev = cur;
  }
  // Analytic periodic integrands converge geometrically; reaching the cap
  // means the tolerance was not certified.
  throw NoConvergence("integrate_periodic: max_points exhausted");
}

QuadResult matsubara_sum(const std::function<double(int, double)>& term,
                         const MatsubaraSpec& mspec) {
  if (!(mspec.T > 0.0)) throw Error("matsubara_sum: T must be positive");
  const double u1 = 2.0 * kPi * kBoltzmann * mspec.T / kHbar;
  Kahan sum;
  sum.add(0.5 * term(0, 0.0));
  int below = 0;
  double prev_abs = 0.0, last_abs = 0.0, last_ratio = 0.0;
  for (int l = 1; l <= mspec.max_terms; ++l) {
    const double t = term(l, l * u1);
    sum.add(t);
    prev_abs = last_abs;
    last_abs = std::abs(t);
    if (prev_abs > 0.0) last_ratio = last_abs / prev_abs;
    if (last_abs <= mspec.tail_tol * std::abs(sum.sum)) {
      if (++below >= 3) {
        double tail = 0.0;
        if (last_ratio > 0.0 && last_ratio < 1.0)
          tail = last_abs * last_ratio / (1.0 - last_ratio);
        return {sum.sum, tail + mspec.tail_tol * std::abs(sum.sum)};
      }
    } else {
      below = 0;
    }
  }
  throw NoConvergence("matsubara_sum: max_terms exhausted");
}

double oracle_integrate(const Integrand& f, int n_points, Mapping mapping) {
  const Integrand g = map_semiinf(f, mapping);
  // Composite trapezoid on the mapped unit interval. The endpoints are the
  // images of x = 0 and x = infinity, where integrable singularities or 0*inf
  // limits can evaluate to NaN; nudge them inward by a negligible amount.
  auto trapezoid = [&](int m) {
    const double h = 1.0 / m;
    Kahan s;
    s.add(0.5 * g(1e-12));
    for (int i = 1; i < m; ++i) s.add(g(i * h));
    s.add(0.5 * g(1.0 - 1e-9));
    return h * s.sum;
  };
  const double coarse = trapezoid(n_points);
  const double fine = trapezoid(2 * n_points);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace casimir
