#include "casimir/config.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace casimir {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at '" + path + "': " + what);
}

double get_num(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_number()) fail(path + "." + key, "expected a number");
  return j[key].get<double>();
}

double get_num_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? j[key].get<double>() : fallback;
}

// Frequencies accept either SI "<key>" or "<key>_over_omega0".
double get_freq(const json& j, const std::string& key, double w0, const std::string& path) {
  if (j.contains(key)) return j[key].get<double>();
  if (j.contains(key + "_over_omega0")) return j[key + "_over_omega0"].get<double>() * w0;
  fail(path, "expected '" + key + "' or '" + key + "_over_omega0'");
}

DispersionModel parse_model(const json& j, double w0, const std::string& path) {
  if (!j.is_object() || !j.contains("type")) fail(path, "expected a material object with 'type'");
  const std::string type = j["type"].get<std::string>();
  if (type == "vacuum") return Vacuum{};
  if (type == "ideal_conductor") return IdealConductor{};
  if (type == "constant") {
    ConstantEps c;
    c.eps = Complex(get_num(j, "eps_re", path), get_num_or(j, "eps_im", 0.0));
    return c;
  }
  if (type == "drude") {
    Drude d;
    d.omega_p = get_freq(j, "omega_p", w0, path);
    if (j.value("tau_infinite", false)) {
      d.tau_infinite = true;
    } else if (j.contains("tau")) {
      d.tau = j["tau"].get<double>();
    } else if (j.contains("tau_omega0")) {
      d.tau = j["tau_omega0"].get<double>() / w0;
    } else {
      fail(path, "drude needs 'tau', 'tau_omega0' or 'tau_infinite'");
    }
    if (!(d.omega_p >= 0.0)) fail(path + ".omega_p", "must be >= 0");
    if (!d.tau_infinite && !(d.tau > 0.0)) fail(path + ".tau", "must be > 0");
    return d;
  }
  if (type == "two_oscillator") {
    TwoOscillator t;
    t.C_ir = get_num(j, "C_ir", path);
    t.C_uv = get_num(j, "C_uv", path);
    t.omega_ir = get_freq(j, "omega_ir", w0, path);
    t.omega_uv = get_freq(j, "omega_uv", w0, path);
    if (t.C_ir < 0.0 || t.C_uv < 0.0) fail(path, "oscillator strengths must be >= 0");
    if (!(t.omega_ir > 0.0 && t.omega_uv > 0.0)) fail(path, "resonances must be > 0");
    return t;
  }
  fail(path + ".type", "unknown material type '" + type + "'");
}

UniaxialMaterial parse_material(const json& j, double w0, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with 'eps_par' and 'eps_perp'");
  UniaxialMaterial m;
  if (!j.contains("eps_par")) fail(path + ".eps_par", "missing");
  if (!j.contains("eps_perp")) fail(path + ".eps_perp", "missing");
  m.eps_par = parse_model(j["eps_par"], w0, path + ".eps_par");
  m.eps_perp = parse_model(j["eps_perp"], w0, path + ".eps_perp");
  return m;
}

PlateSpec parse_plate(const json& j, double L, double w0, const std::string& path) {
  PlateSpec p;
  std::string gtype = "semi_infinite";
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    gtype = g.value("type", "semi_infinite");
    if (gtype == "film") {
      Film f;
      if (g.contains("d"))
        f.d = g["d"].get<double>();
      else if (g.contains("d_over_L"))
        f.d = g["d_over_L"].get<double>() * L;
      else
        fail(path + ".geometry", "film needs 'd' or 'd_over_L'");
      if (!(f.d >= 0.0)) fail(path + ".geometry.d", "must be >= 0");
      p.geometry = f;
    } else if (gtype == "ideal_wires") {
      p.geometry = IdealWires{};
    } else if (gtype == "semi_infinite") {
      p.geometry = SemiInfinite{};
    } else {
      fail(path + ".geometry.type", "unknown geometry '" + gtype + "'");
    }
  }
  if (gtype == "ideal_wires") {
    p.material = {IdealConductor{}, Vacuum{}};
  } else {
    if (!j.contains("material")) fail(path + ".material", "missing");
    p.material = parse_material(j["material"], w0, path + ".material");
  }
  return p;
}

}  // namespace

double omega0(const CavityConfig& cfg) { return kPi * kSpeedOfLight / cfg.L; }

RunConfig parse_config(const json& j) {
  RunConfig rc;
  if (!j.contains("cavity")) fail("cavity", "missing");
  const json& cav = j["cavity"];
  rc.cavity.L = get_num(cav, "L", "cavity");
  if (!(rc.cavity.L > 0.0)) fail("cavity.L", "must be > 0");
  const double w0 = kPi * kSpeedOfLight / rc.cavity.L;
  rc.cavity.gamma = get_num_or(cav, "gamma", 0.0);
  if (cav.contains("T_natural"))
    rc.cavity.T = cav["T_natural"].get<double>() * kHbar * kSpeedOfLight /
                  (kBoltzmann * rc.cavity.L);
  else
    rc.cavity.T = get_num_or(cav, "T", 0.0);
  if (rc.cavity.T < 0.0) fail("cavity.T", "must be >= 0");
  if (!cav.contains("plate1")) fail("cavity.plate1", "missing");
  if (!cav.contains("plate2")) fail("cavity.plate2", "missing");
  rc.cavity.plate1 = parse_plate(cav["plate1"], rc.cavity.L, w0, "cavity.plate1");
  rc.cavity.plate2 = parse_plate(cav["plate2"], rc.cavity.L, w0, "cavity.plate2");

  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    rc.quad.rel_tol = get_num_or(q, "rel_tol", rc.quad.rel_tol);
    rc.quad.abs_tol = get_num_or(q, "abs_tol", rc.quad.abs_tol);
    rc.quad.max_panels = static_cast<int>(get_num_or(q, "max_panels", rc.quad.max_panels));
    const std::string m = q.value("mapping", "rational");
    if (m == "rational")
      rc.quad.mapping = Mapping::Rational;
    else if (m == "exponential")
      rc.quad.mapping = Mapping::Exponential;
    else
      fail("quadrature.mapping", "expected 'rational' or 'exponential'");
    if (!(rc.quad.rel_tol > 0.0 && rc.quad.abs_tol > 0.0))
      fail("quadrature", "tolerances must be > 0");
  }
  if (j.contains("matsubara")) {
    const json& m = j["matsubara"];
    rc.mats.max_terms = static_cast<int>(get_num_or(m, "max_terms", rc.mats.max_terms));
    rc.mats.tail_tol = get_num_or(m, "tail_tol", rc.mats.tail_tol);
  }
  rc.one_d = j.value("mode", "3d") == "1d";

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    SweepBlock sb;
    if (!s.contains("variable")) fail("sweep.variable", "missing");
    sb.variable = s["variable"].get<std::string>();
    if (sb.variable != "gamma" && sb.variable != "d" && sb.variable != "L" &&
        sb.variable != "T" && sb.variable != "omega_p")
      fail("sweep.variable", "unknown sweep variable '" + sb.variable + "'");
    sb.min = get_num(s, "min", "sweep");
    sb.max = get_num(s, "max", "sweep");
    sb.count = static_cast<int>(get_num(s, "count", "sweep"));
    if (sb.count < 1) fail("sweep.count", "must be >= 1");
    sb.log_scale = s.value("scale", "lin") == "log";
    sb.units = s.value("units", "");
    rc.sweep = sb;
  }
  if (j.contains("optimize")) {
    const json& o = j["optimize"];
    OptimizeBlock ob;
    if (o.contains("d_min"))
      ob.d_min = o["d_min"].get<double>();
    else
      ob.d_min = get_num(o, "d_min_over_L", "optimize") * rc.cavity.L;
    if (o.contains("d_max"))
      ob.d_max = o["d_max"].get<double>();
    else
      ob.d_max = get_num(o, "d_max_over_L", "optimize") * rc.cavity.L;
    rc.optimize = ob;
  }
  if (j.contains("diagnose")) {
    const json& d = j["diagnose"];
    DiagnoseBlock db;
    db.omega = get_freq(d, "omega", w0, "diagnose");
    db.d_min = d.contains("d_min") ? d["d_min"].get<double>()
                                   : get_num(d, "d_min_over_L", "diagnose") * rc.cavity.L;
    db.d_max = d.contains("d_max") ? d["d_max"].get<double>()
                                   : get_num(d, "d_max_over_L", "diagnose") * rc.cavity.L;
    db.count = static_cast<int>(get_num_or(d, "count", 64));
    db.log_scale = d.value("scale", "log") == "log";
    rc.diagnose = db;
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_config(j);
}

std::vector<double> sweep_grid(const SweepBlock& s) {
  std::vector<double> g(s.count);
  if (s.count == 1) {
    g[0] = s.min;
    return g;
  }
  if (s.log_scale) {
    if (!(s.min > 0.0 && s.max > 0.0)) throw ConfigError("log sweep needs positive bounds");
    const double la = std::log(s.min), lb = std::log(s.max);
    for (int i = 0; i < s.count; ++i) g[i] = std::exp(la + (lb - la) * i / (s.count - 1));
  } else {
    for (int i = 0; i < s.count; ++i) g[i] = s.min + (s.max - s.min) * i / (s.count - 1);
  }
  return g;
}

void apply_sweep_value(RunConfig& rc, const SweepBlock& s, double value) {
  CavityConfig& cav = rc.cavity;
  const double w0 = omega0(cav);
  if (s.variable == "gamma") {
    cav.gamma = value;
  } else if (s.variable == "d") {
    const double d = s.units == "L" ? value * cav.L : value;
    if (!std::holds_alternative<Film>(cav.plate2.geometry))
      throw ConfigError("sweep over d requires plate2 geometry 'film'");
    cav.plate2.geometry = Film{d};
  } else if (s.variable == "L") {
    cav.L = value;
  } else if (s.variable == "T") {
    cav.T = s.units == "natural" ? value * kHbar * kSpeedOfLight / (kBoltzmann * cav.L) : value;
  } else if (s.variable == "omega_p") {
    const double wp = s.units == "omega0" ? value * w0 : value;
    for (PlateSpec* p : {&cav.plate1, &cav.plate2}) {
      if (auto* d = std::get_if<Drude>(&p->material.eps_par)) d->omega_p = wp;
    }
  }
}

}  // namespace casimir
