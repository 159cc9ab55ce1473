// Command-line boundary: config parsing, compute/sweep/optimize/diagnose
// subcommands, CSV/JSON emission for figure reproduction.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "casimir/config.hpp"

using namespace casimir;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;

void emit_error(const std::string& type, const std::string& what) {
  json e;
  e["error"] = what;
  e["type"] = type;
  std::cerr << e.dump() << "\n";
}

std::unique_ptr<std::ofstream> open_out(const std::string& path, std::ostream*& os) {
  if (path.empty()) {
    os = &std::cout;
    return nullptr;
  }
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw ConfigError("cannot open output file '" + path + "'");
  os = f.get();
  return f;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------- compute --

int cmd_compute(const std::string& config_path, const std::string& out_path,
                const std::string& format) {
  const RunConfig rc = load_config(config_path);
  std::ostream* os;
  const auto guard = open_out(out_path, os);
  const double L = rc.cavity.L;
  if (rc.one_d) {
    const Observable m = torque_1d(rc.cavity, rc.quad);
    if (format == "json") {
      json o;
      o["torque_1d_natural"] = m.value;
      o["torque_1d_err"] = m.err_est;
      o["units"] = "hbar*c/L";
      *os << o.dump(2) << "\n";
    } else {
      *os << "torque_1d[hbar*c/L],err\n" << fmt(m.value) << "," << fmt(m.err_est) << "\n";
    }
    return kExitOk;
  }
  const Observables obs = compute_observables(rc.cavity, rc.quad, rc.mats);
  if (format == "json") {
    json o;
    o["energy"] = {{"natural", obs.energy.value},
                   {"err_est", obs.energy.err_est},
                   {"si_J_per_m2", obs.energy.value * si_energy_per_area(L)}};
    o["force"] = {{"natural", obs.force.value},
                  {"err_est", obs.force.err_est},
                  {"si_N_per_m2", obs.force.value * si_force_per_area(L)}};
    o["torque"] = {{"natural", obs.torque.value},
                   {"err_est", obs.torque.err_est},
                   {"si_N_per_m", obs.torque.value * si_torque_per_area(L)}};
    o["units"] = {{"energy", "hbar*c/L^3 per unit area"},
                  {"force", "hbar*c/L^4 per unit area"},
                  {"torque", "hbar*c/L^3 per unit area"}};
    o["zero_mode_proxy"] = obs.zero_mode_proxy;
    *os << o.dump(2) << "\n";
  } else {
    *os << "energy[hbar*c/L^3],energy_err,energy[J/m^2],force[hbar*c/L^4],force_err,"
           "force[N/m^2],torque[hbar*c/L^3],torque_err,torque[N/m]\n";
    *os << fmt(obs.energy.value) << "," << fmt(obs.energy.err_est) << ","
        << fmt(obs.energy.value * si_energy_per_area(L)) << "," << fmt(obs.force.value) << ","
        << fmt(obs.force.err_est) << "," << fmt(obs.force.value * si_force_per_area(L)) << ","
        << fmt(obs.torque.value) << "," << fmt(obs.torque.err_est) << ","
        << fmt(obs.torque.value * si_torque_per_area(L)) << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------ sweep --

void sweep_rows(std::ostream& os, RunConfig rc, const std::string& label) {
  if (!rc.sweep) throw ConfigError("sweep command needs a 'sweep' block");
  const SweepBlock sweep = *rc.sweep;
  for (double v : sweep_grid(sweep)) {
    apply_sweep_value(rc, sweep, v);
    const double L = rc.cavity.L;
    if (rc.one_d) {
      const Observable m = torque_1d(rc.cavity, rc.quad);
      os << label << "," << sweep.variable << "," << fmt(v) << ",torque_1d," << fmt(m.value)
         << "," << fmt(m.err_est) << "," << fmt(m.value * kHbar * kSpeedOfLight / L) << "\n";
    } else {
      const Observable u = energy(rc.cavity, rc.quad, rc.mats);
      const Observable m = torque(rc.cavity, rc.quad, rc.mats);
      os << label << "," << sweep.variable << "," << fmt(v) << ",energy," << fmt(u.value) << ","
         << fmt(u.err_est) << "," << fmt(u.value * si_energy_per_area(L)) << "\n";
      os << label << "," << sweep.variable << "," << fmt(v) << ",torque," << fmt(m.value) << ","
         << fmt(m.err_est) << "," << fmt(m.value * si_torque_per_area(L)) << "\n";
    }
    os.flush();
  }
}

json drude_json(double wp_over_w0, double tau_omega0, bool tau_inf) {
  json m;
  m["type"] = "drude";
  m["omega_p_over_omega0"] = wp_over_w0;
  if (tau_inf)
    m["tau_infinite"] = true;
  else
    m["tau_omega0"] = tau_omega0;
  return m;
}

json batio3_calcite_cavity(double L, double d_over_L) {
  // Oscillator parameters are illustrative user inputs, not values from a
  // reference table; see configs/batio3_calcite_illustrative.json.
  auto osc = [](double cir, double wir, double cuv, double wuv) {
    return json{{"type", "two_oscillator"},
                {"C_ir", cir},
                {"omega_ir", wir},
                {"C_uv", cuv},
                {"omega_uv", wuv}};
  };
  json cav;
  cav["L"] = L;
  cav["gamma"] = kPi / 4.0;
  cav["T"] = 0.0;
  cav["plate1"] = {{"material",
                    {{"eps_par", osc(3595.0, 0.850e14, 4.128, 0.841e16)},
                     {"eps_perp", osc(145.0, 0.850e14, 4.064, 0.896e16)}}},
                   {"geometry", {{"type", "semi_infinite"}}}};
  cav["plate2"] = {{"material",
                    {{"eps_par", osc(5.300, 2.691e14, 1.683, 1.660e16)},
                     {"eps_perp", osc(6.300, 2.691e14, 1.182, 1.906e16)}}},
                   {"geometry", {{"type", "film"}, {"d_over_L", d_over_L}}}};
  return cav;
}

json ideal_wires_cavity(double gamma, double T_natural) {
  json cav;
  cav["L"] = 1e-7;
  cav["gamma"] = gamma;
  cav["T_natural"] = T_natural;
  cav["plate1"] = {{"geometry", {{"type", "ideal_wires"}}}};
  cav["plate2"] = {{"geometry", {{"type", "ideal_wires"}}}};
  return cav;
}

int run_figure(const std::string& figure, std::ostream& os, double rel_tol) {
  json base;
  base["quadrature"] = {{"rel_tol", rel_tol}};
  const std::vector<double> T_grid = {0.0, 0.01, 0.1, 0.2, 0.3, 0.4, 0.5};

  os << "curve,variable,value,observable,natural,err_est,si\n";
  if (figure == "energyvsa" || figure == "tvsaideal") {
    for (double t : T_grid) {
      json j = base;
      j["cavity"] = ideal_wires_cavity(0.0, t);
      j["sweep"] = {{"variable", "gamma"}, {"min", 0.0}, {"max", kPi}, {"count", 17}};
      sweep_rows(os, parse_config(j), "T_natural=" + fmt(t));
    }
    return kExitOk;
  }
  if (figure == "tvsanoideal") {
    for (double wp : {1.0, 10.0, 100.0}) {
      json j = base;
      j["cavity"] = ideal_wires_cavity(0.0, 0.0);
      json plate = {{"material",
                     {{"eps_par", drude_json(wp, 1000.0, false)}, {"eps_perp", {{"type", "vacuum"}}}}},
                    {"geometry", {{"type", "semi_infinite"}}}};
      j["cavity"]["plate1"] = plate;
      j["cavity"]["plate2"] = plate;
      j["sweep"] = {{"variable", "gamma"}, {"min", 0.0}, {"max", kPi}, {"count", 17}};
      sweep_rows(os, parse_config(j), "omega_p/omega0=" + fmt(wp));
    }
    json j = base;
    j["cavity"] = ideal_wires_cavity(0.0, 0.0);
    j["sweep"] = {{"variable", "gamma"}, {"min", 0.0}, {"max", kPi}, {"count", 17}};
    sweep_rows(os, parse_config(j), "omega_p=inf");
    return kExitOk;
  }
  if (figure == "tvsdwpe_wpo2" || figure == "t1Dvsdwpe_wpo2") {
    const bool one_d = figure[0] == 't' && figure[1] == '1';
    const std::vector<double> wps = one_d
        ? std::vector<double>{0.1, 1.0 / 7.0, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0, 5.0}
        : std::vector<double>{0.25, 1.0 / 3.0, 0.5, 0.7, 1.0, 2.0, 3.0, 5.0};
    for (double wp : wps) {
      json j = base;
      j["mode"] = one_d ? "1d" : "3d";
      json mat = {{"eps_par", drude_json(2.0 * wp, 0.0, true)},
                  {"eps_perp", drude_json(wp, 0.0, true)}};
      j["cavity"] = {{"L", 1e-7},
                     {"gamma", kPi / 4.0},
                     {"T", 0.0},
                     {"plate1", {{"material", mat}, {"geometry", {{"type", "semi_infinite"}}}}},
                     {"plate2", {{"material", mat}, {"geometry", {{"type", "film"}, {"d_over_L", 1.0}}}}}};
      j["sweep"] = {{"variable", "d"}, {"min", 3e-4}, {"max", 3.0},
                    {"count", 25}, {"scale", "log"}, {"units", "L"}};
      sweep_rows(os, parse_config(j), "omega_p_perp/omega0=" + fmt(wp));
    }
    return kExitOk;
  }
  if (figure == "skineff") {
    // Normal-incidence reflection anisotropy of a lossless Drude film,
    // omega = 0.1 omega_p_perp, omega_p_par = 2 omega_p_perp.
    const double wp_perp = kPi * kSpeedOfLight / 1e-7;
    const UniaxialMaterial mat{Drude{2.0 * wp_perp, 0.0, true}, Drude{wp_perp, 0.0, true}};
    const double unit = kSpeedOfLight / wp_perp;
    std::vector<double> grid;
    for (int i = 0; i < 121; ++i) grid.push_back(unit * std::pow(10.0, -2.0 + 4.0 * i / 120.0));
    for (const AnisotropyRow& r : anisotropy_diagnostic(mat, 0.1 * wp_perp, grid)) {
      os << "skineff,d," << fmt(r.d / unit) << ",r_par_mag," << fmt(r.r_par) << ",0,0\n";
      os << "skineff,d," << fmt(r.d / unit) << ",r_perp_mag," << fmt(r.r_perp) << ",0,0\n";
      os << "skineff,d," << fmt(r.d / unit) << ",dr_mag," << fmt(r.dr) << ",0,0\n";
    }
    return kExitOk;
  }
  if (figure == "iantfvsdvsL") {
    for (double Lnm : {10.0, 50.0, 100.0, 200.0, 400.0, 600.0, 800.0, 1000.0}) {
      json j = base;
      j["cavity"] = batio3_calcite_cavity(Lnm * 1e-9, 1.0);
      j["sweep"] = {{"variable", "d"}, {"min", 1e-3}, {"max", 30.0},
                    {"count", 15}, {"scale", "log"}, {"units", "L"}};
      sweep_rows(os, parse_config(j), "L_nm=" + fmt(Lnm));
    }
    return kExitOk;
  }
  throw ConfigError("unknown figure '" + figure + "'");
}

int cmd_sweep(const std::string& config_path, const std::string& figure,
              const std::string& out_path, double figure_rel_tol) {
  std::ostream* os;
  const auto guard = open_out(out_path, os);
  if (!figure.empty()) return run_figure(figure, *os, figure_rel_tol);
  const RunConfig rc = load_config(config_path);
  *os << "curve,variable,value,observable,natural,err_est,si\n";
  sweep_rows(*os, rc, "sweep");
  return kExitOk;
}

// --------------------------------------------------------------- optimize --

int cmd_optimize(const std::string& config_path, const std::string& out_path) {
  const RunConfig rc = load_config(config_path);
  if (!rc.optimize) throw ConfigError("optimize command needs an 'optimize' block");
  ThicknessSearch search;
  search.d_min = rc.optimize->d_min;
  search.d_max = rc.optimize->d_max;
  search.one_d = rc.one_d;
  const ThicknessOptimum opt = optimize_thickness(rc.cavity, rc.quad, search);
  json o;
  o["status"] = opt.interior ? "interior-maximum" : "boundary-maximum";
  o["d_opt"] = opt.d_opt;
  o["d_opt_over_L"] = opt.d_opt / rc.cavity.L;
  o["torque_at_opt"] = opt.torque_at_opt;
  o["torque_asymptotic"] = opt.torque_asymptotic;
  o["ratio"] = opt.ratio;
  o["seed_estimate"] = opt.seed_estimate;
  o["seed_estimate_over_L"] = opt.seed_estimate / rc.cavity.L;
  std::ostream* os;
  const auto guard = open_out(out_path, os);
  *os << o.dump(2) << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- diagnose --

int cmd_diagnose(const std::string& config_path, const std::string& out_path) {
  const RunConfig rc = load_config(config_path);
  if (!rc.diagnose) throw ConfigError("diagnose command needs a 'diagnose' block");
  const DiagnoseBlock& db = *rc.diagnose;
  std::vector<double> grid;
  for (int i = 0; i < db.count; ++i) {
    const double f = db.count == 1 ? 0.0 : static_cast<double>(i) / (db.count - 1);
    grid.push_back(db.log_scale ? db.d_min * std::pow(db.d_max / db.d_min, f)
                                : db.d_min + (db.d_max - db.d_min) * f);
  }
  std::ostream* os;
  const auto guard = open_out(out_path, os);
  *os << "d[m],r_par_mag,r_perp_mag,dr_mag\n";
  for (const AnisotropyRow& r :
       anisotropy_diagnostic(rc.cavity.plate2.material, db.omega, grid)) {
    *os << fmt(r.d) << "," << fmt(r.r_par) << "," << fmt(r.r_perp) << "," << fmt(r.dr) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energy, force and torque between anisotropic plates"};
  app.require_subcommand(1);

  std::string config_path, out_path, figure, format = "csv";

  auto* compute = app.add_subcommand("compute", "single-point energy/force/torque");
  compute->add_option("--config", config_path, "JSON config")->required();
  compute->add_option("--out", out_path, "output file (default stdout)");
  compute->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  double figure_rel_tol = 1e-4;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  sweep->add_option("--config", config_path, "JSON config with a sweep block");
  sweep->add_option("--figure", figure,
                    "bundled figure recipe: energyvsa|tvsaideal|tvsanoideal|"
                    "tvsdwpe_wpo2|t1Dvsdwpe_wpo2|skineff|iantfvsdvsL");
  sweep->add_option("--figure-rel-tol", figure_rel_tol, "quadrature rel_tol for figure runs");
  sweep->add_option("--out", out_path, "output CSV (default stdout)");

  auto* optimize = app.add_subcommand("optimize", "film-thickness torque maximization");
  optimize->add_option("--config", config_path, "JSON config with an optimize block")->required();
  optimize->add_option("--out", out_path, "output JSON (default stdout)");

  auto* diagnose = app.add_subcommand("diagnose", "reflection anisotropy vs film thickness");
  diagnose->add_option("--config", config_path, "JSON config with a diagnose block")->required();
  diagnose->add_option("--out", out_path, "output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return cmd_compute(config_path, out_path, format);
    if (sweep->parsed()) {
      if (figure.empty() && config_path.empty())
        throw ConfigError("sweep needs --config or --figure");
      return cmd_sweep(config_path, figure, out_path, figure_rel_tol);
    }
    if (optimize->parsed()) return cmd_optimize(config_path, out_path);
    if (diagnose->parsed()) return cmd_diagnose(config_path, out_path);
  } catch (const ConfigError& e) {
    emit_error("config", e.what());
    return kExitConfig;
  } catch (const NoConvergence& e) {
    emit_error("no_convergence", e.what());
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    emit_error("runtime", e.what());
    return 1;
  }
  return kExitOk;
}
