#pragma once

// JSON run configuration: cavity + engine settings + optional sweep /
// optimize / diagnose blocks. Physical inputs are SI; frequencies may instead
// be given in units of omega0 = pi c / L and lengths in units of L.

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "casimir/observables.hpp"

namespace casimir {

struct SweepBlock {
  std::string variable;  // gamma | d | L | T | omega_p
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log_scale = false;
  std::string units;  // "", "omega0" (frequencies), "L" (lengths), "natural" (T)
};

struct OptimizeBlock {
  double d_min = 0.0;  // m
  double d_max = 0.0;  // m
};

struct DiagnoseBlock {
  double omega = 0.0;  // rad/s
  double d_min = 0.0, d_max = 0.0;
  int count = 0;
  bool log_scale = true;
};

struct RunConfig {
  CavityConfig cavity;
  QuadratureSpec quad;
  MatsubaraSpec mats;
  bool one_d = false;
  std::optional<SweepBlock> sweep;
  std::optional<OptimizeBlock> optimize;
  std::optional<DiagnoseBlock> diagnose;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Resolved sweep grid value applied back onto the cavity.
void apply_sweep_value(RunConfig& cfg, const SweepBlock& sweep, double value);
std::vector<double> sweep_grid(const SweepBlock& sweep);

double omega0(const CavityConfig& cfg);  // pi c / L

}  // namespace casimir
