#pragma once

#include <string>

#include <json.hpp>

#include "epigame/government.hpp"
#include "epigame/types.hpp"

namespace epigame {

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Role { Baseline, Nash, Utilitarian, Government };
const char* to_string(Role r);

struct ScanAxis {
  std::string param;  // one of: alpha1, alpha_g1, gamma_g, i_hc
  std::vector<double> values;
};

/// One runnable scenario. Field names match the JSON config schema; CLI flags
/// override config values. government_prefs must be present exactly when the
/// role is government.
struct ScenarioSpec {
  Role role = Role::Nash;
  EpidemicParams epidemic;
  CostProfile individual_cost;
  std::optional<GovernmentPreferences> government_prefs;
  SweepSettings sweep = SweepSettings::inner_defaults();
  SweepSettings sweep_outer = SweepSettings::outer_defaults();
  StartSet starts = StartSet::Both;
  double warm_anchor_alpha_g1 = 1e4;
  std::optional<ScanAxis> scan;

  void validate() const;
};

struct RunDiagnostics {
  bool converged = true;
  int iterations = 0;
  double residual = 0.0;
  double i_terminal = 0.0;
  bool tail_ok = true;
  bool clamp_flagged = false;
};

struct ScenarioResult {
  ScenarioSpec spec;  // resolved spec, reproducible as a config file
  Trajectory traj;
  ScenarioMetrics metrics;
  double objective = 0.0;  // U, U_p or V of the owning role
  RunDiagnostics diag;
  std::vector<GovernmentStart> starts;  // government runs only
};

struct ScanPointRecord {
  double value = 0.0;
  bool ok = false;
  std::string error;
  ScenarioMetrics metrics;
  RunDiagnostics diag;
  std::vector<GovernmentStart> starts;
};

/// Axis interval bracketing a government branch switch after bisection.
struct Crossover {
  double lo = 0.0, hi = 0.0;
  Branch branch_lo = Branch::HighPeak;
  Branch branch_hi = Branch::ThresholdTracking;
};

struct ScanResult {
  ScenarioSpec spec;
  std::vector<ScanPointRecord> points;
  std::optional<Crossover> crossover;
};

/// Applies one axis value to a spec. Scanning alpha1 (or alpha_g1) of a
/// constant-cost profile moves both limits so the profile stays constant;
/// scanning i_hc moves the shared threshold of both profiles.
ScenarioSpec with_axis_value(const ScenarioSpec& spec,
                             const std::string& param, double value);

/// Solves one scenario. An externally computed warm-start intervention can be
/// shared across government runs (the scan driver does this).
ScenarioResult run_scenario(const ScenarioSpec& spec,
                            const std::vector<double>* warm_eps = nullptr);

/// Evaluates every axis point (in parallel), records per-point metrics and
/// failures, and brackets the government branch switch by bisection (three
/// refinements) when the reported branch flips inside the window.
ScanResult run_scan(const ScenarioSpec& spec, int threads = 0);

std::vector<double> log_spaced(double lo, double hi, int per_decade);

nlohmann::json spec_to_json(const ScenarioSpec& spec);
ScenarioSpec spec_from_json(const nlohmann::json& j);
ScenarioSpec load_spec(const std::string& path);  // accepts exports too

void export_trajectory_csv(const ScenarioResult& result,
                           const std::string& path);
void export_result_json(const ScenarioResult& result, const std::string& path);
void export_scan_json(const ScanResult& result, const std::string& path);
nlohmann::json result_to_json(const ScenarioResult& result);
nlohmann::json scan_to_json(const ScanResult& result);

struct Preset {
  std::string name;
  std::string description;
  ScenarioSpec spec;
};

/// Named scenario presets; the figN-* names identify the data series they
/// regenerate and their descriptions state the expected numbers.
const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace epigame
