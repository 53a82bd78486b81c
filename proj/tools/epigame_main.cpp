// Command-line front end: solves single scenarios (baseline, nash,
// utilitarian, govern), runs parameter scans, and lists presets. Exit codes:
// 0 success, 2 solver non-convergence, 3 invalid spec, 4 I/O error.

#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "epigame/dynamics.hpp"
#include "epigame/kernels.hpp"
#include "epigame/scenario.hpp"

namespace {

using epigame::ScenarioSpec;

constexpr int kExitOk = 0;
constexpr int kExitNoConverge = 2;
constexpr int kExitInvalidSpec = 3;
constexpr int kExitIo = 4;

struct SpecBuilder {
  std::string preset;
  std::string config;
  std::vector<std::function<void(ScenarioSpec&)>> overrides;

  template <typename T, typename Fn>
  void opt(CLI::App* app, const std::string& name, const std::string& help,
           Fn apply) {
    app->add_option_function<T>(
        name,
        [this, apply](const T& v) {
          overrides.push_back([v, apply](ScenarioSpec& s) { apply(s, v); });
        },
        help);
  }

  ScenarioSpec build(epigame::Role role) const {
    ScenarioSpec spec;
    spec.individual_cost = epigame::CostProfile{100.0, 100.0, 0.1, 300.0,
                                                1.0,   1.0,   0.0};
    if (!preset.empty()) {
      const epigame::Preset* p = epigame::find_preset(preset);
      if (!p) throw std::invalid_argument("unknown preset: " + preset);
      spec = p->spec;
    }
    if (!config.empty()) spec = epigame::load_spec(config);
    spec.role = role;
    if (role == epigame::Role::Government && !spec.government_prefs) {
      epigame::GovernmentPreferences g;
      g.cost = spec.individual_cost;
      spec.government_prefs = g;
    }
    for (const auto& f : overrides) f(spec);
    if (role != epigame::Role::Government) spec.government_prefs.reset();
    return spec;
  }
};

void add_common_options(CLI::App* app, SpecBuilder& b) {
  app->add_option("--preset", b.preset, "Start from a named preset");
  app->add_option("--config", b.config,
                  "JSON scenario file (fields mirror the spec schema)");

  b.opt<double>(app, "--kappa-star", "Baseline infectiousness R0",
                [](ScenarioSpec& s, double v) { s.epidemic.kappa_star = v; });
  b.opt<double>(app, "--i0", "Initial infected fraction",
                [](ScenarioSpec& s, double v) { s.epidemic.i0 = v; });
  b.opt<double>(app, "--tf", "Horizon in recovery-time units",
                [](ScenarioSpec& s, double v) { s.epidemic.t_f = v; });
  b.opt<int>(app, "--grid", "Number of grid points",
             [](ScenarioSpec& s, int v) { s.epidemic.n_grid = v; });

  b.opt<double>(app, "--alpha", "Constant infection cost (sets alpha0 = alpha1)",
                [](ScenarioSpec& s, double v) {
                  s.individual_cost.alpha0 = v;
                  s.individual_cost.alpha1 = v;
                });
  b.opt<double>(app, "--alpha0", "Minimum infection cost",
                [](ScenarioSpec& s, double v) { s.individual_cost.alpha0 = v; });
  b.opt<double>(app, "--alpha1", "Maximum infection cost",
                [](ScenarioSpec& s, double v) { s.individual_cost.alpha1 = v; });
  b.opt<double>(app, "--i-hc", "Healthcare threshold (infected fraction)",
                [](ScenarioSpec& s, double v) { s.individual_cost.i_hc = v; });
  b.opt<double>(app, "--sigma", "Step steepness of the infection cost",
                [](ScenarioSpec& s, double v) { s.individual_cost.sigma = v; });
  b.opt<double>(app, "--beta", "Distancing cost coefficient",
                [](ScenarioSpec& s, double v) { s.individual_cost.beta = v; });
  b.opt<double>(app, "--f", "Individual discount factor per unit time",
                [](ScenarioSpec& s, double v) { s.individual_cost.f = v; });

  b.opt<double>(app, "--omega", "Sweep damping weight",
                [](ScenarioSpec& s, double v) { s.sweep.omega = v; });
  b.opt<double>(app, "--tol", "Sweep convergence tolerance",
                [](ScenarioSpec& s, double v) { s.sweep.tol = v; });
  b.opt<int>(app, "--max-iter", "Sweep iteration cap",
             [](ScenarioSpec& s, int v) { s.sweep.max_iter = v; });
}

void add_government_options(CLI::App* app, SpecBuilder& b) {
  auto gov = [](ScenarioSpec& s) -> epigame::CostProfile& {
    if (!s.government_prefs) s.government_prefs = epigame::GovernmentPreferences{};
    return s.government_prefs->cost;
  };
  b.opt<double>(app, "--alpha-g", "Constant government infection cost",
                [gov](ScenarioSpec& s, double v) {
                  gov(s).alpha0 = v;
                  gov(s).alpha1 = v;
                });
  b.opt<double>(app, "--alpha-g0", "Government minimum infection cost",
                [gov](ScenarioSpec& s, double v) { gov(s).alpha0 = v; });
  b.opt<double>(app, "--alpha-g1", "Government maximum infection cost",
                [gov](ScenarioSpec& s, double v) { gov(s).alpha1 = v; });
  b.opt<double>(app, "--i-hc-g", "Government healthcare threshold",
                [gov](ScenarioSpec& s, double v) { gov(s).i_hc = v; });
  b.opt<double>(app, "--beta-g", "Government distancing cost coefficient",
                [gov](ScenarioSpec& s, double v) { gov(s).beta = v; });
  b.opt<double>(app, "--f-g", "Government discount factor",
                [gov](ScenarioSpec& s, double v) { gov(s).f = v; });
  b.opt<double>(app, "--gamma-g", "Intervention cost coefficient",
                [gov](ScenarioSpec& s, double v) { gov(s).gamma = v; });
  b.opt<std::string>(app, "--starts", "Outer-sweep starts: both|zero|warm",
                     [](ScenarioSpec& s, const std::string& v) {
                       if (v == "both") s.starts = epigame::StartSet::Both;
                       else if (v == "zero") s.starts = epigame::StartSet::Zero;
                       else if (v == "warm") s.starts = epigame::StartSet::Warm;
                       else throw CLI::ValidationError("--starts", "must be both|zero|warm");
                     });
  b.opt<double>(app, "--warm-anchor",
                "alpha_g1 used for the tracking warm-start anchor solve",
                [](ScenarioSpec& s, double v) { s.warm_anchor_alpha_g1 = v; });
  b.opt<double>(app, "--outer-omega", "Outer sweep damping",
                [](ScenarioSpec& s, double v) { s.sweep_outer.omega = v; });
  b.opt<double>(app, "--outer-tol", "Outer sweep tolerance",
                [](ScenarioSpec& s, double v) { s.sweep_outer.tol = v; });
  b.opt<int>(app, "--outer-max-iter", "Outer sweep iteration cap",
             [](ScenarioSpec& s, int v) { s.sweep_outer.max_iter = v; });
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void print_result(const epigame::ScenarioResult& r) {
  std::cout << "role: " << to_string(r.spec.role) << "\n";
  std::cout << "converged: " << (r.diag.converged ? "yes" : "NO")
            << "  iterations: " << r.diag.iterations
            << "  residual: " << fmt(r.diag.residual) << "\n";
  std::cout << "objective: " << fmt(r.objective) << "\n";
  std::cout << "peak_i: " << fmt(r.metrics.peak_i)
            << "  total_cases: " << fmt(r.metrics.total_cases)
            << "  duration: " << fmt(r.metrics.duration)
            << "  total_cost: " << fmt(r.metrics.total_cost) << "\n";
  if (r.metrics.branch)
    std::cout << "branch: " << to_string(*r.metrics.branch) << "\n";
  for (const auto& st : r.starts) {
    std::cout << "start " << st.name << ": "
              << (st.converged ? "converged" : "FAILED")
              << "  V = " << fmt(st.value) << "  peak_i = " << fmt(st.peak_i);
    if (st.branch) std::cout << "  [" << to_string(*st.branch) << "]";
    if (!st.error.empty()) std::cout << "  error: " << st.error;
    std::cout << "\n";
  }
  if (!r.diag.tail_ok)
    std::cout << "warning: i(t_f) = " << fmt(r.diag.i_terminal)
              << " exceeds 1e-8; raise --tf for a clean tail\n";
  if (r.diag.clamp_flagged)
    std::cout << "note: the k = 0 clamp is active on part of the horizon\n";
}

int write_output(const epigame::ScenarioResult& r, const std::string& out,
                 std::string format) {
  if (out.empty()) return kExitOk;
  if (format.empty()) {
    const auto dot = out.rfind('.');
    format = (dot != std::string::npos && out.substr(dot) == ".json") ? "json"
                                                                      : "csv";
  }
  if (format == "json")
    epigame::export_result_json(r, out);
  else
    epigame::export_trajectory_csv(r, out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int run_role(epigame::Role role, const SpecBuilder& b, const std::string& out,
             const std::string& format) {
  ScenarioSpec spec = b.build(role);
  epigame::ScenarioResult r = epigame::run_scenario(spec);
  print_result(r);
  write_output(r, out, format);
  return r.diag.converged ? kExitOk : kExitNoConverge;
}

int run_scan_cmd(const SpecBuilder& b, const std::string& role_name,
                 const std::string& axis, std::vector<double> values,
                 double lo, double hi, int per_decade, int threads,
                 const std::string& out) {
  epigame::Role role = epigame::Role::Nash;
  if (role_name == "nash") role = epigame::Role::Nash;
  else if (role_name == "utilitarian") role = epigame::Role::Utilitarian;
  else if (role_name == "government") role = epigame::Role::Government;
  else throw std::invalid_argument("--role must be nash|utilitarian|government");

  ScenarioSpec spec = b.build(role);
  if (!axis.empty() || !values.empty() || hi > 0.0) {
    epigame::ScanAxis a;
    a.param = axis.empty() && spec.scan ? spec.scan->param : axis;
    if (!values.empty())
      a.values = values;
    else if (hi > 0.0)
      a.values = epigame::log_spaced(lo, hi, per_decade);
    else if (spec.scan)
      a.values = spec.scan->values;
    spec.scan = a;
  }
  if (!spec.scan)
    throw std::invalid_argument(
        "scan needs an axis: --axis with --values or --min/--max, or a "
        "preset/config with a scan block");

  epigame::ScanResult sr = epigame::run_scan(spec, threads);

  bool all_ok = true;
  std::printf("%14s %10s %12s %10s %12s  %s\n", "value", "peak_i",
              "total_cases", "duration", "total_cost", "branch");
  for (const auto& p : sr.points) {
    if (!p.ok) {
      all_ok = false;
      std::printf("%14s  FAILED: %s\n", fmt(p.value).c_str(), p.error.c_str());
      continue;
    }
    std::printf("%14s %10s %12s %10s %12s  %s\n", fmt(p.value).c_str(),
                fmt(p.metrics.peak_i).c_str(),
                fmt(p.metrics.total_cases).c_str(),
                fmt(p.metrics.duration).c_str(),
                fmt(p.metrics.total_cost).c_str(),
                p.metrics.branch ? to_string(*p.metrics.branch) : "-");
  }
  if (sr.crossover)
    std::cout << "branch crossover inside [" << fmt(sr.crossover->lo) << ", "
              << fmt(sr.crossover->hi) << "]\n";
  if (!out.empty()) {
    epigame::export_scan_json(sr, out);
    std::cout << "wrote " << out << "\n";
  }
  return all_ok ? kExitOk : kExitNoConverge;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational social-distancing solver: Nash equilibrium, "
               "utilitarian optimum and optimal government incentives for a "
               "rescaled SIR epidemic with limited healthcare capacity"};
  app.require_subcommand(1);

  SpecBuilder b;
  std::string out, format;
  std::string scan_role = "nash", scan_axis;
  std::vector<double> scan_values;
  double scan_lo = 0.0, scan_hi = 0.0;
  int scan_per_decade = 25, threads = 0;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out, "Output path");
    sub->add_option("--format", format, "csv|json (default from extension)");
  };

  CLI::App* c_base = app.add_subcommand(
      "baseline", "Uncontrolled epidemic, k held at kappa*");
  CLI::App* c_nash =
      app.add_subcommand("nash", "Self-consistent Nash equilibrium behaviour");
  CLI::App* c_util = app.add_subcommand(
      "utilitarian", "Fully cooperative population optimum");
  CLI::App* c_gov = app.add_subcommand(
      "govern", "Optimal government incentive policy (nested solve)");
  for (CLI::App* sub : {c_base, c_nash, c_util, c_gov}) {
    add_common_options(sub, b);
    add_output(sub);
  }
  add_government_options(c_gov, b);

  CLI::App* c_scan =
      app.add_subcommand("scan", "Evaluate a scenario along a parameter axis");
  add_common_options(c_scan, b);
  add_government_options(c_scan, b);
  add_output(c_scan);
  c_scan->add_option("--role", scan_role, "nash|utilitarian|government");
  c_scan->add_option("--axis", scan_axis,
                     "Scan parameter: alpha1|alpha_g1|gamma_g|i_hc");
  c_scan->add_option("--values", scan_values, "Explicit axis values")
      ->delimiter(',');
  c_scan->add_option("--min", scan_lo, "Axis lower end (log-spaced scan)");
  c_scan->add_option("--max", scan_hi, "Axis upper end (log-spaced scan)");
  c_scan->add_option("--per-decade", scan_per_decade,
                     "Log-spaced points per decade");
  c_scan->add_option("--threads", threads,
                     "Worker threads (0 = hardware concurrency)");

  CLI::App* c_presets =
      app.add_subcommand("presets", "List named scenario presets");
  bool presets_json = false;
  c_presets->add_flag("--json", presets_json, "Dump preset specs as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_presets->parsed()) {
      if (presets_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& p : epigame::presets())
          j.push_back({{"name", p.name},
                       {"description", p.description},
                       {"spec", epigame::spec_to_json(p.spec)}});
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& p : epigame::presets())
          std::cout << p.name << "\n    " << p.description << "\n";
      }
      return kExitOk;
    }
    if (c_base->parsed())
      return run_role(epigame::Role::Baseline, b, out, format);
    if (c_nash->parsed()) return run_role(epigame::Role::Nash, b, out, format);
    if (c_util->parsed())
      return run_role(epigame::Role::Utilitarian, b, out, format);
    if (c_gov->parsed())
      return run_role(epigame::Role::Government, b, out, format);
    if (c_scan->parsed())
      return run_scan_cmd(b, scan_role, scan_axis, scan_values, scan_lo,
                          scan_hi, scan_per_decade, threads, out);
  } catch (const epigame::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid spec: " << e.what() << "\n";
    return kExitInvalidSpec;
  } catch (const epigame::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitNoConverge;
  }
  return kExitOk;
}
