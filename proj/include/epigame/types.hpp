#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epigame {

/// Thrown when an integration blows up or a solver is handed unusable state.
/// Plain non-convergence is not exceptional; it is reported through the
/// `converged` flag and residual of the corresponding solution struct.
class SolverError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Epidemic setup: rescaled SIR with one recovery timescale, so time is
/// measured in recovery times and kappa_star is the basic reproduction number.
struct EpidemicParams {
  double kappa_star = 4.0;  // baseline infectiousness R0, dimensionless
  double i0 = 3e-8;         // initial infected fraction
  double t_f = 100.0;       // horizon, recovery-time units
  int n_grid = 10001;       // uniform grid points over [0, t_f]

  double dt() const { return t_f / static_cast<double>(n_grid - 1); }
  void validate() const;
};

/// Cost side of a decision maker's utility. The infection cost is a tanh step
/// that rises from alpha0 to alpha1 around the healthcare threshold i_hc with
/// steepness sigma; alpha1 == alpha0 expresses a constant cost. `gamma` is the
/// direct cost of operating the incentive scheme and is only meaningful for
/// the government role.
struct CostProfile {
  double alpha0 = 100.0;
  double alpha1 = 100.0;
  double i_hc = 0.1;
  double sigma = 300.0;
  double beta = 1.0;  // distancing cost coefficient
  double f = 1.0;     // discount factor per unit time, f >= 1
  double gamma = 0.0; // intervention cost coefficient (government only)

  bool constant_cost() const { return alpha1 == alpha0; }
  void validate() const;
};

/// Government preferences are a CostProfile reused with the government
/// meaning of the fields: alpha_g0/alpha_g1/beta_g/f_g/gamma_g. By default a
/// scenario copies i_hc and sigma from the individual profile.
struct GovernmentPreferences {
  CostProfile cost;

  void validate() const;
};

/// Forward-backward sweep settings. `tol` is a relative sup-norm tolerance on
/// the fixed-point residual of the control update; `omega` is the damping
/// weight used to mix the new control into the old one.
struct SweepSettings {
  double omega = 0.1;
  double tol = 1e-8;
  int max_iter = 10000;

  void validate() const;
  static SweepSettings inner_defaults() { return {0.1, 1e-8, 10000}; }
  static SweepSettings outer_defaults() { return {0.05, 1e-7, 5000}; }
};

/// Aligned time series on the shared grid. `vs`/`vi` are the individual (or
/// utilitarian) costates; `ls`/`li` are the government costates and stay empty
/// for non-government solutions. The recovered fraction is derived, never
/// stored.
struct Trajectory {
  std::vector<double> t;
  std::vector<double> s;
  std::vector<double> i;
  std::vector<double> k;
  std::vector<double> eps;
  std::vector<double> vs, vi;
  std::vector<double> ls, li;

  std::size_t size() const { return t.size(); }
  std::vector<double> recovered() const;
};

enum class Branch { HighPeak, ThresholdTracking };

const char* to_string(Branch b);

/// Summary numbers for one solved scenario. `duration` uses the conventional
/// i > 1e-4 window; `total_cost` is the negative objective of the owning role.
struct ScenarioMetrics {
  double peak_i = 0.0;
  double total_cases = 0.0;
  double duration = 0.0;
  double total_cost = 0.0;
  std::optional<Branch> branch;
};

/// Infected-fraction threshold defining the epidemic duration window.
inline constexpr double kDurationThreshold = 1e-4;

/// Terminal infected fraction above which a run is flagged as truncated
/// (salvage approximation degrades; the user should raise t_f).
inline constexpr double kTailThreshold = 1e-8;

/// A government solution whose reported peak exceeds i_hc by more than this
/// factor is labeled high-peak, otherwise threshold-tracking.
inline constexpr double kBranchPeakFactor = 1.2;

}  // namespace epigame
