#pragma once

#include <string>

#include "epigame/individual.hpp"
#include "epigame/types.hpp"

namespace epigame {

enum class StartSet { Both, Zero, Warm };
const char* to_string(StartSet s);

/// Outcome of one outer-sweep start of the nested government solve.
struct GovernmentStart {
  std::string name;  // "zero" | "warm"
  bool converged = false;
  double value = 0.0;
  std::optional<Branch> branch;
  double peak_i = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool clamp_flagged = false;
  std::string error;  // nonempty when the start aborted
};

struct GovernmentSolution {
  Trajectory traj;  // s, i, k, eps, vs, vi, ls, li of the reported start
  double value = 0.0;
  std::optional<Branch> branch;
  std::vector<GovernmentStart> starts;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
  // The closed-form intervention rule assumes an interior individual control;
  // when the inner clamp k = 0 is active on a positive measure the run is
  // flagged rather than rejected.
  bool clamp_flagged = false;
  double i_terminal = 0.0;
  bool tail_ok = true;
  IndividualSolution inner;  // incentivized Nash at the reported eps
};

/// Government objective V of a populated trajectory, salvage included. The
/// intervention term enters with opposite sign to the individual utility:
/// paying incentives costs the government gamma_g per utility unit moved.
double government_value(const Trajectory& traj,
                        const GovernmentPreferences& gp, double kappa_star);

/// Backward RK4 of the government costates given the converged inner Nash
/// quantities (s, i, k, vs, vi) and intervention eps on the same grid.
/// f_individual is the population's discount factor entering the inner rule.
void integrate_costates_government(Trajectory& traj, const EpidemicParams& p,
                                   double f_individual,
                                   const GovernmentPreferences& gp);

/// Pointwise optimal intervention:
/// eps = i s [f^t (beta_g + gamma_g)(vs - vi) - f_g^t (ls - li)] / (beta_g + 2 gamma_g).
double intervention_rule(double vs, double vi, double ls, double li, double s,
                         double i, double t, const GovernmentPreferences& gp,
                         double f_individual);

/// Nested bilevel solve: the outer sweep updates eps against the inner Nash
/// equilibrium k(eps), run once per requested start; the reported solution is
/// the converged start with the highest objective. The warm start biases the
/// outer sweep toward the threshold-tracking branch; when warm_eps is null it
/// is built internally via tracking_warm_start.
GovernmentSolution solve_government(const EpidemicParams& p,
                                    const CostProfile& c_individual,
                                    const GovernmentPreferences& gp,
                                    const SweepSettings& outer,
                                    const SweepSettings& inner,
                                    StartSet starts = StartSet::Both,
                                    const std::vector<double>* warm_eps =
                                        nullptr);

/// Intervention series of the converged cost-free (gamma_g = 0), high
/// maximum-infection-cost government solution at the same threshold: the
/// canonical seed for the threshold-tracking basin.
std::vector<double> tracking_warm_start(const EpidemicParams& p,
                                        const CostProfile& c_individual,
                                        const GovernmentPreferences& gp,
                                        const SweepSettings& outer,
                                        const SweepSettings& inner,
                                        double anchor_alpha_g1 = 1e4);

}  // namespace epigame
