#pragma once

#include "epigame/types.hpp"

namespace epigame {

/// Output of the individual-level solvers. For solve_nash the population and
/// the representative individual coincide, so psi_s/psi_i stay empty and
/// traj.s/traj.i play both roles. For solve_best_response traj.s/traj.i hold
/// the exogenous population series and psi_s/psi_i the individual's own state
/// probabilities.
struct IndividualSolution {
  Trajectory traj;
  std::vector<double> psi_s, psi_i;
  double utility = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;          // last relative sup-norm control residual
  double clamped_fraction = 0.0;  // fraction of grid nodes with k == 0
  double i_terminal = 0.0;
  bool tail_ok = true;  // i(t_f) below kTailThreshold
};

/// Pointwise optimal behaviour: kappa = max(0, kappa* + (eps - f^t (vs - vi) s i) / (2 beta)).
double control_rule(double vs, double vi, double s, double i, double eps,
                    double t, const CostProfile& c, double kappa_star);

/// Backward RK4 of vs' = (vs - vi) k i, vi' = f^{-t} alpha(i) + vi with
/// vs(t_f) = 0, vi(t_f) = -f^{-t_f} alpha(0) / (1 + log f). Fills traj.vs/vi
/// from traj.s/i/k.
void integrate_costates_individual(Trajectory& traj, const EpidemicParams& p,
                                   const CostProfile& c);

/// Discounted utility of own behaviour k and exposure psi_i against the
/// population series i, including the vaccine salvage term.
double utility_of(const std::vector<double>& t,
                  const std::vector<double>& psi_i,
                  const std::vector<double>& i, const std::vector<double>& k,
                  const std::vector<double>& eps, const CostProfile& c,
                  double kappa_star);

/// Utility at a self-consistent point (psi = population series).
double utility(const Trajectory& traj, const CostProfile& c,
               double kappa_star);

/// Best response to an exogenous epidemic: forward psi-dynamics, backward
/// costates, damped control update until the control fixed point is reached.
IndividualSolution solve_best_response(const std::vector<double>& eps,
                                       const std::vector<double>& s_ex,
                                       const std::vector<double>& i_ex,
                                       const EpidemicParams& p,
                                       const CostProfile& c,
                                       const SweepSettings& sweep,
                                       const std::vector<double>* kappa_init =
                                           nullptr);

/// Nash equilibrium: the forward pass integrates the population SIR with the
/// current behaviour, so at convergence k is both the population behaviour
/// and every individual's best response to it.
IndividualSolution solve_nash(const std::vector<double>& eps,
                              const EpidemicParams& p, const CostProfile& c,
                              const SweepSettings& sweep,
                              const std::vector<double>* k_init = nullptr);

/// dH/dkappa along the grid, for stationarity and adjoint checks.
std::vector<double> control_gradient(const std::vector<double>& t,
                                     const std::vector<double>& psi_s,
                                     const std::vector<double>& i,
                                     const std::vector<double>& k,
                                     const std::vector<double>& eps,
                                     const std::vector<double>& vs,
                                     const std::vector<double>& vi,
                                     const CostProfile& c, double kappa_star);
std::vector<double> control_gradient(const Trajectory& traj,
                                     const CostProfile& c, double kappa_star);

}  // namespace epigame
