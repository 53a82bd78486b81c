#pragma once

#include "epigame/types.hpp"

namespace epigame {

/// Fully cooperative population optimum. Same decision rule as the
/// individual problem; the costate for i gains the (vs - vi) k s term that a
/// self-interested individual ignores.
struct UtilitarianSolution {
  Trajectory traj;
  double utility = 0.0;  // U_p including the salvage term
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
  double clamped_fraction = 0.0;
  double i_terminal = 0.0;
  bool tail_ok = true;
};

/// Backward RK4 of vs' = (vs - vi) k i,
/// vi' = f^{-t} [alpha(i) + alpha'(i) i] + (vs - vi) k s + vi.
void integrate_costates_utilitarian(Trajectory& traj, const EpidemicParams& p,
                                    const CostProfile& c);

UtilitarianSolution solve_utilitarian(const std::vector<double>& eps,
                                      const EpidemicParams& p,
                                      const CostProfile& c,
                                      const SweepSettings& sweep,
                                      const std::vector<double>* k_init =
                                          nullptr);

/// Population Hamiltonian H_p along a populated trajectory. With f = 1 the
/// system is autonomous and H_p is conserved along an extremal.
std::vector<double> population_hamiltonian(const Trajectory& traj,
                                           const CostProfile& c,
                                           double kappa_star);

/// (max - min) of H_p over the grid, relative to the largest term magnitude
/// entering H_p (the natural scale against which conservation is meaningful).
double hamiltonian_drift(const Trajectory& traj, const CostProfile& c,
                         double kappa_star);

}  // namespace epigame
