#pragma once

#include "epigame/types.hpp"

namespace epigame {

std::vector<double> linspace(double t_f, int n);

/// Per-infection cost alpha(i): tanh step between alpha0 and alpha1 around
/// the healthcare threshold. Monotone nondecreasing, bounded in [a0, a1].
double infection_cost(double i, const CostProfile& c);
double infection_cost_derivative(double i, const CostProfile& c);

/// Forward RK4 of s' = -k s i, i' = k s i - i from (1 - i0, i0), with the
/// behaviour series interpolated linearly between grid nodes. Throws
/// SolverError if s or i leaves [-tol, 1 + tol].
Trajectory integrate_sir(const std::vector<double>& k,
                         const EpidemicParams& p);
Trajectory integrate_sir(double k_const, const EpidemicParams& p);

/// Grid maximum of the infected series, refined by a 3-point parabola so the
/// value does not depend on where the smooth peak falls between nodes.
double peak_infected(const std::vector<double>& i);

/// Measure of {t : i(t) > threshold} with linear interpolation between nodes.
double duration_above(const std::vector<double>& t,
                      const std::vector<double>& i,
                      double threshold = kDurationThreshold);

/// Assembles metrics from a populated trajectory; total_cost is supplied by
/// the owning role (it is -U, -U_p or -V).
ScenarioMetrics compute_metrics(const Trajectory& traj, double total_cost,
                                std::optional<Branch> branch = {});

namespace detail {

inline constexpr double kStateBoundTol = 1e-9;

/// Discount powers f^{-t} and f^{+t} tabulated at grid nodes and interval
/// midpoints (the RK4 stage times).
struct DiscountTable {
  std::vector<double> neg_node, neg_mid;
  std::vector<double> pos_node, pos_mid;
  double log_f = 0.0;

  static DiscountTable build(double f, const std::vector<double>& t);
  double neg_tf() const { return neg_node.back(); }
};

void midpoints(const std::vector<double>& a, std::vector<double>& out);

/// RK4 of the population SIR under behaviour k (nodes + midpoints).
void sir_forward(const double* k_node, const double* k_mid, double h,
                 std::size_t n, double s0, double i0, double* s, double* i);

/// RK4 of the individual state probabilities under own behaviour kap and the
/// exogenous population infected series.
void psi_forward(const double* kap_node, const double* kap_mid,
                 const double* ip_node, const double* ip_mid, double h,
                 std::size_t n, double ps0, double pi0, double* ps,
                 double* pi);

}  // namespace detail

}  // namespace epigame
