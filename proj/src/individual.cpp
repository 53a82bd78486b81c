#include "epigame/individual.hpp"

#include <algorithm>
#include <cmath>

#include "epigame/dynamics.hpp"
#include "epigame/kernels.hpp"

namespace epigame {

using detail::DiscountTable;

namespace {

kern::CostParams cost_params(const CostProfile& c) {
  return {c.alpha0, c.alpha1, c.i_hc, c.sigma};
}

double terminal_costate_vi(const CostProfile& c, const DiscountTable& d) {
  return -d.neg_tf() * infection_cost(0.0, c) / (1.0 + d.log_f);
}

void check_finite(double a, double b, std::size_t j) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw SolverError("costate integration produced nonfinite values at node " +
                      std::to_string(j));
}

// Backward RK4 of vs' = (vs - vi) kap i, vi' = f^{-t} alpha + vi.
// All coefficient series are given at grid nodes and interval midpoints.
void costates_individual_backward(const double* i_node, const double* i_mid,
                                  const double* kap_node,
                                  const double* kap_mid, const double* a_node,
                                  const double* a_mid, const double* dn_node,
                                  const double* dn_mid, double h,
                                  std::size_t n, double terminal_vi,
                                  double* vs, double* vi) {
  vs[n - 1] = 0.0;
  vi[n - 1] = terminal_vi;
  const double h6 = h / 6.0, h2 = 0.5 * h;
  for (std::size_t j = n - 1; j > 0; --j) {
    const double as = vs[j], ai = vi[j];
    const double c1 = kap_node[j] * i_node[j];
    const double s1 = dn_node[j] * a_node[j];
    const double cm = kap_mid[j - 1] * i_mid[j - 1];
    const double sm = dn_mid[j - 1] * a_mid[j - 1];
    const double c4 = kap_node[j - 1] * i_node[j - 1];
    const double s4 = dn_node[j - 1] * a_node[j - 1];

    const double d1s = (as - ai) * c1, d1i = s1 + ai;
    const double y2s = as - h2 * d1s, y2i = ai - h2 * d1i;
    const double d2s = (y2s - y2i) * cm, d2i = sm + y2i;
    const double y3s = as - h2 * d2s, y3i = ai - h2 * d2i;
    const double d3s = (y3s - y3i) * cm, d3i = sm + y3i;
    const double y4s = as - h * d3s, y4i = ai - h * d3i;
    const double d4s = (y4s - y4i) * c4, d4i = s4 + y4i;

    vs[j - 1] = as - h6 * (d1s + 2.0 * (d2s + d3s) + d4s);
    vi[j - 1] = ai - h6 * (d1i + 2.0 * (d2i + d3i) + d4i);
    check_finite(vs[j - 1], vi[j - 1], j - 1);
  }
}

struct SweepBuffers {
  std::vector<double> k_mid, i_mid, a_node, a_mid, vs, vi, k_new;
};

double clamped_fraction_of(const std::vector<double>& k) {
  std::size_t c = 0;
  for (double v : k)
    if (v == 0.0) ++c;
  return static_cast<double>(c) / static_cast<double>(k.size());
}

}  // namespace

double control_rule(double vs, double vi, double s, double i, double eps,
                    double t, const CostProfile& c, double kappa_star) {
  const double press = std::exp(t * std::log(c.f)) * (vs - vi) * s * i;
  return std::max(0.0, kappa_star + (eps - press) / (2.0 * c.beta));
}

void integrate_costates_individual(Trajectory& traj, const EpidemicParams& p,
                                   const CostProfile& c) {
  const std::size_t n = traj.size();
  const double h = p.dt();
  const DiscountTable dis = DiscountTable::build(c.f, traj.t);
  std::vector<double> k_mid, i_mid, a_node(n), a_mid(n - 1);
  detail::midpoints(traj.k, k_mid);
  detail::midpoints(traj.i, i_mid);
  const auto& ops = kern::active_ops();
  ops.cost_series(traj.i.data(), cost_params(c), a_node.data(), n);
  ops.cost_series(i_mid.data(), cost_params(c), a_mid.data(), n - 1);
  traj.vs.resize(n);
  traj.vi.resize(n);
  costates_individual_backward(traj.i.data(), i_mid.data(), traj.k.data(),
                               k_mid.data(), a_node.data(), a_mid.data(),
                               dis.neg_node.data(), dis.neg_mid.data(), h, n,
                               terminal_costate_vi(c, dis), traj.vs.data(),
                               traj.vi.data());
}

double utility_of(const std::vector<double>& t,
                  const std::vector<double>& psi_i,
                  const std::vector<double>& i, const std::vector<double>& k,
                  const std::vector<double>& eps, const CostProfile& c,
                  double kappa_star) {
  const std::size_t n = t.size();
  const double h = t[1] - t[0];
  const DiscountTable dis = DiscountTable::build(c.f, t);
  std::vector<double> alpha(n), u(n);
  const auto& ops = kern::active_ops();
  ops.cost_series(i.data(), cost_params(c), alpha.data(), n);
  for (std::size_t j = 0; j < n; ++j) {
    const double dk = k[j] - kappa_star;
    u[j] = dis.neg_node[j] *
           (-alpha[j] * psi_i[j] - c.beta * dk * dk + dk * eps[j]);
  }
  const double salvage = -dis.neg_tf() * infection_cost(0.0, c) *
                         psi_i.back() / (1.0 + dis.log_f);
  return ops.trapezoid(u.data(), h, n) + salvage;
}

double utility(const Trajectory& traj, const CostProfile& c,
               double kappa_star) {
  return utility_of(traj.t, traj.i, traj.i, traj.k, traj.eps, c, kappa_star);
}

std::vector<double> control_gradient(const std::vector<double>& t,
                                     const std::vector<double>& psi_s,
                                     const std::vector<double>& i,
                                     const std::vector<double>& k,
                                     const std::vector<double>& eps,
                                     const std::vector<double>& vs,
                                     const std::vector<double>& vi,
                                     const CostProfile& c, double kappa_star) {
  const std::size_t n = t.size();
  const DiscountTable dis = DiscountTable::build(c.f, t);
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    g[j] = dis.neg_node[j] * (eps[j] - 2.0 * c.beta * (k[j] - kappa_star)) -
           (vs[j] - vi[j]) * psi_s[j] * i[j];
  }
  return g;
}

std::vector<double> control_gradient(const Trajectory& traj,
                                     const CostProfile& c, double kappa_star) {
  return control_gradient(traj.t, traj.s, traj.i, traj.k, traj.eps, traj.vs,
                          traj.vi, c, kappa_star);
}

IndividualSolution solve_nash(const std::vector<double>& eps,
                              const EpidemicParams& p, const CostProfile& c,
                              const SweepSettings& sweep,
                              const std::vector<double>* k_init) {
  p.validate();
  c.validate();
  sweep.validate();
  const std::size_t n = static_cast<std::size_t>(p.n_grid);
  if (eps.size() != n)
    throw std::invalid_argument("eps series length must match n_grid");

  const double h = p.dt();
  const auto& ops = kern::active_ops();
  const kern::CostParams cp = cost_params(c);

  IndividualSolution sol;
  sol.traj.t = linspace(p.t_f, p.n_grid);
  sol.traj.eps = eps;
  const DiscountTable dis = DiscountTable::build(c.f, sol.traj.t);
  const double vterm = terminal_costate_vi(c, dis);
  const double inv_two_beta = 1.0 / (2.0 * c.beta);

  std::vector<double>& k = sol.traj.k;
  if (k_init) {
    k = *k_init;
    for (double& v : k) v = std::max(0.0, v);
  } else {
    k.assign(n, p.kappa_star);
  }

  auto& s = sol.traj.s;
  auto& i = sol.traj.i;
  auto& vs = sol.traj.vs;
  auto& vi = sol.traj.vi;
  s.resize(n);
  i.resize(n);
  vs.resize(n);
  vi.resize(n);
  SweepBuffers b;
  b.k_mid.resize(n - 1);
  b.i_mid.resize(n - 1);
  b.a_node.resize(n);
  b.a_mid.resize(n - 1);
  b.k_new.resize(n);

  for (int it = 1; it <= sweep.max_iter; ++it) {
    sol.iterations = it;
    ops.midpoints(k.data(), b.k_mid.data(), n);
    detail::sir_forward(k.data(), b.k_mid.data(), h, n, 1.0 - p.i0, p.i0,
                        s.data(), i.data());
    ops.midpoints(i.data(), b.i_mid.data(), n);
    ops.cost_series(i.data(), cp, b.a_node.data(), n);
    ops.cost_series(b.i_mid.data(), cp, b.a_mid.data(), n - 1);
    costates_individual_backward(i.data(), b.i_mid.data(), k.data(),
                                 b.k_mid.data(), b.a_node.data(),
                                 b.a_mid.data(), dis.neg_node.data(),
                                 dis.neg_mid.data(), h, n, vterm, vs.data(),
                                 vi.data());
    ops.control_rule(vs.data(), vi.data(), s.data(), i.data(), eps.data(),
                     dis.pos_node.data(), p.kappa_star, inv_two_beta,
                     b.k_new.data(), n);
    const double resid = ops.sup_abs_diff(b.k_new.data(), k.data(), n);
    const double denom = std::max(1.0, ops.sup_abs(k.data(), n));
    sol.residual = resid / denom;
    if (resid <= sweep.tol * denom) {
      sol.converged = true;
      break;
    }
    if (it == sweep.max_iter) break;  // keep state consistent with k
    ops.mix_clamp0(k.data(), b.k_new.data(), sweep.omega, k.data(), n);
  }

  sol.utility = utility(sol.traj, c, p.kappa_star);
  sol.clamped_fraction = clamped_fraction_of(k);
  sol.i_terminal = i.back();
  sol.tail_ok = sol.i_terminal < kTailThreshold;
  return sol;
}

IndividualSolution solve_best_response(const std::vector<double>& eps,
                                       const std::vector<double>& s_ex,
                                       const std::vector<double>& i_ex,
                                       const EpidemicParams& p,
                                       const CostProfile& c,
                                       const SweepSettings& sweep,
                                       const std::vector<double>* kappa_init) {
  p.validate();
  c.validate();
  sweep.validate();
  const std::size_t n = static_cast<std::size_t>(p.n_grid);
  if (eps.size() != n || s_ex.size() != n || i_ex.size() != n)
    throw std::invalid_argument("series lengths must match n_grid");

  const double h = p.dt();
  const auto& ops = kern::active_ops();
  const kern::CostParams cp = cost_params(c);

  IndividualSolution sol;
  sol.traj.t = linspace(p.t_f, p.n_grid);
  sol.traj.eps = eps;
  sol.traj.s = s_ex;
  sol.traj.i = i_ex;
  const DiscountTable dis = DiscountTable::build(c.f, sol.traj.t);
  const double vterm = terminal_costate_vi(c, dis);
  const double inv_two_beta = 1.0 / (2.0 * c.beta);

  std::vector<double>& kap = sol.traj.k;
  if (kappa_init) {
    kap = *kappa_init;
    for (double& v : kap) v = std::max(0.0, v);
  } else {
    kap.assign(n, p.kappa_star);
  }

  // exogenous series and their cost values never change across iterations
  std::vector<double> i_mid(n - 1), a_node(n), a_mid(n - 1);
  ops.midpoints(i_ex.data(), i_mid.data(), n);
  ops.cost_series(i_ex.data(), cp, a_node.data(), n);
  ops.cost_series(i_mid.data(), cp, a_mid.data(), n - 1);

  auto& vs = sol.traj.vs;
  auto& vi = sol.traj.vi;
  vs.resize(n);
  vi.resize(n);
  sol.psi_s.resize(n);
  sol.psi_i.resize(n);
  std::vector<double> kap_mid(n - 1), kap_new(n);

  for (int it = 1; it <= sweep.max_iter; ++it) {
    sol.iterations = it;
    ops.midpoints(kap.data(), kap_mid.data(), n);
    detail::psi_forward(kap.data(), kap_mid.data(), i_ex.data(), i_mid.data(),
                        h, n, 1.0 - p.i0, p.i0, sol.psi_s.data(),
                        sol.psi_i.data());
    costates_individual_backward(i_ex.data(), i_mid.data(), kap.data(),
                                 kap_mid.data(), a_node.data(), a_mid.data(),
                                 dis.neg_node.data(), dis.neg_mid.data(), h, n,
                                 vterm, vs.data(), vi.data());
    ops.control_rule(vs.data(), vi.data(), sol.psi_s.data(), i_ex.data(),
                     eps.data(), dis.pos_node.data(), p.kappa_star,
                     inv_two_beta, kap_new.data(), n);
    const double resid = ops.sup_abs_diff(kap_new.data(), kap.data(), n);
    const double denom = std::max(1.0, ops.sup_abs(kap.data(), n));
    sol.residual = resid / denom;
    if (resid <= sweep.tol * denom) {
      sol.converged = true;
      break;
    }
    if (it == sweep.max_iter) break;
    ops.mix_clamp0(kap.data(), kap_new.data(), sweep.omega, kap.data(), n);
  }

  sol.utility =
      utility_of(sol.traj.t, sol.psi_i, i_ex, kap, eps, c, p.kappa_star);
  sol.clamped_fraction = clamped_fraction_of(kap);
  sol.i_terminal = i_ex.back();
  sol.tail_ok = sol.i_terminal < kTailThreshold;
  return sol;
}

}  // namespace epigame
