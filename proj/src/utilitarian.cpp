#include "epigame/utilitarian.hpp"

#include <algorithm>
#include <cmath>

#include "epigame/dynamics.hpp"
#include "epigame/individual.hpp"
#include "epigame/kernels.hpp"

namespace epigame {

using detail::DiscountTable;

namespace {

kern::CostParams cost_params(const CostProfile& c) {
  return {c.alpha0, c.alpha1, c.i_hc, c.sigma};
}

void check_finite(double a, double b, std::size_t j) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw SolverError("costate integration produced nonfinite values at node " +
                      std::to_string(j));
}

// Backward RK4 of vs' = (vs-vi) k i, vi' = src + (vs-vi) k s + vi with
// src = f^{-t} [alpha(i) + alpha'(i) i] precomputed at nodes and midpoints.
void costates_utilitarian_backward(const double* i_node, const double* i_mid,
                                   const double* s_node, const double* s_mid,
                                   const double* k_node, const double* k_mid,
                                   const double* src_node,
                                   const double* src_mid, double h,
                                   std::size_t n, double terminal_vi,
                                   double* vs, double* vi) {
  vs[n - 1] = 0.0;
  vi[n - 1] = terminal_vi;
  const double h6 = h / 6.0, h2 = 0.5 * h;
  for (std::size_t j = n - 1; j > 0; --j) {
    const double as = vs[j], ai = vi[j];
    const double ki1 = k_node[j] * i_node[j], ks1 = k_node[j] * s_node[j];
    const double kim = k_mid[j - 1] * i_mid[j - 1],
                 ksm = k_mid[j - 1] * s_mid[j - 1];
    const double ki4 = k_node[j - 1] * i_node[j - 1],
                 ks4 = k_node[j - 1] * s_node[j - 1];
    const double q1 = src_node[j], qm = src_mid[j - 1], q4 = src_node[j - 1];

    const double d1s = (as - ai) * ki1;
    const double d1i = q1 + (as - ai) * ks1 + ai;
    const double y2s = as - h2 * d1s, y2i = ai - h2 * d1i;
    const double d2s = (y2s - y2i) * kim;
    const double d2i = qm + (y2s - y2i) * ksm + y2i;
    const double y3s = as - h2 * d2s, y3i = ai - h2 * d2i;
    const double d3s = (y3s - y3i) * kim;
    const double d3i = qm + (y3s - y3i) * ksm + y3i;
    const double y4s = as - h * d3s, y4i = ai - h * d3i;
    const double d4s = (y4s - y4i) * ki4;
    const double d4i = q4 + (y4s - y4i) * ks4 + y4i;

    vs[j - 1] = as - h6 * (d1s + 2.0 * (d2s + d3s) + d4s);
    vi[j - 1] = ai - h6 * (d1i + 2.0 * (d2i + d3i) + d4i);
    check_finite(vs[j - 1], vi[j - 1], j - 1);
  }
}

// src = f^{-t} (alpha + alpha' i) at nodes and midpoints
void build_sources(const std::vector<double>& i_node,
                   const std::vector<double>& i_mid, const CostProfile& c,
                   const DiscountTable& dis, std::vector<double>& src_node,
                   std::vector<double>& src_mid, std::vector<double>& scratch_a,
                   std::vector<double>& scratch_da) {
  const auto& ops = kern::active_ops();
  const kern::CostParams cp = cost_params(c);
  const std::size_t n = i_node.size();
  scratch_a.resize(n);
  scratch_da.resize(n);
  ops.cost_and_deriv_series(i_node.data(), cp, scratch_a.data(),
                            scratch_da.data(), n);
  src_node.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    src_node[j] =
        dis.neg_node[j] * (scratch_a[j] + scratch_da[j] * i_node[j]);
  ops.cost_and_deriv_series(i_mid.data(), cp, scratch_a.data(),
                            scratch_da.data(), n - 1);
  src_mid.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j)
    src_mid[j] = dis.neg_mid[j] * (scratch_a[j] + scratch_da[j] * i_mid[j]);
}

}  // namespace

void integrate_costates_utilitarian(Trajectory& traj, const EpidemicParams& p,
                                    const CostProfile& c) {
  const std::size_t n = traj.size();
  const double h = p.dt();
  const DiscountTable dis = DiscountTable::build(c.f, traj.t);
  std::vector<double> k_mid, i_mid, s_mid, src_node, src_mid, sa, sda;
  detail::midpoints(traj.k, k_mid);
  detail::midpoints(traj.i, i_mid);
  detail::midpoints(traj.s, s_mid);
  build_sources(traj.i, i_mid, c, dis, src_node, src_mid, sa, sda);
  const double vterm =
      -dis.neg_tf() * infection_cost(0.0, c) / (1.0 + dis.log_f);
  traj.vs.resize(n);
  traj.vi.resize(n);
  costates_utilitarian_backward(traj.i.data(), i_mid.data(), traj.s.data(),
                                s_mid.data(), traj.k.data(), k_mid.data(),
                                src_node.data(), src_mid.data(), h, n, vterm,
                                traj.vs.data(), traj.vi.data());
}

UtilitarianSolution solve_utilitarian(const std::vector<double>& eps,
                                      const EpidemicParams& p,
                                      const CostProfile& c,
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

  UtilitarianSolution sol;
  sol.traj.t = linspace(p.t_f, p.n_grid);
  sol.traj.eps = eps;
  const DiscountTable dis = DiscountTable::build(c.f, sol.traj.t);
  const double vterm =
      -dis.neg_tf() * infection_cost(0.0, c) / (1.0 + dis.log_f);
  const double inv_two_beta = 1.0 / (2.0 * c.beta);

  std::vector<double>& k = sol.traj.k;
  if (k_init) {
    k = *k_init;
    if (k.size() != n)
      throw std::invalid_argument("k_init length must match n_grid");
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
  std::vector<double> k_mid(n - 1), i_mid(n - 1), s_mid(n - 1), src_node,
      src_mid, sa, sda, k_new(n);

  for (int it = 1; it <= sweep.max_iter; ++it) {
    sol.iterations = it;
    ops.midpoints(k.data(), k_mid.data(), n);
    detail::sir_forward(k.data(), k_mid.data(), h, n, 1.0 - p.i0, p.i0,
                        s.data(), i.data());
    ops.midpoints(i.data(), i_mid.data(), n);
    ops.midpoints(s.data(), s_mid.data(), n);
    build_sources(i, i_mid, c, dis, src_node, src_mid, sa, sda);
    costates_utilitarian_backward(i.data(), i_mid.data(), s.data(),
                                  s_mid.data(), k.data(), k_mid.data(),
                                  src_node.data(), src_mid.data(), h, n, vterm,
                                  vs.data(), vi.data());
    ops.control_rule(vs.data(), vi.data(), s.data(), i.data(), eps.data(),
                     dis.pos_node.data(), p.kappa_star, inv_two_beta,
                     k_new.data(), n);
    const double resid = ops.sup_abs_diff(k_new.data(), k.data(), n);
    const double denom = std::max(1.0, ops.sup_abs(k.data(), n));
    sol.residual = resid / denom;
    if (resid <= sweep.tol * denom) {
      sol.converged = true;
      break;
    }
    if (it == sweep.max_iter) break;
    ops.mix_clamp0(k.data(), k_new.data(), sweep.omega, k.data(), n);
  }

  sol.utility = utility(sol.traj, c, p.kappa_star);
  std::size_t clamped = 0;
  for (double v : k)
    if (v == 0.0) ++clamped;
  sol.clamped_fraction = static_cast<double>(clamped) / static_cast<double>(n);
  sol.i_terminal = i.back();
  sol.tail_ok = sol.i_terminal < kTailThreshold;
  return sol;
}

std::vector<double> population_hamiltonian(const Trajectory& traj,
                                           const CostProfile& c,
                                           double kappa_star) {
  const std::size_t n = traj.size();
  const DiscountTable dis = DiscountTable::build(c.f, traj.t);
  std::vector<double> alpha(n), hp(n);
  kern::active_ops().cost_series(traj.i.data(), cost_params(c), alpha.data(),
                                 n);
  for (std::size_t j = 0; j < n; ++j) {
    const double dk = traj.k[j] - kappa_star;
    const double u = dis.neg_node[j] * (-alpha[j] * traj.i[j] -
                                        c.beta * dk * dk + dk * traj.eps[j]);
    const double flow = traj.k[j] * traj.s[j] * traj.i[j];
    hp[j] = u - (traj.vs[j] - traj.vi[j]) * flow - traj.vi[j] * traj.i[j];
  }
  return hp;
}

double hamiltonian_drift(const Trajectory& traj, const CostProfile& c,
                         double kappa_star) {
  const std::size_t n = traj.size();
  const DiscountTable dis = DiscountTable::build(c.f, traj.t);
  std::vector<double> alpha(n);
  kern::active_ops().cost_series(traj.i.data(), cost_params(c), alpha.data(),
                                 n);
  const std::vector<double> hp = population_hamiltonian(traj, c, kappa_star);
  double lo = hp[0], hi = hp[0], scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    lo = std::min(lo, hp[j]);
    hi = std::max(hi, hp[j]);
    const double dk = traj.k[j] - kappa_star;
    const double u = dis.neg_node[j] * (-alpha[j] * traj.i[j] -
                                        c.beta * dk * dk + dk * traj.eps[j]);
    const double flow = traj.k[j] * traj.s[j] * traj.i[j];
    const double terms = std::fabs(u) +
                         std::fabs((traj.vs[j] - traj.vi[j]) * flow) +
                         std::fabs(traj.vi[j] * traj.i[j]);
    scale = std::max(scale, terms);
  }
  return scale > 0.0 ? (hi - lo) / scale : 0.0;
}

}  // namespace epigame
