#include "epigame/government.hpp"

#include <algorithm>
#include <cmath>

#include "epigame/dynamics.hpp"
#include "epigame/kernels.hpp"

namespace epigame {

using detail::DiscountTable;

const char* to_string(StartSet s) {
  switch (s) {
    case StartSet::Zero: return "zero";
    case StartSet::Warm: return "warm";
    default: return "both";
  }
}

namespace {

kern::CostParams cost_params(const CostProfile& c) {
  return {c.alpha0, c.alpha1, c.i_hc, c.sigma};
}

void check_finite(double a, double b, std::size_t j) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw SolverError(
        "government costate integration produced nonfinite values at node " +
        std::to_string(j));
}

// Backward RK4 of ls' = i L, li' = s L + src + li with
// L = -(li-ls)(kappa* + eps/2)
//     + (f_g^{-t} f^t / 2)(vi-vs) [ i s (beta_g f^t (vi-vs) - 2 f_g^t (li-ls)) + eps (gamma_g + beta_g) ].
struct GovStage {
  double s, i, eps, dv;   // dv = vi - vs of the inner problem
  double fpos, fgpos, dgneg, src;
};

struct GovRates {
  double dls, dli;
};

inline GovRates gov_rhs(double ls, double li, const GovStage& g,
                        double kappa_star, double beta_g, double gamma_g) {
  const double dl = li - ls;
  const double lam =
      -dl * (kappa_star + 0.5 * g.eps) +
      0.5 * g.dgneg * g.fpos * g.dv *
          (g.i * g.s * (beta_g * g.fpos * g.dv - 2.0 * g.fgpos * dl) +
           g.eps * (gamma_g + beta_g));
  return {g.i * lam, g.s * lam + g.src + li};
}

void costates_government_backward(const std::vector<GovStage>& node,
                                  const std::vector<GovStage>& mid, double h,
                                  double kappa_star, double beta_g,
                                  double gamma_g, double terminal_li,
                                  double* ls, double* li) {
  const std::size_t n = node.size();
  ls[n - 1] = 0.0;
  li[n - 1] = terminal_li;
  const double h6 = h / 6.0, h2 = 0.5 * h;
  for (std::size_t j = n - 1; j > 0; --j) {
    const double as = ls[j], ai = li[j];
    const GovRates d1 = gov_rhs(as, ai, node[j], kappa_star, beta_g, gamma_g);
    const GovRates d2 = gov_rhs(as - h2 * d1.dls, ai - h2 * d1.dli, mid[j - 1],
                                kappa_star, beta_g, gamma_g);
    const GovRates d3 = gov_rhs(as - h2 * d2.dls, ai - h2 * d2.dli, mid[j - 1],
                                kappa_star, beta_g, gamma_g);
    const GovRates d4 = gov_rhs(as - h * d3.dls, ai - h * d3.dli, node[j - 1],
                                kappa_star, beta_g, gamma_g);
    ls[j - 1] = as - h6 * (d1.dls + 2.0 * (d2.dls + d3.dls) + d4.dls);
    li[j - 1] = ai - h6 * (d1.dli + 2.0 * (d2.dli + d3.dli) + d4.dli);
    check_finite(ls[j - 1], li[j - 1], j - 1);
  }
}

// Assemble per-stage coefficient tables from the inner solution series.
void build_stages(const Trajectory& traj, const CostProfile& gc,
                  const DiscountTable& dg, const DiscountTable& di,
                  std::vector<GovStage>& node, std::vector<GovStage>& mid) {
  const auto& ops = kern::active_ops();
  const std::size_t n = traj.size();
  const kern::CostParams cp = cost_params(gc);

  std::vector<double> s_mid, i_mid, eps_mid, dv_node(n), dv_mid;
  for (std::size_t j = 0; j < n; ++j) dv_node[j] = traj.vi[j] - traj.vs[j];
  detail::midpoints(traj.s, s_mid);
  detail::midpoints(traj.i, i_mid);
  detail::midpoints(traj.eps, eps_mid);
  detail::midpoints(dv_node, dv_mid);

  std::vector<double> a(n), da(n);
  ops.cost_and_deriv_series(traj.i.data(), cp, a.data(), da.data(), n);
  node.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    node[j] = {traj.s[j], traj.i[j],        traj.eps[j],
               dv_node[j], di.pos_node[j],  dg.pos_node[j],
               dg.neg_node[j],
               dg.neg_node[j] * (a[j] + da[j] * traj.i[j])};
  }
  ops.cost_and_deriv_series(i_mid.data(), cp, a.data(), da.data(), n - 1);
  mid.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    mid[j] = {s_mid[j],  i_mid[j],       eps_mid[j],
              dv_mid[j], di.pos_mid[j],  dg.pos_mid[j],
              dg.neg_mid[j],
              dg.neg_mid[j] * (a[j] + da[j] * i_mid[j])};
  }
}

}  // namespace

double government_value(const Trajectory& traj,
                        const GovernmentPreferences& gp, double kappa_star) {
  const CostProfile& gc = gp.cost;
  const std::size_t n = traj.size();
  const double h = traj.t[1] - traj.t[0];
  const DiscountTable dg = DiscountTable::build(gc.f, traj.t);
  const auto& ops = kern::active_ops();
  std::vector<double> alpha(n), v(n);
  ops.cost_series(traj.i.data(), cost_params(gc), alpha.data(), n);
  for (std::size_t j = 0; j < n; ++j) {
    const double dk = traj.k[j] - kappa_star;
    v[j] = dg.neg_node[j] * (-alpha[j] * traj.i[j] - gc.beta * dk * dk -
                             gc.gamma * traj.eps[j] * dk);
  }
  const double salvage = -dg.neg_tf() * infection_cost(0.0, gc) *
                         traj.i.back() / (1.0 + dg.log_f);
  return ops.trapezoid(v.data(), h, n) + salvage;
}

void integrate_costates_government(Trajectory& traj, const EpidemicParams& p,
                                   double f_individual,
                                   const GovernmentPreferences& gp) {
  const std::size_t n = traj.size();
  const DiscountTable dg = DiscountTable::build(gp.cost.f, traj.t);
  const DiscountTable di = DiscountTable::build(f_individual, traj.t);
  std::vector<GovStage> node, mid;
  build_stages(traj, gp.cost, dg, di, node, mid);
  const double lterm =
      -dg.neg_tf() * infection_cost(0.0, gp.cost) / (1.0 + dg.log_f);
  traj.ls.resize(n);
  traj.li.resize(n);
  costates_government_backward(node, mid, p.dt(), p.kappa_star, gp.cost.beta,
                               gp.cost.gamma, lterm, traj.ls.data(),
                               traj.li.data());
}

double intervention_rule(double vs, double vi, double ls, double li, double s,
                         double i, double t, const GovernmentPreferences& gp,
                         double f_individual) {
  const double fpos = std::exp(t * std::log(f_individual));
  const double fgpos = std::exp(t * std::log(gp.cost.f));
  const double drive = fpos * (gp.cost.beta + gp.cost.gamma) * (vs - vi) -
                       fgpos * (ls - li);
  return i * s * drive / (gp.cost.beta + 2.0 * gp.cost.gamma);
}

namespace {

GovernmentStart run_start(const std::string& name,
                          const std::vector<double>& eps0,
                          const EpidemicParams& p, const CostProfile& c,
                          const GovernmentPreferences& gp,
                          const SweepSettings& outer,
                          const SweepSettings& inner, Trajectory& traj_out,
                          IndividualSolution& inner_out) {
  GovernmentStart st;
  st.name = name;
  const std::size_t n = static_cast<std::size_t>(p.n_grid);
  const auto& ops = kern::active_ops();
  const std::vector<double> t = linspace(p.t_f, p.n_grid);
  const DiscountTable dg = DiscountTable::build(gp.cost.f, t);
  const DiscountTable di = DiscountTable::build(c.f, t);
  const double lterm =
      -dg.neg_tf() * infection_cost(0.0, gp.cost) / (1.0 + dg.log_f);
  const double bg_plus_gg = gp.cost.beta + gp.cost.gamma;
  const double inv_bg_2gg = 1.0 / (gp.cost.beta + 2.0 * gp.cost.gamma);

  std::vector<double> eps = eps0;
  std::vector<double> k_guess(n, p.kappa_star);
  std::vector<double> eps_new(n);
  std::vector<GovStage> node, mid;
  IndividualSolution nash;
  Trajectory traj;

  try {
    for (int it = 1; it <= outer.max_iter; ++it) {
      st.iterations = it;
      nash = solve_nash(eps, p, c, inner, &k_guess);
      if (!nash.converged) {
        st.error = "inner Nash sweep did not converge (residual " +
                   std::to_string(nash.residual) + ")";
        break;
      }
      k_guess = nash.traj.k;
      traj = nash.traj;
      build_stages(traj, gp.cost, dg, di, node, mid);
      traj.ls.resize(n);
      traj.li.resize(n);
      costates_government_backward(node, mid, p.dt(), p.kappa_star,
                                   gp.cost.beta, gp.cost.gamma, lterm,
                                   traj.ls.data(), traj.li.data());
      ops.intervention_rule(traj.vs.data(), traj.vi.data(), traj.ls.data(),
                            traj.li.data(), traj.s.data(), traj.i.data(),
                            di.pos_node.data(), dg.pos_node.data(), bg_plus_gg,
                            inv_bg_2gg, eps_new.data(), n);
      const double resid = ops.sup_abs_diff(eps_new.data(), eps.data(), n);
      const double denom = std::max(1.0, ops.sup_abs(eps.data(), n));
      st.residual = resid / denom;
      if (resid <= outer.tol * denom) {
        st.converged = true;
        break;
      }
      if (it == outer.max_iter) break;
      ops.mix(eps.data(), eps_new.data(), outer.omega, eps.data(), n);
    }
  } catch (const SolverError& e) {
    st.error = e.what();
  }

  if (traj.size() == n && !traj.ls.empty()) {
    st.value = government_value(traj, gp, p.kappa_star);
    st.peak_i = peak_infected(traj.i);
    st.branch = st.peak_i > kBranchPeakFactor * gp.cost.i_hc
                    ? Branch::HighPeak
                    : Branch::ThresholdTracking;
    st.clamp_flagged = nash.clamped_fraction > 0.0;
    traj_out = std::move(traj);
    inner_out = std::move(nash);
  } else if (st.error.empty()) {
    st.error = "outer sweep produced no usable iterate";
  }
  return st;
}

}  // namespace

GovernmentSolution solve_government(const EpidemicParams& p,
                                    const CostProfile& c_individual,
                                    const GovernmentPreferences& gp,
                                    const SweepSettings& outer,
                                    const SweepSettings& inner,
                                    StartSet starts,
                                    const std::vector<double>* warm_eps) {
  p.validate();
  c_individual.validate();
  gp.validate();
  outer.validate();
  inner.validate();
  if (c_individual.beta != 1.0)
    throw std::invalid_argument(
        "government solve requires individual beta == 1 (utility units)");
  const std::size_t n = static_cast<std::size_t>(p.n_grid);

  std::vector<double> warm;
  const bool want_warm = starts != StartSet::Zero;
  if (want_warm) {
    if (warm_eps) {
      warm = *warm_eps;
      if (warm.size() != n)
        throw std::invalid_argument("warm_eps length must match n_grid");
    } else {
      warm = tracking_warm_start(p, c_individual, gp, outer, inner);
    }
  }

  GovernmentSolution sol;
  struct Candidate {
    Trajectory traj;
    IndividualSolution inner;
  };
  std::vector<Candidate> cands;

  auto run = [&](const std::string& name, const std::vector<double>& eps0) {
    Candidate cand;
    GovernmentStart st = run_start(name, eps0, p, c_individual, gp, outer,
                                   inner, cand.traj, cand.inner);
    sol.starts.push_back(st);
    cands.push_back(std::move(cand));
  };

  if (starts != StartSet::Warm)
    run("zero", std::vector<double>(n, 0.0));
  if (want_warm) run("warm", warm);

  int best = -1;
  for (std::size_t idx = 0; idx < sol.starts.size(); ++idx) {
    const GovernmentStart& st = sol.starts[idx];
    if (!st.converged) continue;
    if (best < 0 || st.value > sol.starts[static_cast<std::size_t>(best)].value)
      best = static_cast<int>(idx);
  }
  if (best < 0) {
    // total failure: report the most advanced attempt, converged = false
    for (std::size_t idx = 0; idx < sol.starts.size(); ++idx)
      if (sol.starts[idx].error.empty() &&
          (best < 0 || sol.starts[idx].value >
                           sol.starts[static_cast<std::size_t>(best)].value))
        best = static_cast<int>(idx);
  }
  if (best >= 0 && !cands[static_cast<std::size_t>(best)].traj.t.empty()) {
    const auto& st = sol.starts[static_cast<std::size_t>(best)];
    sol.traj = std::move(cands[static_cast<std::size_t>(best)].traj);
    sol.inner = std::move(cands[static_cast<std::size_t>(best)].inner);
    sol.value = st.value;
    sol.branch = st.branch;
    sol.iterations = st.iterations;
    sol.converged = st.converged;
    sol.residual = st.residual;
    sol.clamp_flagged = st.clamp_flagged;
    sol.i_terminal = sol.traj.i.back();
    sol.tail_ok = sol.i_terminal < kTailThreshold;
  }
  return sol;
}

std::vector<double> tracking_warm_start(const EpidemicParams& p,
                                        const CostProfile& c_individual,
                                        const GovernmentPreferences& gp,
                                        const SweepSettings& outer,
                                        const SweepSettings& inner,
                                        double anchor_alpha_g1) {
  GovernmentPreferences anchor = gp;
  anchor.cost.gamma = 0.0;
  anchor.cost.alpha1 = std::max(anchor_alpha_g1, gp.cost.alpha0);
  anchor.validate();

  GovernmentSolution sol =
      solve_government(p, c_individual, anchor, outer, inner, StartSet::Zero);
  if (sol.converged && sol.branch == Branch::ThresholdTracking)
    return sol.traj.eps;

  // The zero start fell into the high-peak basin (or failed): seed the outer
  // sweep from the individuals' own threshold-tracking Nash solution by
  // inverting the control rule at that solution.
  CostProfile c_track = c_individual;
  c_track.alpha0 = anchor.cost.alpha0;
  c_track.alpha1 = anchor.cost.alpha1;
  c_track.i_hc = anchor.cost.i_hc;
  c_track.sigma = anchor.cost.sigma;
  c_track.validate();
  const std::size_t n = static_cast<std::size_t>(p.n_grid);
  IndividualSolution nash =
      solve_nash(std::vector<double>(n, 0.0), p, c_track, inner);
  if (!nash.converged)
    throw SolverError("tracking warm start: threshold Nash did not converge");
  const DiscountTable di = DiscountTable::build(c_individual.f, nash.traj.t);
  std::vector<double> seed(n);
  for (std::size_t j = 0; j < n; ++j) {
    seed[j] = 2.0 * c_individual.beta * (nash.traj.k[j] - p.kappa_star) +
              di.pos_node[j] * (nash.traj.vs[j] - nash.traj.vi[j]) *
                  nash.traj.s[j] * nash.traj.i[j];
  }
  sol = solve_government(p, c_individual, anchor, outer, inner, StartSet::Warm,
                         &seed);
  if (sol.converged && sol.branch == Branch::ThresholdTracking)
    return sol.traj.eps;
  throw SolverError(
      "tracking warm start: could not reach the threshold-tracking branch at "
      "the anchor cost");
}

}  // namespace epigame
