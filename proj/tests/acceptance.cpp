// Acceptance suite: one check block per criterion, each printing a single
// [PASS]/[FAIL] line. Run all with no arguments or one block with --only N.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "epigame/dynamics.hpp"
#include "epigame/government.hpp"
#include "epigame/individual.hpp"
#include "epigame/scenario.hpp"
#include "epigame/utilitarian.hpp"
#include "test_helpers.hpp"

using namespace epigame;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  g_notes.emplace_back(buf);
}

void report(int crit, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", crit,
              what.c_str());
  for (const auto& n : g_notes) std::printf("         %s\n", n.c_str());
  g_notes.clear();
  if (!ok) ++g_failures;
}

struct Check {
  bool ok = true;
  void require(bool cond, const char* what) {
    if (!cond) {
      ok = false;
      note("failed: %s", what);
    }
  }
};

CostProfile constant_cost(double alpha) {
  return CostProfile{alpha, alpha, 0.1, 300.0, 1.0, 1.0, 0.0};
}

std::vector<double> zeros_of(const EpidemicParams& p) {
  return std::vector<double>(static_cast<std::size_t>(p.n_grid), 0.0);
}

// ---------------------------------------------------------------------------

void criterion_1() {
  Check c;
  const EpidemicParams p{};
  Trajectory tr = integrate_sir(p.kappa_star, p);
  const double peak = peak_infected(tr.i);
  const double peak_ref = testutil::peak_oracle(p.kappa_star, p.i0);
  const double sinf_ref = testutil::final_size_oracle(p.kappa_star, 1.0 - p.i0);
  note("peak_i = %.6f (oracle %.6f), s_inf = %.6f (oracle %.6f)", peak,
       peak_ref, tr.s.back(), sinf_ref);
  c.require(std::fabs(peak - peak_ref) <= 1e-3, "peak within 1e-3 of oracle");
  c.require(std::fabs(peak - 0.4034) <= 1e-3, "peak = 0.4034 +/- 0.001");
  c.require(std::fabs(tr.s.back() - sinf_ref) <= 1e-3,
            "s_inf within 1e-3 of final-size oracle");
  c.require(std::fabs(tr.s.back() - 0.0198) <= 1e-3, "s_inf = 0.0198 +/- 0.001");
  c.require(std::fabs(peak - 0.4) <= 0.05, "peak roughly 0.4");
  report(1, c.ok, "baseline epidemic against conserved-quantity and "
                  "final-size oracles");
}

void criterion_2() {
  Check c;
  const EpidemicParams p{};
  const CostProfile cost = constant_cost(400.0);
  IndividualSolution sol = solve_nash(zeros_of(p), p, cost, SweepSettings{});
  c.require(sol.converged, "Nash sweep converged");

  // stationarity on the unclamped set
  const std::vector<double> grad = control_gradient(sol.traj, cost, p.kappa_star);
  double worst = 0.0;
  for (std::size_t j = 0; j < grad.size(); ++j)
    if (sol.traj.k[j] > 0.0) worst = std::max(worst, std::fabs(grad[j]));
  note("max |dH/dk| off the clamp = %.3g", worst);
  c.require(worst < 1e-6, "|dH/dk| < 1e-6 wherever k > 0");

  // independent direct maximization over a 50-node control grid
  testutil::DirectUtility eval{&sol.traj.t, &sol.traj.i, cost, p.kappa_star,
                               p.i0};
  std::vector<double> nodes(50, p.kappa_star);
  auto eval_nodes = [&](const std::vector<double>& nd) {
    return eval(testutil::lerp_nodes(nd, p.t_f, sol.traj.t.size()));
  };
  const double direct =
      testutil::coordinate_ascent(nodes, 0.0, 2.0 * p.kappa_star, eval_nodes);
  note("U_nash = %.6f, direct 50-node maximum = %.6f", sol.utility, direct);
  c.require(std::fabs(sol.utility - direct) <= 0.01 * std::fabs(direct),
            "utility within 1% of the direct oracle");

  Trajectory base = integrate_sir(p.kappa_star, p);
  c.require(peak_infected(sol.traj.i) < peak_infected(base.i),
            "peak below baseline");
  c.require(duration_above(sol.traj.t, sol.traj.i) >
                duration_above(base.t, base.i),
            "duration above baseline");
  report(2, c.ok, "Nash equilibrium at constant alpha = 400");
}

void criterion_3() {
  Check c;
  const EpidemicParams p{};
  const CostProfile cost = constant_cost(400.0);
  UtilitarianSolution coop =
      solve_utilitarian(zeros_of(p), p, cost, SweepSettings{});
  IndividualSolution nash = solve_nash(zeros_of(p), p, cost, SweepSettings{});
  c.require(coop.converged && nash.converged, "both solves converged");
  const double up_nash = utility(nash.traj, cost, p.kappa_star);
  note("U_p(utilitarian) = %.6f, U_p(nash) = %.6f", coop.utility, up_nash);
  c.require(coop.utility >= up_nash + 1e-8 * std::fabs(coop.utility),
            "U_p(utilitarian) >= U_p(nash) with margin beyond tolerance");
  const double drift = hamiltonian_drift(coop.traj, cost, p.kappa_star);
  note("H_p relative drift = %.3g", drift);
  c.require(drift < 1e-4, "H_p drift < 1e-4 at f = 1");
  report(3, c.ok, "utilitarian optimum dominates the Nash equilibrium");
}

void criterion_4() {
  Check c;
  const EpidemicParams p{};
  const CostProfile cost = constant_cost(400.0);
  GovernmentPreferences gp;
  gp.cost = cost;  // aligned, gamma_g = 0

  UtilitarianSolution coop =
      solve_utilitarian(zeros_of(p), p, cost, SweepSettings{});
  c.require(coop.converged, "utilitarian reference converged");

  GovernmentSolution gov =
      solve_government(p, cost, gp, SweepSettings::outer_defaults(),
                       SweepSettings{}, StartSet::Zero);
  c.require(gov.converged, "nested government solve converged");

  double dk = 0.0;
  for (std::size_t j = 0; j < gov.traj.size(); ++j)
    dk = std::max(dk, std::fabs(gov.traj.k[j] - coop.traj.k[j]));
  note("sup|k_gov - k_util| = %.3g", dk);
  c.require(dk < 1e-3, "incentivized equilibrium matches utilitarian (< 1e-3)");

  const std::vector<double>& e = gov.traj.eps;
  double emax = 0.0;
  for (double v : e) emax = std::max(emax, std::fabs(v));
  std::size_t first = 0, last = e.size() - 1;
  const double tiny = 1e-6 * emax;
  while (first < e.size() && std::fabs(e[first]) <= tiny) ++first;
  while (last > 0 && std::fabs(e[last]) <= tiny) --last;
  c.require(first < last && e[first] > 0.0 && e[last] < 0.0,
            "eps positive early, negative late");

  // costly intervention flattens behaviour over the epidemic window and
  // still beats the no-intervention equilibrium on total cost
  GovernmentPreferences costly = gp;
  costly.cost.gamma = 0.5;
  GovernmentSolution gov_c =
      solve_government(p, cost, costly, SweepSettings::outer_defaults(),
                       SweepSettings{}, StartSet::Zero);
  c.require(gov_c.converged, "costly government solve converged");
  auto k_variance = [](const Trajectory& tr) {
    double w = 0.0, mean = 0.0;
    for (std::size_t j = 0; j < tr.size(); ++j)
      if (tr.i[j] > kDurationThreshold) {
        mean += tr.k[j];
        w += 1.0;
      }
    mean /= w;
    double var = 0.0;
    for (std::size_t j = 0; j < tr.size(); ++j)
      if (tr.i[j] > kDurationThreshold) {
        const double d = tr.k[j] - mean;
        var += d * d;
      }
    return var / w;
  };
  const double var_free = k_variance(gov.traj);
  const double var_costly = k_variance(gov_c.traj);
  note("var(k) free = %.4g, costly = %.4g", var_free, var_costly);
  c.require(var_costly < var_free,
            "costly intervention varies behaviour less over time");

  IndividualSolution nash = solve_nash(zeros_of(p), p, cost, SweepSettings{});
  note("-V(costly) = %.4f, -U(nash) = %.4f", -gov_c.value, -nash.utility);
  c.require(-gov_c.value < -nash.utility,
            "costly intervention still cheaper than no intervention");
  report(4, c.ok, "cost-free aligned government targets the utilitarian "
                  "optimum");
}

void criterion_5() {
  Check c;
  const EpidemicParams p{};
  ScenarioSpec spec;
  spec.role = Role::Nash;
  spec.epidemic = p;
  spec.individual_cost = CostProfile{100.0, 400.0, 0.1, 300.0, 1.0, 1.0, 0.0};
  spec.scan = ScanAxis{"alpha1", log_spaced(100.0, 800.0, 25)};
  ScanResult scan = run_scan(spec, 0);

  bool all_ok = true;
  double prev = 1.0;
  bool monotone = true;
  for (const auto& pt : scan.points) {
    all_ok = all_ok && pt.ok;
    if (pt.ok) {
      if (pt.metrics.peak_i > prev + 1e-6) monotone = false;
      prev = pt.metrics.peak_i;
    }
  }
  c.require(all_ok, "every scan point converged");
  c.require(monotone, "peak_i nonincreasing in alpha1");

  // continuity: no adjacent relative jump beyond the scan resolution
  double worst_jump = 0.0;
  for (std::size_t j = 0; j + 1 < scan.points.size(); ++j) {
    const double a = scan.points[j].metrics.peak_i;
    const double b = scan.points[j + 1].metrics.peak_i;
    worst_jump = std::max(worst_jump, std::fabs(a - b) / std::max(a, b));
  }
  note("largest adjacent relative peak change = %.3g", worst_jump);
  c.require(worst_jump < 0.5, "peak_i(alpha1) continuous (no sharp switch)");

  const double i_hc = spec.individual_cost.i_hc;
  IndividualSolution at400 =
      solve_nash(zeros_of(p), p,
                 CostProfile{100.0, 400.0, 0.1, 300.0, 1.0, 1.0, 0.0},
                 SweepSettings{});
  c.require(at400.converged, "alpha1 = 400 solve converged");
  const double peak400 = peak_infected(at400.traj.i);
  note("peak at alpha1 = 400: %.4f (threshold %.3f)", peak400, i_hc);
  c.require(peak400 <= 1.2 * i_hc, "alpha1 = 400 tracks the threshold");

  // first alpha1 whose peak meets the threshold (within the same 20% margin)
  double meet = std::numeric_limits<double>::quiet_NaN();
  for (const auto& pt : scan.points)
    if (pt.ok && pt.metrics.peak_i <= 1.2 * i_hc) {
      meet = pt.value;
      break;
    }
  note("peak first meets i_hc at alpha1 = %.1f", meet);
  c.require(std::isfinite(meet) && meet >= 200.0 && meet <= 300.0,
            "threshold first met within [2 alpha0, 3 alpha0]");
  report(5, c.ok, "Nash healthcare-threshold scan (i_hc = 0.1)");
}

void criterion_6() {
  Check c;
  const Preset* pf = find_preset("fig4-gov-scan-free");
  const Preset* pc = find_preset("fig4-gov-scan-costly");
  if (!pf || !pc) {
    c.require(false, "presets exist");
    report(6, c.ok, "government threshold scan");
    return;
  }

  auto scan_checks = [&](const ScanResult& scan, const char* label,
                         double& crossover_mid) {
    bool all_converged = true;
    bool two_optima = true;
    int value_crossings = 0;
    double prev_gap = 0.0;
    bool have_prev_gap = false;
    double sharpest_drop = 0.0;

    for (std::size_t j = 0; j < scan.points.size(); ++j) {
      const auto& pt = scan.points[j];
      if (!pt.ok || pt.starts.size() != 2 || !pt.starts[0].converged ||
          !pt.starts[1].converged) {
        all_converged = false;
        continue;
      }
      // distinct local optima: the two starts land on different branches
      if (!pt.starts[0].branch || !pt.starts[1].branch ||
          *pt.starts[0].branch == *pt.starts[1].branch)
        two_optima = false;
      const double gap = pt.starts[0].value - pt.starts[1].value;
      if (have_prev_gap && gap * prev_gap < 0.0) ++value_crossings;
      if (gap != 0.0) {
        prev_gap = gap;
        have_prev_gap = true;
      }
      if (j > 0 && scan.points[j - 1].ok) {
        const double a = scan.points[j - 1].metrics.peak_i;
        const double b = pt.metrics.peak_i;
        if (a > 0.0) sharpest_drop = std::max(sharpest_drop, (a - b) / a);
      }
    }
    note("%s: converged everywhere = %d, two optima everywhere = %d, value "
         "crossings = %d, sharpest peak drop = %.0f%%",
         label, all_converged ? 1 : 0, two_optima ? 1 : 0, value_crossings,
         100.0 * sharpest_drop);
    c.require(all_converged, "both starts converge at every scan point");
    c.require(two_optima, "exactly two distinct local optima at every point");
    c.require(value_crossings == 1,
              "objective curves of the two branches cross exactly once");
    c.require(sharpest_drop > 0.5,
              "peak_i drops discontinuously (> 50%) at the switch");
    c.require(scan.crossover.has_value(), "crossover interval detected");
    crossover_mid = scan.crossover
                        ? std::sqrt(scan.crossover->lo * scan.crossover->hi)
                        : std::numeric_limits<double>::quiet_NaN();
    if (scan.crossover)
      note("%s: crossover inside [%.1f, %.1f]", label, scan.crossover->lo,
           scan.crossover->hi);
  };

  double cross_free = 0.0, cross_costly = 0.0;
  ScanResult sf = run_scan(pf->spec, 0);
  scan_checks(sf, "gamma_g = 0", cross_free);
  ScanResult sc = run_scan(pc->spec, 0);
  scan_checks(sc, "gamma_g = 0.5", cross_costly);
  note("crossover alpha_g1: free %.1f vs costly %.1f", cross_free,
       cross_costly);
  c.require(cross_free < cross_costly,
            "cost-free crossover at strictly smaller alpha_g1");
  report(6, c.ok, "government threshold scan: sharp policy switch");
}

void criterion_7() {
  Check c;
  const EpidemicParams p{};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double alpha : {100.0, 200.0, 400.0, 800.0}) {
    IndividualSolution sol =
        solve_nash(zeros_of(p), p, constant_cost(alpha), SweepSettings{});
    c.require(sol.converged, "Nash solve converged");
    const double ratio = -sol.utility / alpha;
    note("alpha = %.0f: -U/alpha = %.4f", alpha, ratio);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double mean = 0.5 * (lo + hi);
  note("spread = %.1f%% of the midrange", 100.0 * (hi - lo) / mean);
  c.require(hi - lo <= 0.2 * mean, "-U/alpha constant within +/-10%");
  report(7, c.ok, "constant-cost Nash economics");
}

void criterion_8() {
  Check c;
  const EpidemicParams p{};

  // SIR admissibility under random admissible behaviours
  {
    auto g = testutil::rng(3);
    std::uniform_real_distribution<double> uk(0.0, 8.0);
    EpidemicParams q = p;
    q.n_grid = 2001;
    q.i0 = 1e-4;
    bool ok = true;
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> nodes(9);
      for (double& v : nodes) v = uk(g);
      Trajectory tr = integrate_sir(
          testutil::lerp_nodes(nodes, q.t_f, static_cast<std::size_t>(q.n_grid)),
          q);
      for (std::size_t j = 0; j < tr.size(); ++j) {
        ok = ok && tr.s[j] >= -1e-12 && tr.i[j] >= -1e-12 &&
             tr.s[j] + tr.i[j] <= 1.0 + 1e-12;
        if (j > 0) ok = ok && tr.s[j] <= tr.s[j - 1] + 1e-15;
      }
    }
    c.require(ok, "SIR conservation and monotonicity invariants");
  }

  // adjoint gradient vs central finite differences
  {
    auto g = testutil::rng(17);
    const std::size_t n = static_cast<std::size_t>(p.n_grid);
    Trajectory base = integrate_sir(p.kappa_star, p);
    const CostProfile cost{100.0, 400.0, 0.1, 300.0, 1.0, 1.0, 0.0};
    std::vector<double> kap(n), eps(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      kap[j] =
          p.kappa_star * (0.7 + 0.2 * std::sin(2.0 * M_PI * base.t[j] / 50.0));
    Trajectory tr;
    tr.t = base.t;
    tr.s = base.s;
    tr.i = base.i;
    tr.k = kap;
    tr.eps = eps;
    integrate_costates_individual(tr, p, cost);

    std::vector<double> i_mid(n - 1), ps(n), pi(n);
    for (std::size_t j = 0; j + 1 < n; ++j)
      i_mid[j] = 0.5 * (base.i[j] + base.i[j + 1]);
    auto psi_util = [&](const std::vector<double>& kk) {
      std::vector<double> km(n - 1);
      for (std::size_t j = 0; j + 1 < n; ++j)
        km[j] = 0.5 * (kk[j] + kk[j + 1]);
      detail::psi_forward(kk.data(), km.data(), base.i.data(), i_mid.data(),
                          p.dt(), n, 1.0 - p.i0, p.i0, ps.data(), pi.data());
      return utility_of(base.t, pi, base.i, kk, eps, cost, p.kappa_star);
    };
    psi_util(kap);
    const std::vector<double> grad = control_gradient(
        base.t, ps, base.i, kap, eps, tr.vs, tr.vi, cost, p.kappa_star);
    bool ok = true;
    for (int rep = 0; rep < 5; ++rep) {
      const std::vector<double> bump = testutil::random_bump(g, base.t, 1.0);
      const double h = 1e-5;
      std::vector<double> up = kap, dn = kap;
      for (std::size_t j = 0; j < n; ++j) {
        up[j] += h * bump[j];
        dn[j] -= h * bump[j];
      }
      const double fd = (psi_util(up) - psi_util(dn)) / (2.0 * h);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        acc += ((j == 0 || j + 1 == n) ? 0.5 : 1.0) * grad[j] * bump[j];
      const double analytic = acc * p.dt();
      ok = ok && std::fabs(fd - analytic) <= 1e-4 * std::fabs(analytic);
    }
    c.require(ok, "adjoint gradient within 1e-4 of finite differences");
  }

  // Nash defection resistance
  {
    auto g = testutil::rng(23);
    const CostProfile cost = constant_cost(400.0);
    IndividualSolution sol = solve_nash(zeros_of(p), p, cost, SweepSettings{});
    c.require(sol.converged, "Nash solve converged");
    const std::size_t n = sol.traj.size();
    std::vector<double> i_mid(n - 1), ps(n), pi(n);
    for (std::size_t j = 0; j + 1 < n; ++j)
      i_mid[j] = 0.5 * (sol.traj.i[j] + sol.traj.i[j + 1]);
    auto response_utility = [&](const std::vector<double>& kk) {
      std::vector<double> km(n - 1);
      for (std::size_t j = 0; j + 1 < n; ++j)
        km[j] = 0.5 * (kk[j] + kk[j + 1]);
      detail::psi_forward(kk.data(), km.data(), sol.traj.i.data(),
                          i_mid.data(), p.dt(), n, 1.0 - p.i0, p.i0, ps.data(),
                          pi.data());
      return utility_of(sol.traj.t, pi, sol.traj.i, kk, sol.traj.eps, cost,
                        p.kappa_star);
    };
    const double u_star = response_utility(sol.traj.k);
    const std::vector<double> grad =
        control_gradient(sol.traj, cost, p.kappa_star);
    double gmax = 0.0;
    for (double v : grad) gmax = std::max(gmax, std::fabs(v));
    bool ok = true;
    for (int rep = 0; rep < 20; ++rep) {
      const std::vector<double> bump =
          testutil::random_bump(g, sol.traj.t, 0.5);
      std::vector<double> kk = sol.traj.k;
      double l1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        kk[j] = std::max(0.0, kk[j] + bump[j]);
        l1 += std::fabs(kk[j] - sol.traj.k[j]) * p.dt();
      }
      ok = ok && response_utility(kk) <=
                     u_star + gmax * l1 + 1e-9 * std::fabs(u_star);
    }
    c.require(ok, "no profitable defection among 20 random perturbations");
  }

  // determinism of exports
  {
    ScenarioSpec spec;
    spec.role = Role::Nash;
    spec.epidemic.n_grid = 1001;
    spec.individual_cost = constant_cost(400.0);
    ScenarioResult r1 = run_scenario(spec);
    const std::string path = "acceptance_roundtrip.json";
    export_result_json(r1, path);
    ScenarioResult r2 = run_scenario(load_spec(path));
    std::remove(path.c_str());
    c.require(r1.metrics.peak_i == r2.metrics.peak_i &&
                  r1.metrics.total_cases == r2.metrics.total_cases &&
                  r1.metrics.duration == r2.metrics.duration &&
                  r1.metrics.total_cost == r2.metrics.total_cost &&
                  r1.objective == r2.objective,
              "export round trip reproduces metrics bit-identically");
  }

  report(8, c.ok, "property suite (conservation, adjoint, defection, "
                  "determinism)");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc)
      only = std::atoi(argv[++a]);
  }
  using Fn = void (*)();
  const Fn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                         criterion_5, criterion_6, criterion_7, criterion_8};
  for (int k = 1; k <= 8; ++k) {
    if (only != 0 && only != k) continue;
    criteria[k - 1]();
  }
  return g_failures == 0 ? 0 : 1;
}
