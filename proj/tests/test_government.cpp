#include <doctest.h>

#include <cmath>

#include "epigame/dynamics.hpp"
#include "epigame/government.hpp"
#include "epigame/individual.hpp"
#include "epigame/utilitarian.hpp"
#include "test_helpers.hpp"

using namespace epigame;

namespace {

CostProfile constant_cost(double alpha) {
  return CostProfile{alpha, alpha, 0.1, 300.0, 1.0, 1.0, 0.0};
}

GovernmentPreferences aligned(double alpha, double gamma_g) {
  GovernmentPreferences g;
  g.cost = constant_cost(alpha);
  g.cost.gamma = gamma_g;
  return g;
}

std::vector<double> zeros(const EpidemicParams& p) {
  return std::vector<double>(static_cast<std::size_t>(p.n_grid), 0.0);
}

}  // namespace

TEST_SUITE("government") {

TEST_CASE("intervention rule: algebraic reductions") {
  GovernmentPreferences gp = aligned(400.0, 0.0);
  CHECK(intervention_rule(3.0, -2.0, 1.0, -1.5, 0.8, 0.0, 5.0, gp, 1.0) == 0.0);

  auto g = testutil::rng(31);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double vs = u(g), vi = u(g), ls = u(g), li = u(g);
    const double s = 0.5 + 0.1 * u(g) / 5.0, i = 0.05 + 0.01 * u(g) / 5.0;
    const double expect = i * s * ((vs - vi) - (ls - li));
    CHECK(intervention_rule(vs, vi, ls, li, s, i, 7.0, gp, 1.0) ==
          doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("government value: zero when nothing happens, U_p when aligned") {
  EpidemicParams p;
  p.n_grid = 2001;
  Trajectory tr = integrate_sir(p.kappa_star, p);

  GovernmentPreferences free_gov = aligned(0.0, 0.0);
  CHECK(government_value(tr, free_gov, p.kappa_star) == 0.0);

  // gamma_g = 0 with aligned preferences and eps = 0 is the population utility
  GovernmentPreferences gp = aligned(400.0, 0.0);
  const double v = government_value(tr, gp, p.kappa_star);
  const double up = utility(tr, gp.cost, p.kappa_star);
  CHECK(v == doctest::Approx(up).epsilon(1e-15));
}

TEST_CASE("government costates: zero sources give zero values") {
  EpidemicParams p;
  p.n_grid = 2001;
  const std::size_t n = static_cast<std::size_t>(p.n_grid);
  Trajectory tr = integrate_sir(p.kappa_star, p);
  tr.vs.assign(n, 0.7);  // vs == vi kills the inner-value coupling
  tr.vi.assign(n, 0.7);
  GovernmentPreferences gp = aligned(0.0, 0.0);
  integrate_costates_government(tr, p, 1.0, gp);
  for (std::size_t j = 0; j < n; j += 200) {
    CHECK(tr.ls[j] == 0.0);
    CHECK(tr.li[j] == 0.0);
  }
}

TEST_CASE("aligned cost-free government reproduces the utilitarian optimum") {
  EpidemicParams p;
  p.n_grid = 2001;
  CostProfile c = constant_cost(400.0);
  GovernmentPreferences gp = aligned(400.0, 0.0);

  UtilitarianSolution coop = solve_utilitarian(zeros(p), p, c, SweepSettings{});
  REQUIRE(coop.converged);

  GovernmentSolution gov = solve_government(p, c, gp, SweepSettings::outer_defaults(),
                                            SweepSettings{}, StartSet::Zero);
  REQUIRE(gov.converged);

  double dk = 0.0;
  for (std::size_t j = 0; j < gov.traj.size(); ++j)
    dk = std::max(dk, std::fabs(gov.traj.k[j] - coop.traj.k[j]));
  CHECK(dk < 5e-3);  // coarse grid; the acceptance suite pins 1e-3 at default

  // infection is a liability at the epidemic start
  CHECK(gov.traj.li.front() < 0.0);
  for (double v : gov.traj.li) CHECK(std::isfinite(v));

  // value agrees with the utilitarian population utility
  CHECK(gov.value == doctest::Approx(coop.utility).epsilon(1e-4));

  // intervention initially encourages activity, later distancing
  const std::vector<double>& e = gov.traj.eps;
  double emax = 0.0;
  for (double v : e) emax = std::max(emax, std::fabs(v));
  const double tiny = 1e-6 * emax;
  std::size_t first = 0, last = e.size() - 1;
  while (first < e.size() && std::fabs(e[first]) <= tiny) ++first;
  while (last > 0 && std::fabs(e[last]) <= tiny) --last;
  REQUIRE(first < last);
  CHECK(e[first] > 0.0);
  CHECK(e[last] < 0.0);
}

TEST_CASE("outer stationarity: discrete V gradient vanishes at convergence") {
  EpidemicParams p;
  p.n_grid = 1001;
  CostProfile c = constant_cost(400.0);
  GovernmentPreferences gp = aligned(400.0, 0.5);
  SweepSettings outer{0.05, 1e-9, 5000};
  SweepSettings inner{0.1, 1e-10, 20000};

  GovernmentSolution gov =
      solve_government(p, c, gp, outer, inner, StartSet::Zero);
  REQUIRE(gov.converged);

  const std::size_t n = gov.traj.size();
  const double h_fd = 1e-2;
  auto value_at = [&](const std::vector<double>& eps) {
    IndividualSolution nash = solve_nash(eps, p, c, inner, &gov.traj.k);
    REQUIRE(nash.converged);
    Trajectory tr = nash.traj;
    return government_value(tr, gp, p.kappa_star);
  };

  // scale: largest term in dH_g/deps along the solution (dk/deps = 1/2)
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dk = gov.traj.k[j] - p.kappa_star;
    const double t1 = std::fabs(gp.cost.beta * dk);
    const double t2 = std::fabs(0.5 * gp.cost.gamma * (gov.traj.eps[j] + 2.0 * dk));
    const double t3 = std::fabs(0.5 * (gov.traj.ls[j] - gov.traj.li[j]) *
                                gov.traj.s[j] * gov.traj.i[j]);
    scale = std::max(scale, t1 + t2 + t3);
  }

  auto g = testutil::rng(37);
  std::uniform_int_distribution<std::size_t> pick(1, n - 2);
  const double w = p.dt();
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t j = pick(g);
    std::vector<double> up = gov.traj.eps, dn = gov.traj.eps;
    up[j] += h_fd;
    dn[j] -= h_fd;
    const double fd = (value_at(up) - value_at(dn)) / (2.0 * h_fd);
    CHECK(std::fabs(fd / w) <= 1e-4 * scale);
  }
}

TEST_CASE("government requires unit individual beta") {
  EpidemicParams p;
  p.n_grid = 501;
  CostProfile c = constant_cost(100.0);
  c.beta = 2.0;
  CHECK_THROWS_AS(solve_government(p, c, aligned(100.0, 0.0),
                                   SweepSettings::outer_defaults(),
                                   SweepSettings{}, StartSet::Zero),
                  std::invalid_argument);
}

}  // TEST_SUITE
