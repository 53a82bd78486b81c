#include "epigame/types.hpp"

#include <cmath>

namespace epigame {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void EpidemicParams::validate() const {
  require(finite(kappa_star) && kappa_star > 1.0, "kappa_star must be > 1");
  require(finite(i0) && i0 > 0.0 && i0 < 1.0, "i0 must lie in (0, 1)");
  require(finite(t_f) && t_f > 0.0, "t_f must be > 0");
  require(n_grid >= 2, "n_grid must be >= 2");
}

void CostProfile::validate() const {
  require(finite(alpha0) && finite(alpha1) && alpha1 >= alpha0 && alpha0 >= 0.0,
          "infection cost must satisfy alpha1 >= alpha0 >= 0");
  require(finite(sigma) && sigma > 0.0, "sigma must be > 0");
  require(finite(i_hc) && i_hc > 0.0 && i_hc < 1.0, "i_hc must lie in (0, 1)");
  require(finite(beta) && beta > 0.0, "beta must be > 0");
  require(finite(f) && f >= 1.0, "discount factor f must be >= 1");
  require(finite(gamma) && gamma >= 0.0, "gamma must be >= 0");
}

void GovernmentPreferences::validate() const {
  cost.validate();
  require(cost.beta + 2.0 * cost.gamma > 0.0,
          "beta_g + 2*gamma_g must be > 0");
}

void SweepSettings::validate() const {
  require(finite(omega) && omega > 0.0 && omega <= 1.0,
          "sweep damping omega must lie in (0, 1]");
  require(finite(tol) && tol > 0.0, "sweep tol must be > 0");
  require(max_iter >= 1, "sweep max_iter must be >= 1");
}

std::vector<double> Trajectory::recovered() const {
  std::vector<double> r(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) r[j] = 1.0 - s[j] - i[j];
  return r;
}

const char* to_string(Branch b) {
  return b == Branch::HighPeak ? "high-peak" : "threshold-tracking";
}

}  // namespace epigame
