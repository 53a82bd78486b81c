#include "epigame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epigame/kernels.hpp"

namespace epigame {

std::vector<double> linspace(double t_f, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  const double h = t_f / static_cast<double>(n - 1);
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = h * j;
  t.back() = t_f;
  return t;
}

double infection_cost(double i, const CostProfile& c) {
  if (c.constant_cost()) return c.alpha0;
  const double x = (i - c.i_hc) * c.sigma;
  return c.alpha0 + 0.5 * (c.alpha1 - c.alpha0) * (std::tanh(x) + 1.0);
}

double infection_cost_derivative(double i, const CostProfile& c) {
  if (c.constant_cost()) return 0.0;
  const double x = (i - c.i_hc) * c.sigma;
  const double th = std::tanh(x);
  return 0.5 * (c.alpha1 - c.alpha0) * c.sigma * (1.0 - th * th);
}

namespace detail {

DiscountTable DiscountTable::build(double f, const std::vector<double>& t) {
  DiscountTable d;
  d.log_f = std::log(f);
  const std::size_t n = t.size();
  if (f == 1.0) {
    d.neg_node.assign(n, 1.0);
    d.pos_node.assign(n, 1.0);
    d.neg_mid.assign(n - 1, 1.0);
    d.pos_mid.assign(n - 1, 1.0);
    return d;
  }
  d.neg_node.resize(n);
  d.pos_node.resize(n);
  d.neg_mid.resize(n - 1);
  d.pos_mid.resize(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    d.neg_node[j] = std::exp(-t[j] * d.log_f);
    d.pos_node[j] = std::exp(t[j] * d.log_f);
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double tm = 0.5 * (t[j] + t[j + 1]);
    d.neg_mid[j] = std::exp(-tm * d.log_f);
    d.pos_mid[j] = std::exp(tm * d.log_f);
  }
  return d;
}

void midpoints(const std::vector<double>& a, std::vector<double>& out) {
  out.resize(a.size() - 1);
  kern::active_ops().midpoints(a.data(), out.data(), a.size());
}

namespace {

[[noreturn]] void bounds_failure(const char* what, std::size_t j, double s,
                                 double i) {
  throw SolverError(std::string(what) + " left the admissible range at node " +
                    std::to_string(j) + " (s=" + std::to_string(s) +
                    ", i=" + std::to_string(i) + ")");
}

inline bool admissible(double s, double i) {
  const double lo = -kStateBoundTol, hi = 1.0 + kStateBoundTol;
  return s >= lo && s <= hi && i >= lo && i <= hi && s + i <= hi;
}

}  // namespace

void sir_forward(const double* k_node, const double* k_mid, double h,
                 std::size_t n, double s0, double i0, double* s, double* i) {
  s[0] = s0;
  i[0] = i0;
  if (!admissible(s0, i0)) bounds_failure("SIR state", 0, s0, i0);
  const double h6 = h / 6.0, h2 = 0.5 * h;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double sj = s[j], ij = i[j];
    const double ka = k_node[j], km = k_mid[j], kb = k_node[j + 1];

    double w1 = ka * sj * ij;
    const double ds1 = -w1, di1 = w1 - ij;

    double s2 = sj + h2 * ds1, i2 = ij + h2 * di1;
    double w2 = km * s2 * i2;
    const double ds2 = -w2, di2 = w2 - i2;

    double s3 = sj + h2 * ds2, i3 = ij + h2 * di2;
    double w3 = km * s3 * i3;
    const double ds3 = -w3, di3 = w3 - i3;

    double s4 = sj + h * ds3, i4 = ij + h * di3;
    double w4 = kb * s4 * i4;
    const double ds4 = -w4, di4 = w4 - i4;

    s[j + 1] = sj + h6 * (ds1 + 2.0 * (ds2 + ds3) + ds4);
    i[j + 1] = ij + h6 * (di1 + 2.0 * (di2 + di3) + di4);
    if (!admissible(s[j + 1], i[j + 1]))
      bounds_failure("SIR state", j + 1, s[j + 1], i[j + 1]);
  }
}

void psi_forward(const double* kap_node, const double* kap_mid,
                 const double* ip_node, const double* ip_mid, double h,
                 std::size_t n, double ps0, double pi0, double* ps,
                 double* pi) {
  ps[0] = ps0;
  pi[0] = pi0;
  if (!admissible(ps0, pi0)) bounds_failure("psi state", 0, ps0, pi0);
  const double h6 = h / 6.0, h2 = 0.5 * h;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double aj = ps[j], bj = pi[j];
    const double ka = kap_node[j], km = kap_mid[j], kb = kap_node[j + 1];
    const double ia = ip_node[j], im = ip_mid[j], ib = ip_node[j + 1];

    double w1 = ka * aj * ia;
    const double da1 = -w1, db1 = w1 - bj;

    double a2 = aj + h2 * da1, b2 = bj + h2 * db1;
    double w2 = km * a2 * im;
    const double da2 = -w2, db2 = w2 - b2;

    double a3 = aj + h2 * da2, b3 = bj + h2 * db2;
    double w3 = km * a3 * im;
    const double da3 = -w3, db3 = w3 - b3;

    double a4 = aj + h * da3, b4 = bj + h * db3;
    double w4 = kb * a4 * ib;
    const double da4 = -w4, db4 = w4 - b4;

    ps[j + 1] = aj + h6 * (da1 + 2.0 * (da2 + da3) + da4);
    pi[j + 1] = bj + h6 * (db1 + 2.0 * (db2 + db3) + db4);
    if (!admissible(ps[j + 1], pi[j + 1]))
      bounds_failure("psi state", j + 1, ps[j + 1], pi[j + 1]);
  }
}

}  // namespace detail

Trajectory integrate_sir(const std::vector<double>& k,
                         const EpidemicParams& p) {
  p.validate();
  const std::size_t n = static_cast<std::size_t>(p.n_grid);
  if (k.size() != n)
    throw std::invalid_argument("behaviour series length must match n_grid");
  for (double v : k)
    if (!(v >= 0.0))
      throw std::invalid_argument("behaviour series must be nonnegative");

  Trajectory traj;
  traj.t = linspace(p.t_f, p.n_grid);
  traj.k = k;
  traj.eps.assign(n, 0.0);
  traj.s.resize(n);
  traj.i.resize(n);
  std::vector<double> k_mid;
  detail::midpoints(k, k_mid);
  detail::sir_forward(k.data(), k_mid.data(), p.dt(), n, 1.0 - p.i0, p.i0,
                      traj.s.data(), traj.i.data());
  return traj;
}

Trajectory integrate_sir(double k_const, const EpidemicParams& p) {
  return integrate_sir(
      std::vector<double>(static_cast<std::size_t>(p.n_grid), k_const), p);
}

double peak_infected(const std::vector<double>& i) {
  const std::size_t n = i.size();
  std::size_t jm = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (i[j] > i[jm]) jm = j;
  double peak = i[jm];
  if (jm > 0 && jm + 1 < n) {
    const double b = 0.5 * (i[jm + 1] - i[jm - 1]);
    const double a = 0.5 * (i[jm + 1] + i[jm - 1]) - i[jm];
    if (a < 0.0) {
      const double x = -b / (2.0 * a);
      if (std::fabs(x) <= 1.0) peak = i[jm] + 0.5 * b * x;
    }
  }
  return std::min(peak, 1.0);
}

double duration_above(const std::vector<double>& t,
                      const std::vector<double>& i, double threshold) {
  double measure = 0.0;
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    const double h = t[j + 1] - t[j];
    const double y0 = i[j], y1 = i[j + 1];
    const bool a0 = y0 > threshold, a1 = y1 > threshold;
    if (a0 && a1) {
      measure += h;
    } else if (a0 != a1) {
      const double frac = (threshold - y0) / (y1 - y0);
      measure += a0 ? frac * h : (1.0 - frac) * h;
    }
  }
  return measure;
}

ScenarioMetrics compute_metrics(const Trajectory& traj, double total_cost,
                                std::optional<Branch> branch) {
  ScenarioMetrics m;
  m.peak_i = peak_infected(traj.i);
  m.total_cases = 1.0 - traj.s.back();
  m.duration = duration_above(traj.t, traj.i);
  m.total_cost = total_cost;
  m.branch = branch;
  return m;
}

}  // namespace epigame
