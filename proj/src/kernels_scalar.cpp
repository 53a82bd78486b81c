#include "epigame/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace epigame::kern {

namespace {

void midpoints_scalar(const double* a, double* out, std::size_t n) {
  for (std::size_t j = 0; j + 1 < n; ++j) out[j] = 0.5 * (a[j] + a[j + 1]);
}

void mix_scalar(const double* a, const double* b, double w, double* out,
                std::size_t n) {
  const double u = 1.0 - w;
  for (std::size_t j = 0; j < n; ++j) out[j] = u * a[j] + w * b[j];
}

void mix_clamp0_scalar(const double* a, const double* b, double w, double* out,
                       std::size_t n) {
  const double u = 1.0 - w;
  for (std::size_t j = 0; j < n; ++j)
    out[j] = std::max(0.0, u * a[j] + w * b[j]);
}

void control_rule_scalar(const double* vs, const double* vi, const double* s,
                         const double* i, const double* eps,
                         const double* fpos, double kappa_star,
                         double inv_two_beta, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double press = fpos[j] * (vs[j] - vi[j]) * s[j] * i[j];
    out[j] = std::max(0.0, kappa_star + (eps[j] - press) * inv_two_beta);
  }
}

void intervention_rule_scalar(const double* vs, const double* vi,
                              const double* ls, const double* li,
                              const double* s, const double* i,
                              const double* fpos, const double* fgpos,
                              double bg_plus_gg, double inv_bg_2gg, double* out,
                              std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double drive =
        fpos[j] * bg_plus_gg * (vs[j] - vi[j]) - fgpos[j] * (ls[j] - li[j]);
    out[j] = i[j] * s[j] * drive * inv_bg_2gg;
  }
}

void cost_series_scalar(const double* i, CostParams cp, double* out,
                        std::size_t n) {
  if (cp.alpha1 == cp.alpha0) {
    for (std::size_t j = 0; j < n; ++j) out[j] = cp.alpha0;
    return;
  }
  const double half_step = 0.5 * (cp.alpha1 - cp.alpha0);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = (i[j] - cp.i_hc) * cp.sigma;
    out[j] = cp.alpha0 + half_step * (std::tanh(x) + 1.0);
  }
}

void cost_and_deriv_series_scalar(const double* i, CostParams cp, double* cost,
                                  double* dcost, std::size_t n) {
  if (cp.alpha1 == cp.alpha0) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[j] = cp.alpha0;
      dcost[j] = 0.0;
    }
    return;
  }
  const double half_step = 0.5 * (cp.alpha1 - cp.alpha0);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = (i[j] - cp.i_hc) * cp.sigma;
    const double th = std::tanh(x);
    cost[j] = cp.alpha0 + half_step * (th + 1.0);
    dcost[j] = half_step * cp.sigma * (1.0 - th * th);
  }
}

double sup_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::fabs(a[j] - b[j]));
  return m;
}

double sup_abs_scalar(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::fabs(a[j]));
  return m;
}

double max_value_scalar(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t j = 1; j < n; ++j) m = std::max(m, a[j]);
  return m;
}

double trapezoid_scalar(const double* y, double h, std::size_t n) {
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += y[j];
  return h * (sum - 0.5 * (y[0] + y[n - 1]));
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",
      midpoints_scalar,
      mix_scalar,
      mix_clamp0_scalar,
      control_rule_scalar,
      intervention_rule_scalar,
      cost_series_scalar,
      cost_and_deriv_series_scalar,
      sup_abs_diff_scalar,
      sup_abs_scalar,
      max_value_scalar,
      trapezoid_scalar,
  };
  return ops;
}

}  // namespace epigame::kern
