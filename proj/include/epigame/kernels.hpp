#pragma once

#include <cstddef>

namespace epigame::kern {

/// Parameters of the tanh infection-cost step, flattened for kernel calls.
struct CostParams {
  double alpha0;
  double alpha1;
  double i_hc;
  double sigma;
};

/// Grid-wide series operations used by the sweep solvers. One scalar
/// reference implementation always exists; an AVX2 variant is selected at
/// runtime on x86-64 when available. Elementwise kernels are bit-identical
/// across variants (same IEEE mul/add/max sequence per element); reductions
/// and the transcendental cost kernels agree to a few ulp.
struct Ops {
  const char* name;

  // out[j] = 0.5 * (a[j] + a[j+1]), j = 0 .. n-2
  void (*midpoints)(const double* a, double* out, std::size_t n);

  // out[j] = (1-w) * a[j] + w * b[j]
  void (*mix)(const double* a, const double* b, double w, double* out,
              std::size_t n);

  // out[j] = max(0, (1-w) * a[j] + w * b[j])
  void (*mix_clamp0)(const double* a, const double* b, double w, double* out,
                     std::size_t n);

  // out[j] = max(0, kappa_star + (eps[j] - fpos[j]*(vs[j]-vi[j])*s[j]*i[j]) * inv_two_beta)
  void (*control_rule)(const double* vs, const double* vi, const double* s,
                       const double* i, const double* eps, const double* fpos,
                       double kappa_star, double inv_two_beta, double* out,
                       std::size_t n);

  // out[j] = i[j]*s[j] * (fpos[j]*bg_plus_gg*(vs[j]-vi[j]) - fgpos[j]*(ls[j]-li[j])) * inv_bg_2gg
  void (*intervention_rule)(const double* vs, const double* vi,
                            const double* ls, const double* li,
                            const double* s, const double* i,
                            const double* fpos, const double* fgpos,
                            double bg_plus_gg, double inv_bg_2gg, double* out,
                            std::size_t n);

  // out[j] = alpha0 + (alpha1-alpha0)/2 * (tanh((i[j]-i_hc)*sigma) + 1)
  void (*cost_series)(const double* i, CostParams cp, double* out,
                      std::size_t n);

  // cost[j] as above and dcost[j] = (alpha1-alpha0)*sigma/2 * sech^2((i[j]-i_hc)*sigma)
  void (*cost_and_deriv_series)(const double* i, CostParams cp, double* cost,
                                double* dcost, std::size_t n);

  // max_j |a[j] - b[j]|
  double (*sup_abs_diff)(const double* a, const double* b, std::size_t n);

  // max_j |a[j]|
  double (*sup_abs)(const double* a, std::size_t n);

  // max_j a[j]; n >= 1
  double (*max_value)(const double* a, std::size_t n);

  // uniform-grid trapezoid: h * (sum_j y[j] - (y[0] + y[n-1]) / 2)
  double (*trapezoid)(const double* y, double h, std::size_t n);
};

const Ops& scalar_ops();

/// True when the AVX2 variant is compiled in and the CPU supports it.
bool avx2_available();
const Ops& avx2_ops();  // valid only if avx2_available()

/// Dispatched variant: AVX2 when available, otherwise scalar. The
/// EPIGAME_KERNELS environment variable ("scalar" or "avx2") overrides the
/// choice; it is read once on first use.
const Ops& active_ops();

}  // namespace epigame::kern
