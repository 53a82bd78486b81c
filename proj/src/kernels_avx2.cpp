// AVX2 variants of the series kernels. Elementwise kernels use plain
// mul/add/max intrinsics (no FMA) so each lane performs the same IEEE
// operation sequence as the scalar reference and results match bit for bit.
// The cost kernels evaluate tanh/sech^2 through a vector exp and agree with
// the scalar reference to a few ulp; reductions differ only in summation
// order.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "epigame/kernels.hpp"

namespace epigame::kern {

namespace {

// Cephes-style expm-range reduction: exp(z) for z in [-708, 0].
// exp(z) = 2^n * (1 + 2*pz/(qz - pz)) with r = z - n*ln2 split in two parts.
const __m256d kLog2E = _mm256_set1_pd(1.4426950408889634073599);
const __m256d kC1 = _mm256_set1_pd(6.93145751953125e-1);
const __m256d kC2 = _mm256_set1_pd(1.42860682030941723212e-6);
const __m256d kExpP0 = _mm256_set1_pd(1.26177193074810590878e-4);
const __m256d kExpP1 = _mm256_set1_pd(3.02994407707441961300e-2);
const __m256d kExpP2 = _mm256_set1_pd(9.99999999999999999910e-1);
const __m256d kExpQ0 = _mm256_set1_pd(3.00198505138664455042e-6);
const __m256d kExpQ1 = _mm256_set1_pd(2.52448340349684104192e-3);
const __m256d kExpQ2 = _mm256_set1_pd(2.27265548208155028766e-1);
const __m256d kExpQ3 = _mm256_set1_pd(2.00000000000000000005e0);

inline __m256d exp_nonpos(__m256d z) {
  z = _mm256_max_pd(z, _mm256_set1_pd(-700.0));
  const __m256d nf =
      _mm256_round_pd(_mm256_mul_pd(z, kLog2E),
                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_sub_pd(z, _mm256_mul_pd(nf, kC1));
  r = _mm256_sub_pd(r, _mm256_mul_pd(nf, kC2));
  const __m256d r2 = _mm256_mul_pd(r, r);

  __m256d p = _mm256_mul_pd(kExpP0, r2);
  p = _mm256_mul_pd(_mm256_add_pd(p, kExpP1), r2);
  p = _mm256_add_pd(p, kExpP2);
  p = _mm256_mul_pd(p, r);

  __m256d q = _mm256_mul_pd(kExpQ0, r2);
  q = _mm256_mul_pd(_mm256_add_pd(q, kExpQ1), r2);
  q = _mm256_mul_pd(_mm256_add_pd(q, kExpQ2), r2);
  q = _mm256_add_pd(q, kExpQ3);

  const __m256d frac = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d base =
      _mm256_add_pd(one, _mm256_add_pd(frac, frac));

  // scale by 2^n: build the exponent bits directly (n is in [-1010, 1])
  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(base, _mm256_castsi256_pd(bits));
}

const __m256d kAbsMask =
    _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
const __m256d kSignMask =
    _mm256_castsi256_pd(_mm256_set1_epi64x(0x8000000000000000LL));

void midpoints_avx2(const double* a, double* out, std::size_t n) {
  if (n < 2) return;
  const std::size_t m = n - 1;
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) {
    const __m256d lo = _mm256_loadu_pd(a + j);
    const __m256d hi = _mm256_loadu_pd(a + j + 1);
    _mm256_storeu_pd(out + j, _mm256_mul_pd(half, _mm256_add_pd(lo, hi)));
  }
  for (; j < m; ++j) out[j] = 0.5 * (a[j] + a[j + 1]);
}

void mix_avx2(const double* a, const double* b, double w, double* out,
              std::size_t n) {
  const double u = 1.0 - w;
  const __m256d uv = _mm256_set1_pd(u);
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d mixed = _mm256_add_pd(_mm256_mul_pd(uv, _mm256_loadu_pd(a + j)),
                                        _mm256_mul_pd(wv, _mm256_loadu_pd(b + j)));
    _mm256_storeu_pd(out + j, mixed);
  }
  for (; j < n; ++j) out[j] = u * a[j] + w * b[j];
}

void mix_clamp0_avx2(const double* a, const double* b, double w, double* out,
                     std::size_t n) {
  const double u = 1.0 - w;
  const __m256d uv = _mm256_set1_pd(u);
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d mixed = _mm256_add_pd(_mm256_mul_pd(uv, _mm256_loadu_pd(a + j)),
                                        _mm256_mul_pd(wv, _mm256_loadu_pd(b + j)));
    _mm256_storeu_pd(out + j, _mm256_max_pd(zero, mixed));
  }
  for (; j < n; ++j) out[j] = std::max(0.0, u * a[j] + w * b[j]);
}

void control_rule_avx2(const double* vs, const double* vi, const double* s,
                       const double* i, const double* eps, const double* fpos,
                       double kappa_star, double inv_two_beta, double* out,
                       std::size_t n) {
  const __m256d ks = _mm256_set1_pd(kappa_star);
  const __m256d itb = _mm256_set1_pd(inv_two_beta);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d press = _mm256_mul_pd(
        _mm256_loadu_pd(fpos + j),
        _mm256_sub_pd(_mm256_loadu_pd(vs + j), _mm256_loadu_pd(vi + j)));
    press = _mm256_mul_pd(press, _mm256_loadu_pd(s + j));
    press = _mm256_mul_pd(press, _mm256_loadu_pd(i + j));
    const __m256d r = _mm256_add_pd(
        ks,
        _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(eps + j), press), itb));
    _mm256_storeu_pd(out + j, _mm256_max_pd(zero, r));
  }
  for (; j < n; ++j) {
    const double press = fpos[j] * (vs[j] - vi[j]) * s[j] * i[j];
    out[j] = std::max(0.0, kappa_star + (eps[j] - press) * inv_two_beta);
  }
}

void intervention_rule_avx2(const double* vs, const double* vi,
                            const double* ls, const double* li,
                            const double* s, const double* i,
                            const double* fpos, const double* fgpos,
                            double bg_plus_gg, double inv_bg_2gg, double* out,
                            std::size_t n) {
  const __m256d cf = _mm256_set1_pd(bg_plus_gg);
  const __m256d inv = _mm256_set1_pd(inv_bg_2gg);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dv =
        _mm256_sub_pd(_mm256_loadu_pd(vs + j), _mm256_loadu_pd(vi + j));
    const __m256d dl =
        _mm256_sub_pd(_mm256_loadu_pd(ls + j), _mm256_loadu_pd(li + j));
    const __m256d drive = _mm256_sub_pd(
        _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(fpos + j), cf), dv),
        _mm256_mul_pd(_mm256_loadu_pd(fgpos + j), dl));
    __m256d r =
        _mm256_mul_pd(_mm256_loadu_pd(i + j), _mm256_loadu_pd(s + j));
    r = _mm256_mul_pd(_mm256_mul_pd(r, drive), inv);
    _mm256_storeu_pd(out + j, r);
  }
  for (; j < n; ++j) {
    const double drive =
        fpos[j] * bg_plus_gg * (vs[j] - vi[j]) - fgpos[j] * (ls[j] - li[j]);
    out[j] = i[j] * s[j] * drive * inv_bg_2gg;
  }
}

// tanh(x) and sech^2(x) from e = exp(-2|x|):
//   tanh(x)  = sign(x) * (1-e)/(1+e)
//   sech2(x) = 4e/(1+e)^2
inline void tanh_sech2(__m256d x, __m256d& th, __m256d& sech2) {
  const __m256d ax = _mm256_and_pd(x, kAbsMask);
  const __m256d e =
      exp_nonpos(_mm256_mul_pd(_mm256_set1_pd(-2.0), ax));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d omp = _mm256_sub_pd(one, e);
  const __m256d opp = _mm256_add_pd(one, e);
  const __m256d mag = _mm256_div_pd(omp, opp);
  th = _mm256_or_pd(mag, _mm256_and_pd(x, kSignMask));
  sech2 = _mm256_div_pd(_mm256_mul_pd(_mm256_set1_pd(4.0), e),
                        _mm256_mul_pd(opp, opp));
}

void cost_series_avx2(const double* i, CostParams cp, double* out,
                      std::size_t n) {
  if (cp.alpha1 == cp.alpha0) {
    for (std::size_t j = 0; j < n; ++j) out[j] = cp.alpha0;
    return;
  }
  const double half_step = 0.5 * (cp.alpha1 - cp.alpha0);
  const __m256d hs = _mm256_set1_pd(half_step);
  const __m256d a0 = _mm256_set1_pd(cp.alpha0);
  const __m256d ihc = _mm256_set1_pd(cp.i_hc);
  const __m256d sg = _mm256_set1_pd(cp.sigma);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d x =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(i + j), ihc), sg);
    __m256d th, s2;
    tanh_sech2(x, th, s2);
    _mm256_storeu_pd(
        out + j, _mm256_add_pd(a0, _mm256_mul_pd(hs, _mm256_add_pd(th, one))));
  }
  for (; j < n; ++j) {
    const double x = (i[j] - cp.i_hc) * cp.sigma;
    const double e = std::exp(-2.0 * std::fabs(x));
    const double th = std::copysign((1.0 - e) / (1.0 + e), x);
    out[j] = cp.alpha0 + half_step * (th + 1.0);
  }
}

void cost_and_deriv_series_avx2(const double* i, CostParams cp, double* cost,
                                double* dcost, std::size_t n) {
  if (cp.alpha1 == cp.alpha0) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[j] = cp.alpha0;
      dcost[j] = 0.0;
    }
    return;
  }
  const double half_step = 0.5 * (cp.alpha1 - cp.alpha0);
  const __m256d hs = _mm256_set1_pd(half_step);
  const __m256d hss = _mm256_set1_pd(half_step * cp.sigma);
  const __m256d a0 = _mm256_set1_pd(cp.alpha0);
  const __m256d ihc = _mm256_set1_pd(cp.i_hc);
  const __m256d sg = _mm256_set1_pd(cp.sigma);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d x =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(i + j), ihc), sg);
    __m256d th, s2;
    tanh_sech2(x, th, s2);
    _mm256_storeu_pd(
        cost + j,
        _mm256_add_pd(a0, _mm256_mul_pd(hs, _mm256_add_pd(th, one))));
    _mm256_storeu_pd(dcost + j, _mm256_mul_pd(hss, s2));
  }
  for (; j < n; ++j) {
    const double x = (i[j] - cp.i_hc) * cp.sigma;
    const double e = std::exp(-2.0 * std::fabs(x));
    const double th = std::copysign((1.0 - e) / (1.0 + e), x);
    const double s2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    cost[j] = cp.alpha0 + half_step * (th + 1.0);
    dcost[j] = half_step * cp.sigma * s2;
  }
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m2 = _mm_max_pd(lo, hi);
  const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
  return _mm_cvtsd_f64(m1);
}

double sup_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j));
    acc = _mm256_max_pd(acc, _mm256_and_pd(d, kAbsMask));
  }
  double m = hmax(acc);
  for (; j < n; ++j) m = std::max(m, std::fabs(a[j] - b[j]));
  return m;
}

double sup_abs_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(a + j), kAbsMask));
  double m = hmax(acc);
  for (; j < n; ++j) m = std::max(m, std::fabs(a[j]));
  return m;
}

double max_value_avx2(const double* a, std::size_t n) {
  double m = a[0];
  std::size_t j = 0;
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(a);
    for (j = 4; j + 4 <= n; j += 4)
      acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + j));
    m = hmax(acc);
  }
  for (; j < n; ++j) m = std::max(m, a[j]);
  return m;
}

double trapezoid_avx2(const double* y, double h, std::size_t n) {
  if (n < 2) return 0.0;
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(y + j));
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
  for (; j < n; ++j) sum += y[j];
  return h * (sum - 0.5 * (y[0] + y[n - 1]));
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {
      "avx2",
      midpoints_avx2,
      mix_avx2,
      mix_clamp0_avx2,
      control_rule_avx2,
      intervention_rule_avx2,
      cost_series_avx2,
      cost_and_deriv_series_avx2,
      sup_abs_diff_avx2,
      sup_abs_avx2,
      max_value_avx2,
      trapezoid_avx2,
  };
  return ops;
}

}  // namespace epigame::kern

#endif  // x86-64
