#include <doctest.h>

#include <cmath>
#include <vector>

#include "epigame/kernels.hpp"
#include "test_helpers.hpp"

using namespace epigame;

namespace {

std::vector<double> random_series(std::mt19937_64& g, std::size_t n, double lo,
                                  double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(g);
  return v;
}

const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 31, 64, 1001, 1037};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar cost series matches the pointwise definition bitwise") {
  auto g = testutil::rng(21);
  const kern::Ops& ops = kern::scalar_ops();
  kern::CostParams cp{100.0, 400.0, 0.05, 300.0};
  CostProfile c{100.0, 400.0, 0.05, 300.0, 1.0, 1.0, 0.0};
  auto i = random_series(g, 777, 0.0, 1.0);
  std::vector<double> a(i.size()), da(i.size());
  ops.cost_series(i.data(), cp, a.data(), i.size());
  for (std::size_t j = 0; j < i.size(); ++j)
    CHECK(a[j] == infection_cost(i[j], c));
  ops.cost_and_deriv_series(i.data(), cp, a.data(), da.data(), i.size());
  for (std::size_t j = 0; j < i.size(); ++j) {
    CHECK(a[j] == infection_cost(i[j], c));
    CHECK(da[j] == infection_cost_derivative(i[j], c));
  }
}

TEST_CASE("avx2 variant agrees with the scalar reference") {
  if (!kern::avx2_available()) {
    MESSAGE("AVX2 not available on this host; variant equivalence skipped");
    return;
  }
  const kern::Ops& sc = kern::scalar_ops();
  const kern::Ops& vx = kern::avx2_ops();
  auto g = testutil::rng(22);

  for (std::size_t n : kSizes) {
    auto a = random_series(g, n, -3.0, 5.0);
    auto b = random_series(g, n, -2.0, 6.0);
    auto s = random_series(g, n, 0.0, 1.0);
    auto i = random_series(g, n, 0.0, 1.0);
    auto eps = random_series(g, n, -8.0, 8.0);
    auto fpos = random_series(g, n, 0.5, 2.0);
    auto fgpos = random_series(g, n, 0.5, 2.0);
    auto ls = random_series(g, n, -500.0, 100.0);
    auto li = random_series(g, n, -500.0, 100.0);

    std::vector<double> r1(n), r2(n);

    if (n >= 2) {
      sc.midpoints(a.data(), r1.data(), n);
      vx.midpoints(a.data(), r2.data(), n);
      for (std::size_t j = 0; j + 1 < n; ++j) CHECK(r1[j] == r2[j]);
    }

    sc.mix(a.data(), b.data(), 0.1, r1.data(), n);
    vx.mix(a.data(), b.data(), 0.1, r2.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(r1[j] == r2[j]);

    sc.mix_clamp0(a.data(), b.data(), 0.1, r1.data(), n);
    vx.mix_clamp0(a.data(), b.data(), 0.1, r2.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(r1[j] == r2[j]);

    sc.control_rule(a.data(), b.data(), s.data(), i.data(), eps.data(),
                    fpos.data(), 4.0, 0.5, r1.data(), n);
    vx.control_rule(a.data(), b.data(), s.data(), i.data(), eps.data(),
                    fpos.data(), 4.0, 0.5, r2.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(r1[j] == r2[j]);

    sc.intervention_rule(a.data(), b.data(), ls.data(), li.data(), s.data(),
                         i.data(), fpos.data(), fgpos.data(), 1.5, 0.5,
                         r1.data(), n);
    vx.intervention_rule(a.data(), b.data(), ls.data(), li.data(), s.data(),
                         i.data(), fpos.data(), fgpos.data(), 1.5, 0.5,
                         r2.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(r1[j] == r2[j]);

    CHECK(sc.sup_abs_diff(a.data(), b.data(), n) ==
          vx.sup_abs_diff(a.data(), b.data(), n));
    CHECK(sc.sup_abs(a.data(), n) == vx.sup_abs(a.data(), n));
    CHECK(sc.max_value(a.data(), n) == vx.max_value(a.data(), n));

    if (n >= 2) {
      const double t1 = sc.trapezoid(a.data(), 0.01, n);
      const double t2 = vx.trapezoid(a.data(), 0.01, n);
      CHECK(t1 == doctest::Approx(t2).epsilon(1e-13));
    }

    // transcendental kernels: a few ulp of slack for the vector exp path
    kern::CostParams cp{100.0, 400.0, 0.05, 300.0};
    std::vector<double> d1(n), d2(n);
    sc.cost_series(i.data(), cp, r1.data(), n);
    vx.cost_series(i.data(), cp, r2.data(), n);
    for (std::size_t j = 0; j < n; ++j)
      CHECK(std::fabs(r1[j] - r2[j]) <= 1e-11 * cp.alpha1);
    sc.cost_and_deriv_series(i.data(), cp, r1.data(), d1.data(), n);
    vx.cost_and_deriv_series(i.data(), cp, r2.data(), d2.data(), n);
    const double dscale = 0.5 * (cp.alpha1 - cp.alpha0) * cp.sigma;
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::fabs(r1[j] - r2[j]) <= 1e-11 * cp.alpha1);
      CHECK(std::fabs(d1[j] - d2[j]) <= 1e-11 * dscale);
    }

    // constant profile is handled without transcendentals in both variants
    kern::CostParams flat{250.0, 250.0, 0.05, 300.0};
    sc.cost_series(i.data(), flat, r1.data(), n);
    vx.cost_series(i.data(), flat, r2.data(), n);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(r1[j] == 250.0);
      CHECK(r2[j] == 250.0);
    }
  }
}

TEST_CASE("dispatched kernels are one of the two variants") {
  const kern::Ops& act = kern::active_ops();
  const bool is_scalar = &act == &kern::scalar_ops();
  const bool is_avx2 = kern::avx2_available() && &act == &kern::avx2_ops();
  CHECK((is_scalar || is_avx2));
  MESSAGE("active kernel variant: ", std::string(act.name));
}

TEST_CASE("trapezoid handles degenerate sizes") {
  const kern::Ops& ops = kern::active_ops();
  double y1 = 3.0;
  CHECK(ops.trapezoid(&y1, 0.5, 1) == 0.0);
  double y2[2] = {1.0, 3.0};
  CHECK(ops.trapezoid(y2, 0.5, 2) == doctest::Approx(1.0).epsilon(1e-15));
}

}  // TEST_SUITE
