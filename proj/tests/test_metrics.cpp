#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mfgcast/metrics.hpp"
#include "mfgcast/oracle.hpp"

using namespace mfgcast;

namespace {

MfgParams base_params() {
  MfgParams p;
  p.beta = 0.25;
  p.r = 50.0;
  p.alpha = 1e-4;
  p.u_left = 2.0;
  p.kernel = KernelSpec::make_constant(1.0);
  p.carleman = CarlemanParams{1.0, 3.0, 1.1, 1.0, 1.0};
  return p;
}

}  // namespace

TEST_CASE("true cost normalizer uses the initial slices") {
  const Grid g = make_grid(21, 11, 1.0);
  MfgParams p = base_params();
  State s;
  s.u = Field::Constant(g.nx, g.nt, 2.0);
  s.m = Field::Constant(g.nx, g.nt, 0.5);
  // Denominator: integral of 4 + 0.25 over [-1,1] = 8.5.
  // Numerator: L1 = kernel term = 1, L2 = 0, so each entry is
  // sqrt(2 / 8.5).
  const Slice curve = true_cost(s, p, g);
  REQUIRE(curve.size() == g.nt);
  const double want = std::sqrt(2.0 / 8.5);
  for (int j = 0; j < g.nt; ++j) CHECK(curve[j] == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("true cost vanishes for a forced exact solution") {
  const Grid g = make_grid(21, 11, 1.0);
  MfgParams p = base_params();
  p.r = 5.0;
  const SyntheticScenario sc = make_manufactured({0.05, 0.3}, p, g);
  State s;
  s.u = sc.u_star;
  s.m = sc.m_star;
  // Forcing computed from the same discrete operators leaves exactly
  // zero residual at every node.
  Forcing f = Forcing::zero(g);
  f.f1 = -op_L1(s, p, g, Forcing::zero(g));
  f.f2 = -op_L2(s, p, g, Forcing::zero(g));
  const Slice curve = true_cost(s, p, g, &f);
  CHECK(curve.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("true cost scales linearly with the residuals") {
  const Grid g = make_grid(21, 11, 1.0);
  MfgParams p = base_params();
  const SyntheticScenario sc = make_manufactured({0.05, 0.3}, p, g);
  State s;
  s.u = sc.u_star;
  s.m = sc.m_star;
  Forcing f = Forcing::zero(g);
  f.f1 = -op_L1(s, p, g, Forcing::zero(g));
  f.f2 = -op_L2(s, p, g, Forcing::zero(g));

  Forcing shifted = f;
  shifted.f1.array() += 0.3;  // residual L1 == 0.3 everywhere
  const Slice c1 = true_cost(s, p, g, &shifted);
  shifted.f1.array() += 0.3;  // residual L1 == 0.6 everywhere
  const Slice c2 = true_cost(s, p, g, &shifted);
  for (int j = 0; j < g.nt; ++j)
    CHECK(c2[j] == doctest::Approx(2.0 * c1[j]).epsilon(1e-10));
}

TEST_CASE("true cost rejects a degenerate normalizer") {
  const Grid g = make_grid(21, 11, 1.0);
  MfgParams p = base_params();
  State s;
  s.u = Field::Zero(g.nx, g.nt);
  s.m = Field::Zero(g.nx, g.nt);
  CHECK_THROWS_AS(true_cost(s, p, g), validation_error);
}

TEST_CASE("error metric arithmetic") {
  Field sol = Field::Constant(3, 2, 1.25);
  Field data = Field::Constant(3, 2, 1.0);
  const Field err = error_metric(sol, data, 1e-3);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) CHECK(err(i, j) == doctest::Approx(0.25).epsilon(1e-14));

  CHECK(error_metric(data, data, 1e-3).cwiseAbs().maxCoeff() == 0.0);

  // Joint positive scaling above the floor leaves the ratio unchanged.
  const Field e1 = error_metric(sol, data, 1e-3);
  const Field e2 = error_metric(Field(2.0 * sol), Field(2.0 * data), 1e-3);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) CHECK(e1(i, j) == e2(i, j));

  CHECK_THROWS_AS(error_metric(sol, Field::Ones(2, 2), 1e-3), validation_error);
}

TEST_CASE("error metric floors the denominator") {
  Field sol = Field::Constant(1, 1, 0.5e-3);
  Field data = Field::Constant(1, 1, 1e-6);
  const Field err = error_metric(sol, data, 1e-3);
  CHECK(err(0, 0) == doctest::Approx((0.5e-3 - 1e-6) / 1e-3).epsilon(1e-12));
}

TEST_CASE("report summarizes the forecast weeks only") {
  const Grid g = make_grid(5, 5, 1.0);
  MfgParams p = base_params();
  State s;
  s.u = Field::Constant(g.nx, g.nt, 2.0);
  s.m = Field::Constant(g.nx, g.nt, 0.5);
  Field data = Field::Constant(g.nx, g.nt, 0.5);
  // Pinned weeks disagree wildly; forecast weeks (j >= 3) are off by 10%.
  data.col(0).array() = 5.0;
  data.col(1).array() = 5.0;
  data.col(2).array() = 5.0;
  data.col(3).array() = 0.5 / 1.1;
  data.col(4).array() = 0.5 / 1.1;

  const MetricsReport rep = make_report(s, p, g, data);
  CHECK(rep.summary.mean_error == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(rep.summary.fraction_below_quarter == 1.0);
  CHECK(rep.error_matrix.rows() == g.nx);
  CHECK(rep.error_matrix.cols() == g.nt);
  CHECK(rep.true_cost_curve.size() == g.nt);
}
