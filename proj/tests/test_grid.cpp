#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mfgcast/grid.hpp"

using namespace mfgcast;

namespace {

Slice sample(const Grid& g, double (*f)(double)) {
  Slice s(g.nx);
  for (int i = 0; i < g.nx; ++i) s[i] = f(g.x(i));
  return s;
}

double l2_node_error(const Slice& got, const Slice& want, const Grid& g) {
  Slice diff = got - want;
  return std::sqrt(integrate_x(Slice(diff.cwiseProduct(diff)), g));
}

}  // namespace

TEST_CASE("make_grid spacing") {
  const Grid g = make_grid(21, 11, 1.0);
  CHECK(g.hx == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.ht == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.x(0) == -1.0);
  CHECK(g.x(20) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.t(10) == doctest::Approx(1.0).epsilon(1e-15));

  const Grid tiny = make_grid(5, 4, 1.0);
  CHECK(tiny.hx == doctest::Approx(0.5));
  CHECK(tiny.ht == doctest::Approx(1.0 / 3.0));
  CHECK(tiny.hx * (tiny.nx - 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(tiny.ht * (tiny.nt - 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("make_grid rejects degenerate sizes") {
  CHECK_THROWS_AS(make_grid(3, 4, 1.0), validation_error);
  CHECK_THROWS_AS(make_grid(4, 4, 1.0), validation_error);
  CHECK_THROWS_AS(make_grid(21, 3, 1.0), validation_error);
  CHECK_THROWS_AS(make_grid(21, 11, 0.0), validation_error);
  CHECK_THROWS_AS(make_grid(21, 11, -2.0), validation_error);
}

TEST_CASE("d1x annihilates constants and is exact for linears") {
  const Grid g = make_grid(21, 11, 1.0);
  const Slice c = Slice::Constant(g.nx, 3.7);
  CHECK(d1x(c, g).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-14));

  const Slice lin = sample(g, [](double x) { return x; });
  const Slice dlin = d1x(lin, g);
  for (int i = 0; i < g.nx; ++i) CHECK(dlin[i] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("d1x exact for quadratics at interior nodes") {
  const Grid g = make_grid(21, 5, 1.0);
  const Slice q = sample(g, [](double x) { return x * x; });
  const Slice dq = d1x(q, g);
  for (int i = 1; i < g.nx - 1; ++i)
    CHECK(dq[i] == doctest::Approx(2.0 * g.x(i)).epsilon(1e-12));
}

TEST_CASE("d2x exact for quadratics at interior nodes, zero on constants") {
  const Grid g = make_grid(21, 5, 1.0);
  const Slice q = sample(g, [](double x) { return x * x; });
  const Slice d2q = d2x(q, g);
  for (int i = 1; i < g.nx - 1; ++i) CHECK(d2q[i] == doctest::Approx(2.0).epsilon(1e-11));
  const Slice c = Slice::Constant(g.nx, -1.25);
  CHECK(d2x(c, g).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("d2x second-order on a Neumann-compatible mode") {
  const Grid g41 = make_grid(41, 5, 1.0);
  const Slice f41 = sample(g41, [](double x) { return std::cos(M_PI * x); });
  const Slice want41 = sample(g41, [](double x) { return -M_PI * M_PI * std::cos(M_PI * x); });
  const double e41 = l2_node_error(d2x(f41, g41), want41, g41);
  CHECK(e41 < 0.05);

  const Grid g81 = make_grid(81, 5, 1.0);
  const Slice f81 = sample(g81, [](double x) { return std::cos(M_PI * x); });
  const Slice want81 = sample(g81, [](double x) { return -M_PI * M_PI * std::cos(M_PI * x); });
  const double e81 = l2_node_error(d2x(f81, g81), want81, g81);
  const double order = std::log2(e41 / e81);
  CHECK(order >= 1.9);
}

TEST_CASE("dt_forward3 stencil modes") {
  const double ht = 0.25;
  const Slice f0 = Slice::Constant(4, 0.0);
  const Slice f1 = Slice::Constant(4, ht);
  const Slice f2 = Slice::Constant(4, 2 * ht);

  const Slice std_d = dt_forward3(f0, f1, f2, ht, StencilMode::standard);
  for (int i = 0; i < 4; ++i) CHECK(std_d[i] == doctest::Approx(1.0).epsilon(1e-14));

  // The paper_literal stencil loses consistency: on f(t)=t it returns 0.
  const Slice lit_d = dt_forward3(f0, f1, f2, ht, StencilMode::paper_literal);
  for (int i = 0; i < 4; ++i) CHECK(lit_d[i] == doctest::Approx(0.0).epsilon(1e-14));

  const Slice c = Slice::Constant(4, 5.0);
  CHECK(dt_forward3(c, c, c, ht).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  CHECK_THROWS_AS(dt_forward3(f0, f1, Slice::Constant(3, 0.0), ht), validation_error);
}

TEST_CASE("integrate_x on known integrands") {
  const Grid g = make_grid(21, 11, 1.0);
  CHECK(integrate_x(Slice::Constant(g.nx, 0.5), g) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate_x(sample(g, [](double x) { return x; }), g) ==
        doctest::Approx(0.0).epsilon(1e-14));
  // composite-trapezoid error for x^2 is exactly (b-a) h^2 f''/12 = 10/3 e-3
  CHECK(std::abs(integrate_x(sample(g, [](double x) { return x * x; }), g) - 2.0 / 3.0) ==
        doctest::Approx(0.01 / 3.0).epsilon(1e-10));
}

TEST_CASE("integrate_xt with unit and exponential weights") {
  const Grid g = make_grid(21, 11, 1.0);
  const Field ones = Field::Ones(g.nx, g.nt);
  CHECK(integrate_xt(ones, Slice::Ones(g.nt), g) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate_xt(Field::Zero(g.nx, g.nt), Slice::Ones(g.nt), g) == 0.0);

  // w = phi_1(t)^2 with c=3, T=1: closed form is e^8 - e^6.
  const double exact = std::exp(8.0) - std::exp(6.0);
  Slice w(g.nt);
  for (int j = 0; j < g.nt; ++j) w[j] = std::exp(2.0 * (1.0 - g.t(j) + 3.0));
  CHECK(std::abs(integrate_xt(ones, w, g) - exact) < 25.0);

  const Grid fine = make_grid(21, 401, 1.0);
  Slice wf(fine.nt);
  for (int j = 0; j < fine.nt; ++j) wf[j] = std::exp(2.0 * (1.0 - fine.t(j) + 3.0));
  CHECK(std::abs(integrate_xt(Field::Ones(fine.nx, fine.nt), wf, fine) - exact) <
        1e-4 * exact);
}

TEST_CASE("quadrature weights sum to the domain measures") {
  const Grid g = make_grid(21, 11, 1.0);
  CHECK(weights_x(g).sum() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(weights_t(g).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("stencil matrices reproduce the operators") {
  const Grid g = make_grid(11, 6, 1.0);
  const DiffOps ops = make_ops(g);

  const Slice q = sample(g, [](double x) { return x * x * x; });
  const Slice via_mat = ops.dx * q;
  const Slice direct = d1x(q, g);
  CHECK((via_mat - direct).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-13));

  const Slice via_mat2 = ops.dxx * q;
  const Slice direct2 = d2x(q, g);
  CHECK((via_mat2 - direct2).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-13));

  // dt rows: exact for linear-in-time samples.
  Eigen::VectorXd tv(g.nt);
  for (int j = 0; j < g.nt; ++j) tv[j] = 2.0 * g.t(j) - 1.0;
  const Eigen::VectorXd dt = ops.dt * tv;
  for (int j = 0; j < g.nt; ++j) CHECK(dt[j] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("edge derivatives vanish on one-sided-flat slices") {
  const Grid g = make_grid(11, 6, 1.0);
  Slice f(g.nx);
  for (int i = 0; i < g.nx; ++i) f[i] = 0.3 + 0.1 * std::cos(M_PI * g.x(i));
  f[0] = (4.0 * f[1] - f[2]) / 3.0;
  f[g.nx - 1] = (4.0 * f[g.nx - 2] - f[g.nx - 3]) / 3.0;
  CHECK(std::abs(edge_deriv_left(f, g)) < 1e-13);
  CHECK(std::abs(edge_deriv_right(f, g)) < 1e-13);
}

TEST_CASE("all_finite flags bad entries") {
  Field f = Field::Ones(4, 3);
  CHECK(all_finite(f));
  f(2, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(!all_finite(f));
  f(2, 1) = std::numeric_limits<double>::infinity();
  CHECK(!all_finite(f));
}
