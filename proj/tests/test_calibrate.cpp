#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "mfgcast/calibrate.hpp"
#include "mfgcast/oracle.hpp"

using namespace mfgcast;

namespace {

MfgParams base_params() {
  MfgParams p;
  p.beta = 0.3;
  p.r = 2.0;
  p.alpha = 1e-4;
  p.u_left = 1.0;
  p.kernel = KernelSpec::make_constant(1.0);
  p.carleman = CarlemanParams{1.0, 3.0, 1.1, 1.0, 1.0};
  return p;
}

std::vector<DensitySlice> oracle_weeks(const Grid& g, const MfgParams& p, double D) {
  const Field u = hjb_exact_value(D, p, g);
  Slice m0(g.nx);
  for (int i = 0; i < g.nx; ++i) m0[i] = 0.5 * (1.0 + 0.4 * std::cos(M_PI * g.x(i)));
  DensitySlice seed{m0, 0};
  const Field m = simulate_fpk(preprocess(seed, g).values, u, p, g, 100);
  std::vector<DensitySlice> weeks;
  for (int j = 0; j < g.nt; ++j) {
    DensitySlice d;
    d.week = j;
    d.values = m.col(j);
    weeks.push_back(preprocess(d, g));
  }
  return weeks;
}

ForecastOptions quick_opts(int iters) {
  ForecastOptions o;
  o.solve.max_iterations = iters;
  return o;
}

}  // namespace

TEST_CASE("period presets are frozen") {
  struct Row {
    int k;
    double u_left, beta, r;
  };
  const Row rows[] = {
      {1, 2.0, 0.25, 50.0},  {2, 1.0, 0.05, 80.0},  {3, 2.0, 0.5, 75.0},
      {4, 3.8, 0.3, 80.0},   {5, 3.7, 1.5, 100.0},  {6, 5.0, 3.0, 200.0},
      {7, 1.6, 2.75, 300.0}, {8, 2.6, 1.5, 125.0},  {9, 3.0, 0.75, 75.0},
      {10, 4.0, 2.5, 175.0},
  };
  for (const Row& row : rows) {
    const PeriodPreset p = period_preset(row.k);
    CHECK(p.index == row.k);
    CHECK(p.u_left == row.u_left);
    CHECK(p.beta == row.beta);
    CHECK(p.r == row.r);
  }
  CHECK_THROWS_AS(period_preset(0), validation_error);
  CHECK_THROWS_AS(period_preset(11), validation_error);
}

TEST_CASE("period starts step by 77 days from 2020-03-02") {
  CHECK(period_start(1) == 18323LL * 86400);
  for (int k = 1; k < 10; ++k)
    CHECK(period_start(k + 1) - period_start(k) == 77LL * 86400);
  CHECK_THROWS_AS(period_start(0), validation_error);
  CHECK_THROWS_AS(period_start(11), validation_error);
}

TEST_CASE("sweep rejects malformed specs") {
  const Grid g = make_grid(21, 11, 1.0);
  const MfgParams base = base_params();
  const auto weeks = oracle_weeks(g, base, 0.02);

  CalibrationSpec spec;
  spec.betas = {};
  spec.rs = {2.0};
  spec.u_lefts = {1.0};
  CHECK_THROWS_AS(sweep(weeks, spec, g, base), validation_error);

  spec.betas = {0.3, -0.1};
  CHECK_THROWS_AS(sweep(weeks, spec, g, base), validation_error);

  spec.betas = {0.3};
  spec.scoring = "median";
  CHECK_THROWS_AS(sweep(weeks, spec, g, base), validation_error);
}

TEST_CASE("single-candidate sweep matches a direct forecast") {
  const Grid g = make_grid(21, 11, 1.0);
  const MfgParams base = base_params();
  const auto weeks = oracle_weeks(g, base, 0.02);
  const ForecastOptions fopts = quick_opts(120);

  CalibrationSpec spec;
  spec.betas = {base.beta};
  spec.rs = {base.r};
  spec.u_lefts = {base.u_left};
  const CalibrationReport rep = sweep(weeks, spec, g, base, fopts);
  REQUIRE(rep.entries.size() == 1);
  CHECK_FALSE(rep.entries[0].failed);

  const ForecastOutcome direct = forecast(weeks, base, g, fopts);
  CHECK(rep.entries[0].score == direct.metrics.summary.mean_error);
  CHECK(rep.entries[0].iterations == direct.solve.iterations);
  CHECK(rep.entries[0].final_optimality == direct.solve.final_optimality);
  CHECK(rep.best.beta == base.beta);
  CHECK(rep.best.r == base.r);
  CHECK(rep.best.u_left == base.u_left);
}

TEST_CASE("sweep covers the full candidate product and ranks ascending") {
  const Grid g = make_grid(21, 11, 1.0);
  const MfgParams base = base_params();
  const auto weeks = oracle_weeks(g, base, 0.02);

  CalibrationSpec spec;
  spec.betas = {0.2, 0.3};
  spec.rs = {1.5, 2.0, 2.5};
  spec.u_lefts = {1.0};
  const CalibrationReport rep = sweep(weeks, spec, g, base, quick_opts(80));
  REQUIRE(rep.entries.size() == 6);

  std::set<std::tuple<double, double, double>> seen;
  for (const auto& e : rep.entries)
    seen.insert({e.triple.beta, e.triple.r, e.triple.u_left});
  CHECK(seen.size() == 6);
  for (double b : spec.betas)
    for (double r : spec.rs)
      CHECK(seen.count({b, r, 1.0}) == 1);

  for (std::size_t k = 1; k < rep.entries.size(); ++k)
    CHECK(rep.entries[k].score >= rep.entries[k - 1].score);
  CHECK(rep.best.beta == rep.entries[0].triple.beta);
  CHECK(rep.best.r == rep.entries[0].triple.r);
  CHECK(rep.best.u_left == rep.entries[0].triple.u_left);
}

TEST_CASE("exact score ties break toward the smallest triple") {
  const Grid g = make_grid(21, 11, 1.0);
  const MfgParams base = base_params();
  const auto weeks = oracle_weeks(g, base, 0.02);

  // The density field never depends on the anchor value, so these three
  // candidates produce bitwise-equal scores.
  CalibrationSpec spec;
  spec.betas = {0.3};
  spec.rs = {2.0};
  spec.u_lefts = {2.5, 1.0, 4.0};
  const CalibrationReport rep = sweep(weeks, spec, g, base, quick_opts(100));
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].score == rep.entries[1].score);
  CHECK(rep.entries[1].score == rep.entries[2].score);
  CHECK(rep.entries[0].triple.u_left == 1.0);
  CHECK(rep.entries[1].triple.u_left == 2.5);
  CHECK(rep.entries[2].triple.u_left == 4.0);
  CHECK(rep.best.u_left == 1.0);
}

TEST_CASE("sweep output is deterministic across runs") {
  const Grid g = make_grid(21, 11, 1.0);
  const MfgParams base = base_params();
  const auto weeks = oracle_weeks(g, base, 0.02);

  CalibrationSpec spec;
  spec.betas = {0.25, 0.35};
  spec.rs = {1.5, 2.5};
  spec.u_lefts = {1.0};
  const CalibrationReport a = sweep(weeks, spec, g, base, quick_opts(60));
  const CalibrationReport b = sweep(weeks, spec, g, base, quick_opts(60));
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    CHECK(a.entries[k].triple.beta == b.entries[k].triple.beta);
    CHECK(a.entries[k].triple.r == b.entries[k].triple.r);
    CHECK(a.entries[k].triple.u_left == b.entries[k].triple.u_left);
    CHECK(a.entries[k].score == b.entries[k].score);
  }
}

TEST_CASE("warm start recenters candidate grids on the previous optimum") {
  const Grid g = make_grid(21, 11, 1.0);
  const MfgParams base = base_params();
  const auto weeks = oracle_weeks(g, base, 0.02);

  CalibrationSpec spec;
  spec.betas = {0.1, 0.2, 0.3};
  spec.rs = {2.0};
  spec.u_lefts = {1.0};
  spec.warm_start = true;
  const Triple prev{0.5, 2.0, 1.0};
  const CalibrationReport rep = sweep(weeks, spec, g, base, quick_opts(40), prev);
  std::set<double> betas;
  for (const auto& e : rep.entries) betas.insert(e.triple.beta);
  CHECK(betas == std::set<double>({0.4, 0.5, 0.6}));

  // Without a previous optimum the grids are used verbatim.
  const CalibrationReport plain = sweep(weeks, spec, g, base, quick_opts(40));
  betas.clear();
  for (const auto& e : plain.entries) betas.insert(e.triple.beta);
  CHECK(betas == std::set<double>({0.1, 0.2, 0.3}));

  // A shift that drags a diffusivity candidate below zero is rejected.
  const Triple bad{0.05, 2.0, 1.0};
  CHECK_THROWS_AS(sweep(weeks, spec, g, base, quick_opts(40), bad), validation_error);
}

TEST_CASE("sweep surfaces a diagnosis when every candidate fails") {
  const Grid g = make_grid(21, 11, 1.0);
  const MfgParams base = base_params();
  std::vector<DensitySlice> bad(11);
  for (auto& d : bad) d.values = Slice::Constant(7, 0.5);  // wrong grid size

  CalibrationSpec spec;
  spec.betas = {0.3};
  spec.rs = {2.0};
  spec.u_lefts = {1.0};
  try {
    sweep(bad, spec, g, base, quick_opts(10));
    FAIL("expected numeric_error");
  } catch (const numeric_error& e) {
    CHECK(std::string(e.what()).find("every candidate failed") != std::string::npos);
  }
}
