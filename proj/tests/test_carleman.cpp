#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mfgcast/carleman.hpp"

using namespace mfgcast;

namespace {
const CarlemanParams kPaperSet{1.0, 3.0, 1.1, 1.0, 1.0};
}

TEST_CASE("validate_c acceptance region") {
  CHECK_NOTHROW(validate_c(3.0, 1.0));
  CHECK_THROWS_AS(validate_c(2.0, 1.0), validation_error);
  CHECK_THROWS_AS(validate_c(2.1, 1.0), validation_error);
  CHECK_THROWS_AS(validate_c(2.5, 1.0), validation_error);  // 6.25/3.5 ~ 1.79 < 2
  CHECK_NOTHROW(validate_c(2.8, 1.0));                      // 7.84/3.8 ~ 2.06

}

TEST_CASE("weight endpoints for the fixed parameter set") {
  CHECK(std::abs(cwf(0.0, kPaperSet) - std::exp(4.0)) <= 1e-12 * std::exp(4.0));
  CHECK(std::abs(cwf(1.0, kPaperSet) - std::exp(3.0)) <= 1e-12 * std::exp(3.0));
  CHECK_THROWS_AS(cwf(-0.01, kPaperSet), validation_error);
  CHECK_THROWS_AS(cwf(1.01, kPaperSet), validation_error);
}

TEST_CASE("weight decreases in time") {
  double prev = cwf(0.0, kPaperSet);
  for (int j = 1; j <= 10; ++j) {
    const double cur = cwf(0.1 * j, kPaperSet);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("q_factor closed forms") {
  CHECK(q_factor(kPaperSet) == doctest::Approx(1.0).epsilon(1e-13));
  CarlemanParams p = kPaperSet;
  p.lambda = 2.0;
  CHECK(q_factor(p) == doctest::Approx(0.125).epsilon(1e-13));
  double prev = q_factor(kPaperSet);
  for (double lam : {2.0, 3.0}) {
    p.lambda = lam;
    const double q = q_factor(p);
    CHECK(q < prev);
    prev = q;
  }
}

TEST_CASE("balance_scale closed forms") {
  CHECK(std::abs(balance_scale(kPaperSet) - std::exp(-6.6)) <= 1e-12 * std::exp(-6.6));
  CarlemanParams p = kPaperSet;
  p.a = 0.0;
  CHECK(balance_scale(p) == doctest::Approx(1.0).epsilon(1e-14));
  const double combined = balance_scale(kPaperSet) * cwf(0.0, kPaperSet) * cwf(0.0, kPaperSet);
  CHECK(combined == doctest::Approx(std::exp(1.4)).epsilon(1e-12));
}

TEST_CASE("weight_profile matches the lambda=1 closed form") {
  const Grid g = make_grid(5, 11, 1.0);
  const Slice w = weight_profile(g, kPaperSet);
  REQUIRE(w.size() == g.nt);
  for (int j = 0; j < g.nt; ++j) {
    const double want = std::exp(2.0 * (1.0 - g.t(j) + 3.0) - 2.0 * 1.1 * 3.0);
    CHECK(std::abs(w[j] - want) <= 1e-12 * want);
    CHECK(w[j] > 0.0);
  }
}

TEST_CASE("log-space combination survives where the raw weight overflows") {
  // (T+c)^lambda = 7^4 = 2401 overflows exp on its own, but the balanced
  // exponent 2(T-t+c)^4 - 2*2*6^4 starts at -382.  Later entries fall
  // below the representable range and underflow cleanly to zero.
  const CarlemanParams p{4.0, 6.0, 2.0, 1.0, 1.0};
  CHECK_THROWS_AS(cwf(0.0, p), numeric_error);
  const Grid g = make_grid(5, 4, 1.0);
  const Slice w = weight_profile(g, p);
  CHECK(w[0] == doctest::Approx(std::exp(-382.0)).epsilon(1e-9));
  CHECK(w[0] > 0.0);
  for (int j = 0; j < g.nt; ++j) {
    CHECK(std::isfinite(w[j]));
    CHECK(w[j] >= 0.0);
    if (j > 0) CHECK(w[j] <= w[j - 1]);
  }
}

TEST_CASE("weight_profile rejects a combined exponent beyond double range") {
  const CarlemanParams p{5.0, 3.0, 1.1, 1.0, 1.0};  // 2*4^5 - 2.2*3^5 ~ 1513
  const Grid g = make_grid(5, 4, 1.0);
  CHECK_THROWS_AS(weight_profile(g, p), numeric_error);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate_params(kPaperSet));
  CarlemanParams p = kPaperSet;
  p.lambda = 0.5;
  CHECK_THROWS_AS(validate_params(p), validation_error);
  p = kPaperSet;
  p.a = 0.0;
  CHECK_THROWS_AS(validate_params(p), validation_error);
  p = kPaperSet;
  p.d = 0.0;
  CHECK_THROWS_AS(validate_params(p), validation_error);
  p = kPaperSet;
  p.c = 2.1;
  CHECK_THROWS_AS(validate_params(p), validation_error);
}
