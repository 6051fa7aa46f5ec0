#include "mfgcast/carleman.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mfgcast {

void validate_c(double c, double T) {
  if (!(c > 2.0))
    throw validation_error("carleman: require c > 2, got c = " + std::to_string(c));
  if (!(c * c / (T + c) >= 2.0))
    throw validation_error("carleman: require c^2/(T+c) >= 2, got " +
                           std::to_string(c * c / (T + c)));
}

void validate_params(const CarlemanParams& p) {
  if (!(p.T > 0.0))
    throw validation_error("carleman: T must be positive");
  validate_c(p.c, p.T);
  if (!(p.lambda >= 1.0))
    throw validation_error("carleman: lambda must be >= 1, got " + std::to_string(p.lambda));
  if (!(p.a > 0.0))
    throw validation_error("carleman: a must be positive");
  if (!(p.d > 0.0))
    throw validation_error("carleman: d must be positive");
}

double log_cwf(double t, const CarlemanParams& p) {
  if (t < 0.0 || t > p.T)
    throw validation_error("cwf: t = " + std::to_string(t) + " outside [0, T]");
  return std::pow(p.T - t + p.c, p.lambda);
}

// Largest exponent exp() can take without producing inf.
static constexpr double kMaxExp = 709.0;

double cwf(double t, const CarlemanParams& p) {
  const double e = log_cwf(t, p);
  if (e > kMaxExp)
    throw numeric_error("cwf: exponent " + std::to_string(e) +
                        " overflows double; evaluate in log space instead");
  return std::exp(e);
}

double q_factor(const CarlemanParams& p) {
  return 1.0 / (p.lambda * std::pow(p.T + p.c, p.lambda - 1.0));
}

double balance_scale(const CarlemanParams& p) {
  return std::exp(-2.0 * p.a * std::pow(p.c, p.lambda));
}

Slice weight_profile(const Grid& g, const CarlemanParams& p) {
  const double shift = 2.0 * p.a * std::pow(p.c, p.lambda);
  Slice w(g.nt);
  for (int j = 0; j < g.nt; ++j) {
    const double e = 2.0 * log_cwf(g.t(j), p) - shift;
    if (e > kMaxExp)
      throw numeric_error("weight_profile: combined exponent " + std::to_string(e) +
                          " overflows double (lambda = " + std::to_string(p.lambda) + ")");
    w[j] = std::exp(e);
  }
  return w;
}

}  // namespace mfgcast
