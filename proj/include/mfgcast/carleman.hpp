#pragma once

#include "mfgcast/grid.hpp"

namespace mfgcast {

// Parameters of the Carleman weight phi_lambda(t) = exp((T-t+c)^lambda)
// and of the fixed scalar factors multiplying the weighted residuals.
struct CarlemanParams {
  double lambda = 1.0;
  double c = 3.0;
  double a = 1.1;
  double d = 1.0;
  double T = 1.0;
};

// Accepts c iff c > 2 and c^2/(T+c) >= 2; throws naming the failing
// inequality otherwise.
void validate_c(double c, double T);

void validate_params(const CarlemanParams& p);

// phi_lambda(t); throws for t outside [0,T] or on overflow.
double cwf(double t, const CarlemanParams& p);

// (T-t+c)^lambda, the log of the weight.  Safe for any lambda.
double log_cwf(double t, const CarlemanParams& p);

// q = 1 / (lambda (T+c)^(lambda-1)).
double q_factor(const CarlemanParams& p);

// exp(-2 a c^lambda), the prefactor taming the weight's maximum.
double balance_scale(const CarlemanParams& p);

// Per-time weight balance_scale * cwf(t_j)^2, combined in log space so
// that large lambda does not overflow before the factors cancel.
// Throws if even the combined exponent exceeds double range.
Slice weight_profile(const Grid& g, const CarlemanParams& p);

}  // namespace mfgcast
