#pragma once

#include <vector>

#include "mfgcast/init_estimate.hpp"
#include "mfgcast/metrics.hpp"
#include "mfgcast/solver.hpp"

namespace mfgcast {

struct ForecastOptions {
  double eps_cutoff = 0.2;
  StencilMode stencil = StencilMode::standard;
  SolveOptions solve;
  double error_floor = 1e-3;
};

struct ForecastOutcome {
  SolveResult solve;
  MetricsReport metrics;
  InitEstimate init;
  ConstraintSet constraints;  // the slices the result is pinned to
  MfgParams params;           // echo of the inputs
};

// Estimates u(x,0) from the first three weekly densities, pins the
// known slices, minimizes the convexified objective, and scores the
// result against the remaining weeks.  The objective sees u only
// through derivatives, so the optimization runs with u(-1,0)
// normalized to zero and the constant is restored afterwards; the
// forecast density is bit-identical for any u_left.
ForecastOutcome forecast(const std::vector<DensitySlice>& period_data,
                         const MfgParams& p, const Grid& g,
                         const ForecastOptions& opts = {});

}  // namespace mfgcast
