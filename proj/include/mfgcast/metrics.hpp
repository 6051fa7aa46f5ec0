#pragma once

#include "mfgcast/functional.hpp"

namespace mfgcast {

struct MetricsSummary {
  double mean_error = 0.0;             // mean relative error, forecast weeks only
  double fraction_below_quarter = 0.0; // share of forecast-week nodes with error < 0.25
};

struct MetricsReport {
  Slice true_cost_curve;  // nt entries
  Field error_matrix;     // nx by nt
  MetricsSummary summary;
};

// Per time node, sqrt of the spatial integral of L1^2 + L2^2 divided by
// the integral of u(x,0)^2 + m(x,0)^2.  Unweighted and unpenalized;
// pass a forcing to evaluate residuals of a forced scenario.
Slice true_cost(const State& s, const MfgParams& p, const Grid& g,
                const Forcing* forcing = nullptr);

// |m_sol - m_data| / max(|m_data|, floor) elementwise.
Field error_metric(const Field& m_sol, const Field& m_data, double floor_val = 1e-3);

// Bundles the curve, the error matrix against data, and the summary
// over the forecast columns (time nodes 3 .. nt-1).
MetricsReport make_report(const State& s, const MfgParams& p, const Grid& g,
                          const Field& m_data, double floor_val = 1e-3,
                          const Forcing* forcing = nullptr);

}  // namespace mfgcast
