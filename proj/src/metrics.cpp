#include "mfgcast/metrics.hpp"

#include <cmath>

namespace mfgcast {

Slice true_cost(const State& s, const MfgParams& p, const Grid& g,
                const Forcing* forcing) {
  const Forcing zero = forcing ? Forcing{} : Forcing::zero(g);
  const Forcing& f = forcing ? *forcing : zero;
  const Field l1 = op_L1(s, p, g, f);
  const Field l2 = op_L2(s, p, g, f);

  const Slice denom_field =
      s.u.col(0).cwiseProduct(s.u.col(0)) + s.m.col(0).cwiseProduct(s.m.col(0));
  const double denom = integrate_x(denom_field, g);
  if (!(denom > 0.0))
    throw validation_error("true_cost: initial u and m slices are identically zero");

  Slice curve(g.nt);
  for (int j = 0; j < g.nt; ++j) {
    const Slice num_field =
        l1.col(j).cwiseProduct(l1.col(j)) + l2.col(j).cwiseProduct(l2.col(j));
    curve[j] = std::sqrt(integrate_x(num_field, g) / denom);
  }
  return curve;
}

Field error_metric(const Field& m_sol, const Field& m_data, double floor_val) {
  if (m_sol.rows() != m_data.rows() || m_sol.cols() != m_data.cols())
    throw validation_error("error_metric: field shapes differ");
  return (m_sol - m_data).cwiseAbs().cwiseQuotient(m_data.cwiseAbs().cwiseMax(floor_val));
}

MetricsReport make_report(const State& s, const MfgParams& p, const Grid& g,
                          const Field& m_data, double floor_val, const Forcing* forcing) {
  MetricsReport rep;
  rep.true_cost_curve = true_cost(s, p, g, forcing);
  rep.error_matrix = error_metric(s.m, m_data, floor_val);

  const int first = 3;
  if (g.nt <= first)
    throw validation_error("make_report: grid has no forecast columns");
  const auto block = rep.error_matrix.rightCols(g.nt - first);
  rep.summary.mean_error = block.mean();
  rep.summary.fraction_below_quarter =
      static_cast<double>((block.array() < 0.25).count()) / block.size();
  return rep;
}

}  // namespace mfgcast
