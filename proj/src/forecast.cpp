#include "mfgcast/forecast.hpp"

namespace mfgcast {

ForecastOutcome forecast(const std::vector<DensitySlice>& period_data,
                         const MfgParams& p, const Grid& g,
                         const ForecastOptions& opts) {
  validate_params(p);
  if (static_cast<int>(period_data.size()) != g.nt)
    throw validation_error("forecast: need one density slice per time node, got " +
                           std::to_string(period_data.size()) + " for nt=" +
                           std::to_string(g.nt));
  for (int j = 0; j < g.nt; ++j)
    if (!slice_valid(period_data[static_cast<std::size_t>(j)], g))
      throw validation_error("forecast: week " + std::to_string(j + 1) +
                             " slice is not a valid density");

  ForecastOutcome out;
  out.params = p;
  out.init = estimate_initial_value(
      {period_data[0], period_data[1], period_data[2]}, p, g, opts.eps_cutoff,
      opts.stencil);

  const Slice u0_norm =
      neumann_adjust_value(integrate_u0(out.init.ux0, 0.0, g), g);
  const ConstraintSet c_norm = make_constraints(
      u0_norm, {period_data[0].values, period_data[1].values, period_data[2].values},
      g);

  out.solve = minimize(p, g, c_norm, Forcing::zero(g), opts.solve);
  out.solve.state.u.array() += p.u_left;

  out.constraints.u0 = (u0_norm.array() + p.u_left).matrix();
  out.constraints.m0h2 = c_norm.m0h2;

  Field m_data(g.nx, g.nt);
  for (int j = 0; j < g.nt; ++j)
    m_data.col(j) = period_data[static_cast<std::size_t>(j)].values;
  out.metrics = make_report(out.solve.state, p, g, m_data, opts.error_floor);
  return out;
}

}  // namespace mfgcast
