#include "mfgcast/init_estimate.hpp"

#include <cmath>

namespace mfgcast {

Slice cutoff_chi(const Grid& g, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw validation_error("cutoff_chi: eps must lie in (0, 1)");
  Slice chi(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.x(i);
    if (x <= 1.0 - eps) {
      chi[i] = 1.0;
    } else {
      const double xi = (x - 1.0 + eps) / eps;
      chi[i] = 1.0 - 3.0 * xi * xi + 2.0 * xi * xi * xi;
    }
  }
  return chi;
}

Slice compute_p(const Slice& m0, const Slice& mt0, const Slice& mxx0, double beta,
                double r, double floor_val) {
  if (r == 0.0) throw validation_error("compute_p: r must be nonzero");
  if ((m0.array() < 0.0).any())
    throw validation_error("compute_p: density must be nonnegative");
  if ((m0.array() < floor_val).all())
    throw validation_error("compute_p: density entirely below floor");
  return (beta * mxx0 - mt0).cwiseQuotient(r * m0.cwiseMax(floor_val));
}

Slice solve_ux0(const Slice& p, const Slice& m0, const Slice& chi, const Grid& g) {
  if ((m0.array() < kDensityFloor).any())
    throw validation_error("solve_ux0: density below floor");

  // v solves v' + (m'/m) v = p, v(-1) = 0; the integrating factor is m
  // itself, so v(x) = (1/m(x)) ∫_{-1}^x m p dy, cumulative trapezoid.
  Slice inner(g.nx);
  inner[0] = 0.0;
  for (int i = 1; i < g.nx; ++i)
    inner[i] = inner[i - 1] + 0.5 * g.hx * (p[i - 1] * m0[i - 1] + p[i] * m0[i]);
  Slice v = inner.cwiseQuotient(m0);

  // Cross-check: nested form with the exponential kernel written as
  // exp(log m(y) - log m(x)) = m(y)/m(x).
  const Slice logm = m0.array().log();
  Slice v_nested(g.nx);
  v_nested[0] = 0.0;
  for (int i = 1; i < g.nx; ++i) {
    double acc = 0.0;
    for (int j = 1; j <= i; ++j) {
      const double f_lo = p[j - 1] * std::exp(logm[j - 1] - logm[i]);
      const double f_hi = p[j] * std::exp(logm[j] - logm[i]);
      acc += 0.5 * g.hx * (f_lo + f_hi);
    }
    v_nested[i] = acc;
  }
  const double scale = std::max(v.norm(), 1e-30);
  if ((v - v_nested).norm() / scale > 1e-8)
    throw numeric_error("solve_ux0: nested and simplified forms disagree");

  return chi.cwiseProduct(v);
}

Slice integrate_u0(const Slice& ux0, double u_left, const Grid& g) {
  if (!ux0.allFinite()) throw validation_error("integrate_u0: ux0 not finite");
  Slice u(g.nx);
  u[0] = u_left;
  for (int i = 1; i < g.nx; ++i)
    u[i] = u[i - 1] + 0.5 * g.hx * (ux0[i - 1] + ux0[i]);
  return u;
}

InitEstimate estimate_initial_value(const std::array<DensitySlice, 3>& m_weeks,
                                    const MfgParams& params, const Grid& g,
                                    double eps, StencilMode mode) {
  for (const auto& w : m_weeks)
    if (w.values.size() != g.nx)
      throw validation_error("estimate_initial_value: slice length does not match grid");
  if (params.r == 0.0)
    throw validation_error("estimate_initial_value: r must be nonzero");

  const Slice& m0 = m_weeks[0].values;
  const Slice mt0 = dt_forward3(m0, m_weeks[1].values, m_weeks[2].values, g.ht, mode);
  const Slice mxx0 = d2x(m0, g);

  InitEstimate est;
  est.mode = mode;
  est.min_density = m0.minCoeff();
  est.p0 = compute_p(m0, mt0, mxx0, params.beta, params.r, kDensityFloor);

  const Slice chi = cutoff_chi(g, eps);
  est.ux0 = solve_ux0(est.p0, m0.cwiseMax(kDensityFloor), chi, g);
  est.u0 = integrate_u0(est.ux0, params.u_left, g);
  return est;
}

}  // namespace mfgcast
