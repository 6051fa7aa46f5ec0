#pragma once

#include <array>

#include "mfgcast/functional.hpp"
#include "mfgcast/grid.hpp"
#include "mfgcast/ingest.hpp"

namespace mfgcast {

inline constexpr double kDensityFloor = 1e-4;

struct InitEstimate {
  Slice u0;
  Slice ux0;
  Slice p0;
  double min_density = 0.0;  // smallest m(x,0) seen before flooring
  StencilMode mode = StencilMode::standard;
};

// 1 away from the right boundary, Hermite falloff to 0 over (1-eps, 1].
Slice cutoff_chi(const Grid& g, double eps);

// p(x,0) = (beta m_xx - m_t) / (r max(m0, floor)).
Slice compute_p(const Slice& m0, const Slice& mt0, const Slice& mxx0, double beta,
                double r, double floor_val);

// Solves v_x + (m_x/m) v = p with v(-1)=0, then applies the cutoff.
// Uses the closed form v(x) = (1/m(x)) ∫ m p dy; cross-checks the nested
// exponential form and rejects the result if the two disagree.
Slice solve_ux0(const Slice& p, const Slice& m0, const Slice& chi, const Grid& g);

// u(x,0) = u_left + cumulative trapezoid of ux0.
Slice integrate_u0(const Slice& ux0, double u_left, const Grid& g);

InitEstimate estimate_initial_value(const std::array<DensitySlice, 3>& m_weeks,
                                    const MfgParams& params, const Grid& g,
                                    double eps = 0.2,
                                    StencilMode mode = StencilMode::standard);

}  // namespace mfgcast
