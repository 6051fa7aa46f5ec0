#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfgcast/functional.hpp"

namespace mfgcast {

struct SyntheticScenario {
  Field u_star;
  Field m_star;
  Forcing forcing;
  std::string description;
};

// Cosine-mode closed forms u* = A cos(pi x) e^{-t} and
// m* = (1 + B cos(pi x) e^{-t}) / 2.
struct ManufacturedSpec {
  double A = 0.1;
  double B = 0.5;
};

// One implicit-Euler step of m_t = beta m_xx - d/dx(r m u_x) in
// conservative flux form with zero boundary fluxes; dt <= 0 steps one
// full grid interval.
Slice step_fpk(const Slice& m, const Slice& u_slice, const MfgParams& p, const Grid& g,
               double dt = 0.0);

// Densities at every grid time node, marching with ht/substeps internal
// steps and the value function interpolated linearly in time.
Field simulate_fpk(const Slice& m0, const Field& u, const MfgParams& p, const Grid& g,
                   int substeps);

// Samples the closed forms at the nodes, rebuilds the edge values so the
// discrete Neumann conditions hold exactly, renormalizes each density
// slice, and computes the compensating forcing analytically.
SyntheticScenario make_manufactured(const ManufacturedSpec& spec, const MfgParams& p,
                                    const Grid& g);

// Exact Neumann solution of u_t + beta u_xx + (r/2) u_x^2 + 1 = 0 via
// the exponential substitution u = (2 beta / r) log(v), anchored to
// u(-1,0) = p.u_left.  Requires 0 <= D < exp(-beta pi^2 T) so v > 0.
Field hjb_exact_value(double D, const MfgParams& p, const Grid& g);

// Inverse-CDF draws from a density slice; bit-reproducible per seed.
std::vector<double> sample_scores(const Slice& m, const Grid& g, int n,
                                  std::uint64_t seed);

}  // namespace mfgcast
