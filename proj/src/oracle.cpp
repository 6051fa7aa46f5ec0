#include "mfgcast/oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "mfgcast/tridiag.hpp"

namespace mfgcast {

Slice step_fpk(const Slice& m, const Slice& u_slice, const MfgParams& p, const Grid& g,
               double dt) {
  if (m.size() != g.nx || u_slice.size() != g.nx)
    throw validation_error("step_fpk: slice length does not match grid");
  if (dt <= 0.0) dt = g.ht;

  const int n = g.nx;
  const Slice b = p.r * d1x(u_slice, g);
  const Slice w = weights_x(g);

  // Interface i sits between nodes i and i+1; its flux is
  // beta (m_{i+1}-m_i)/hx - (b_i m_i + b_{i+1} m_{i+1})/2.  Writing the
  // same coefficient value into both adjacent rows makes the column
  // sums of the system equal the cell weights, so trapezoid mass is
  // conserved to linear-solver precision.
  Slice coef_lo(n - 1), coef_hi(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    coef_lo[i] = dt * (p.beta / g.hx + 0.5 * b[i]);
    coef_hi[i] = dt * (p.beta / g.hx - 0.5 * b[i + 1]);
  }

  Slice lower(n), diag(n), upper(n);
  lower[0] = 0.0;
  upper[n - 1] = 0.0;
  diag[0] = w[0] + coef_lo[0];
  upper[0] = -coef_hi[0];
  for (int i = 1; i < n - 1; ++i) {
    lower[i] = -coef_lo[i - 1];
    diag[i] = w[i] + coef_lo[i] + coef_hi[i - 1];
    upper[i] = -coef_hi[i];
  }
  lower[n - 1] = -coef_lo[n - 2];
  diag[n - 1] = w[n - 1] + coef_hi[n - 2];

  const Slice rhs = w.cwiseProduct(m);
  try {
    return solve_tridiagonal(lower, diag, upper, rhs);
  } catch (const numeric_error&) {
    std::ostringstream msg;
    msg << "step_fpk: singular tridiagonal system (beta=" << p.beta << ", dt=" << dt
        << ", hx=" << g.hx << ")";
    throw numeric_error(msg.str());
  }
}

Field simulate_fpk(const Slice& m0, const Field& u, const MfgParams& p, const Grid& g,
                   int substeps) {
  if (substeps < 1) throw validation_error("simulate_fpk: substeps must be >= 1");
  if (m0.size() != g.nx) throw validation_error("simulate_fpk: m0 length does not match grid");
  if (u.rows() != g.nx || u.cols() != g.nt)
    throw validation_error("simulate_fpk: u shape does not match grid");

  const double dt = g.ht / substeps;
  Field out(g.nx, g.nt);
  out.col(0) = m0;
  Slice m = m0;
  for (int j = 0; j + 1 < g.nt; ++j) {
    for (int k = 0; k < substeps; ++k) {
      const double theta = static_cast<double>(k + 1) / substeps;
      const Slice u_slice = (1.0 - theta) * u.col(j) + theta * u.col(j + 1);
      m = step_fpk(m, u_slice, p, g, dt);
    }
    out.col(j + 1) = m;
  }
  return out;
}

namespace {

void rebuild_edges(Field& f) {
  const int n = static_cast<int>(f.rows());
  for (int j = 0; j < f.cols(); ++j) {
    f(0, j) = (4.0 * f(1, j) - f(2, j)) / 3.0;
    f(n - 1, j) = (4.0 * f(n - 2, j) - f(n - 3, j)) / 3.0;
  }
}

}  // namespace

SyntheticScenario make_manufactured(const ManufacturedSpec& spec, const MfgParams& p,
                                    const Grid& g) {
  if (std::abs(spec.B) >= 1.0)
    throw validation_error("make_manufactured: |B| must be < 1 to keep the density positive");
  if (p.kernel.table)
    throw validation_error("make_manufactured: needs a constant kernel");
  const double k = p.kernel.constant;

  SyntheticScenario sc;
  sc.u_star = Field(g.nx, g.nt);
  sc.m_star = Field(g.nx, g.nt);
  sc.forcing.f1 = Field(g.nx, g.nt);
  sc.forcing.f2 = Field(g.nx, g.nt);

  const double pi = M_PI;
  for (int j = 0; j < g.nt; ++j) {
    const double et = std::exp(-g.t(j));
    const double e2t = et * et;
    for (int i = 0; i < g.nx; ++i) {
      const double cx = std::cos(pi * g.x(i));
      const double sx = std::sin(pi * g.x(i));
      sc.u_star(i, j) = spec.A * cx * et;
      sc.m_star(i, j) = 0.5 * (1.0 + spec.B * cx * et);
      sc.forcing.f1(i, j) = spec.A * (1.0 + p.beta * pi * pi) * cx * et -
                            0.5 * p.r * spec.A * spec.A * pi * pi * sx * sx * e2t - k;
      sc.forcing.f2(i, j) =
          0.5 * (spec.B * (1.0 - p.beta * pi * pi) + p.r * spec.A * pi * pi) * cx * et +
          0.5 * p.r * spec.A * spec.B * pi * pi * std::cos(2.0 * pi * g.x(i)) * e2t;
    }
  }

  rebuild_edges(sc.u_star);
  rebuild_edges(sc.m_star);
  for (int j = 0; j < g.nt; ++j) {
    const double mass = integrate_x(sc.m_star.col(j), g);
    if (!(mass > 0.0))
      throw validation_error("make_manufactured: density slice lost positivity");
    sc.m_star.col(j) /= mass;
  }

  std::ostringstream d;
  d << "cosine modes, A=" << spec.A << ", B=" << spec.B;
  sc.description = d.str();
  return sc;
}

Field hjb_exact_value(double D, const MfgParams& p, const Grid& g) {
  if (!(p.beta > 0.0) || p.r == 0.0)
    throw validation_error("hjb_exact_value: needs beta > 0 and r != 0");
  const double pi = M_PI;
  const double limit = std::exp(-p.beta * pi * pi * g.T);
  if (!(D >= 0.0 && D < limit))
    throw validation_error("hjb_exact_value: D must lie in [0, exp(-beta pi^2 T))");

  const double scale = 2.0 * p.beta / p.r;
  const double mu0 = -p.r / (2.0 * p.beta);
  const double mu1 = p.beta * pi * pi + mu0;
  const double anchor = p.u_left - scale * std::log(1.0 - D);

  Field u(g.nx, g.nt);
  for (int j = 0; j < g.nt; ++j) {
    const double t = g.t(j);
    const double e0 = std::exp(mu0 * t);
    const double e1 = std::exp(mu1 * t);
    for (int i = 0; i < g.nx; ++i) {
      const double v = e0 + D * std::cos(pi * g.x(i)) * e1;
      u(i, j) = anchor + scale * std::log(v);
    }
  }
  rebuild_edges(u);
  return u;
}

std::vector<double> sample_scores(const Slice& m, const Grid& g, int n,
                                  std::uint64_t seed) {
  if (m.size() != g.nx) throw validation_error("sample_scores: slice length does not match grid");
  if (n < 1) throw validation_error("sample_scores: need n >= 1");
  if ((m.array() < 0.0).any())
    throw validation_error("sample_scores: density must be nonnegative");

  Slice cdf(g.nx);
  cdf[0] = 0.0;
  for (int i = 1; i < g.nx; ++i)
    cdf[i] = cdf[i - 1] + 0.5 * g.hx * (m[i - 1] + m[i]);
  const double total = cdf[g.nx - 1];
  if (!(total > 0.0)) throw validation_error("sample_scores: density has no mass");

  std::mt19937_64 rng(seed);
  std::vector<double> scores(static_cast<std::size_t>(n));
  for (auto& s : scores) {
    const double u = total * ((rng() >> 11) * 0x1.0p-53);
    int lo = 0, hi = g.nx - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (cdf[mid] <= u ? lo : hi) = mid;
    }
    const double rem = u - cdf[lo];
    const double slope = (m[lo + 1] - m[lo]) / g.hx;
    double ds;
    if (std::abs(slope) * g.hx > 1e-14 * std::max(m[lo], m[lo + 1])) {
      const double disc = std::max(0.0, m[lo] * m[lo] + 2.0 * slope * rem);
      ds = (std::sqrt(disc) - m[lo]) / slope;
    } else {
      ds = m[lo] > 0.0 ? rem / m[lo] : 0.0;
    }
    s = std::min(std::max(g.x(lo) + std::min(std::max(ds, 0.0), g.hx), -1.0), 1.0);
  }
  return scores;
}

}  // namespace mfgcast
