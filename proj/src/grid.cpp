#include "mfgcast/grid.hpp"

#include <cmath>
#include <string>

namespace mfgcast {

Grid make_grid(int nx, int nt, double T) {
  if (nx < 5)
    throw validation_error("make_grid: nx must be >= 5, got " + std::to_string(nx));
  if (nt < 4)
    throw validation_error("make_grid: nt must be >= 4, got " + std::to_string(nt));
  if (!(T > 0.0))
    throw validation_error("make_grid: T must be positive, got " + std::to_string(T));
  Grid g;
  g.nx = nx;
  g.nt = nt;
  g.T = T;
  g.hx = 2.0 / (nx - 1);
  g.ht = T / (nt - 1);
  return g;
}

static void check_rows(const Eigen::Index rows, const Grid& g, const char* op) {
  if (rows != g.nx)
    throw validation_error(std::string(op) + ": field has " + std::to_string(rows) +
                           " rows, grid expects " + std::to_string(g.nx));
}

Slice d1x(const Slice& f, const Grid& g) {
  check_rows(f.size(), g, "d1x");
  const int n = g.nx;
  Slice out(n);
  const double inv2h = 1.0 / (2.0 * g.hx);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  for (int i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  return out;
}

Field d1x(const Field& f, const Grid& g) {
  check_rows(f.rows(), g, "d1x");
  Field out(f.rows(), f.cols());
  for (Eigen::Index j = 0; j < f.cols(); ++j) out.col(j) = d1x(Slice(f.col(j)), g);
  return out;
}

Slice d2x(const Slice& f, const Grid& g) {
  check_rows(f.size(), g, "d2x");
  const int n = g.nx;
  Slice out(n);
  const double invh2 = 1.0 / (g.hx * g.hx);
  out[0] = 2.0 * (f[1] - f[0]) * invh2;  // ghost f[-1] = f[1]
  for (int i = 1; i < n - 1; ++i) out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * invh2;
  out[n - 1] = 2.0 * (f[n - 2] - f[n - 1]) * invh2;  // ghost f[n] = f[n-2]
  return out;
}

Field d2x(const Field& f, const Grid& g) {
  check_rows(f.rows(), g, "d2x");
  Field out(f.rows(), f.cols());
  for (Eigen::Index j = 0; j < f.cols(); ++j) out.col(j) = d2x(Slice(f.col(j)), g);
  return out;
}

Slice dt_forward3(const Slice& f0, const Slice& f1, const Slice& f2,
                  double ht, StencilMode mode) {
  if (f0.size() != f1.size() || f1.size() != f2.size())
    throw validation_error("dt_forward3: slice lengths differ");
  const double c2 = (mode == StencilMode::standard) ? -1.0 : -2.0;
  return (-3.0 * f0 + 4.0 * f1 + c2 * f2) / (2.0 * ht);
}

double integrate_x(const Slice& f, const Grid& g) {
  check_rows(f.size(), g, "integrate_x");
  const int n = g.nx;
  double s = 0.5 * (f[0] + f[n - 1]);
  for (int i = 1; i < n - 1; ++i) s += f[i];
  return s * g.hx;
}

double integrate_xt(const Field& f, const Slice& w, const Grid& g) {
  check_rows(f.rows(), g, "integrate_xt");
  if (f.cols() != g.nt || w.size() != g.nt)
    throw validation_error("integrate_xt: time dimension mismatch");
  double s = 0.0;
  for (int j = 0; j < g.nt; ++j) {
    const double tw = (j == 0 || j == g.nt - 1) ? 0.5 : 1.0;
    s += tw * w[j] * integrate_x(Slice(f.col(j)), g);
  }
  return s * g.ht;
}

Slice weights_x(const Grid& g) {
  Slice w = Slice::Constant(g.nx, g.hx);
  w[0] *= 0.5;
  w[g.nx - 1] *= 0.5;
  return w;
}

Slice weights_t(const Grid& g) {
  Slice w = Slice::Constant(g.nt, g.ht);
  w[0] *= 0.5;
  w[g.nt - 1] *= 0.5;
  return w;
}

DiffOps make_ops(const Grid& g) {
  DiffOps ops;
  const int nx = g.nx, nt = g.nt;
  const double inv2hx = 1.0 / (2.0 * g.hx);
  const double invhx2 = 1.0 / (g.hx * g.hx);
  const double inv2ht = 1.0 / (2.0 * g.ht);

  ops.dx = Eigen::MatrixXd::Zero(nx, nx);
  ops.dx(0, 0) = -3.0 * inv2hx;
  ops.dx(0, 1) = 4.0 * inv2hx;
  ops.dx(0, 2) = -inv2hx;
  for (int i = 1; i < nx - 1; ++i) {
    ops.dx(i, i - 1) = -inv2hx;
    ops.dx(i, i + 1) = inv2hx;
  }
  ops.dx(nx - 1, nx - 1) = 3.0 * inv2hx;
  ops.dx(nx - 1, nx - 2) = -4.0 * inv2hx;
  ops.dx(nx - 1, nx - 3) = inv2hx;

  ops.dxx = Eigen::MatrixXd::Zero(nx, nx);
  ops.dxx(0, 0) = -2.0 * invhx2;
  ops.dxx(0, 1) = 2.0 * invhx2;
  for (int i = 1; i < nx - 1; ++i) {
    ops.dxx(i, i - 1) = invhx2;
    ops.dxx(i, i) = -2.0 * invhx2;
    ops.dxx(i, i + 1) = invhx2;
  }
  ops.dxx(nx - 1, nx - 1) = -2.0 * invhx2;
  ops.dxx(nx - 1, nx - 2) = 2.0 * invhx2;

  ops.dt = Eigen::MatrixXd::Zero(nt, nt);
  ops.dt(0, 0) = -3.0 * inv2ht;
  ops.dt(0, 1) = 4.0 * inv2ht;
  ops.dt(0, 2) = -inv2ht;
  for (int j = 1; j < nt - 1; ++j) {
    ops.dt(j, j - 1) = -inv2ht;
    ops.dt(j, j + 1) = inv2ht;
  }
  ops.dt(nt - 1, nt - 1) = 3.0 * inv2ht;
  ops.dt(nt - 1, nt - 2) = -4.0 * inv2ht;
  ops.dt(nt - 1, nt - 3) = inv2ht;

  ops.wx = weights_x(g);
  ops.wt = weights_t(g);
  return ops;
}

bool all_finite(const Field& f) { return f.allFinite(); }

double edge_deriv_left(const Slice& f, const Grid& g) {
  return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * g.hx);
}

double edge_deriv_right(const Slice& f, const Grid& g) {
  const int n = g.nx;
  return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * g.hx);
}

}  // namespace mfgcast
