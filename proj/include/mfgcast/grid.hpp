#pragma once

#include <Eigen/Dense>

#include "mfgcast/errors.hpp"

namespace mfgcast {

// Space-time samples, row i = spatial node x_i, column j = time node t_j.
using Field = Eigen::MatrixXd;
using Slice = Eigen::VectorXd;

enum class FieldKind { density, value, residual };

// Uniform lattice on [-1,1] x [0,T].
struct Grid {
  int nx = 0;
  int nt = 0;
  double T = 0.0;
  double hx = 0.0;
  double ht = 0.0;

  double x(int i) const { return -1.0 + i * hx; }
  double t(int j) const { return j * ht; }
};

// Which three-point forward stencil dt_forward3 applies.  paper_literal
// selects the (-3, 4, -2)/(2h) variant, which fails first-order
// consistency (a constant maps to -1/(2h), not 0); standard is the
// usual second-order (-3, 4, -1)/(2h).
enum class StencilMode { standard, paper_literal };

Grid make_grid(int nx, int nt, double T);

// First spatial derivative: central interior, one-sided second order at
// the edges.  Exact for linears everywhere and for quadratics at
// interior nodes.
Field d1x(const Field& f, const Grid& g);
Slice d1x(const Slice& f, const Grid& g);

// Second spatial derivative with mirrored ghost nodes at the edges
// (f[-1] := f[1], f[nx] := f[nx-2]), the discrete image of zero
// Neumann data.
Field d2x(const Field& f, const Grid& g);
Slice d2x(const Slice& f, const Grid& g);

// Forward time derivative at the first node from three equispaced
// slices.
Slice dt_forward3(const Slice& f0, const Slice& f1, const Slice& f2,
                  double ht, StencilMode mode = StencilMode::standard);

// Composite trapezoid over [-1,1].
double integrate_x(const Slice& f, const Grid& g);

// Trapezoid in x then t with a per-time multiplicative weight w(t_j).
double integrate_xt(const Field& f, const Slice& w, const Grid& g);

// Trapezoid quadrature weights.
Slice weights_x(const Grid& g);
Slice weights_t(const Grid& g);

// Dense stencil matrices for the operators above; the functional's
// gradient assembles adjoints from their transposes.
struct DiffOps {
  Eigen::MatrixXd dx;   // nx x nx, rows of d1x
  Eigen::MatrixXd dxx;  // nx x nx, rows of d2x
  Eigen::MatrixXd dt;   // nt x nt, central interior, one-sided at t=0,T
  Slice wx;
  Slice wt;
};

DiffOps make_ops(const Grid& g);

bool all_finite(const Field& f);

// One-sided second-order first derivative at x=-1 and x=+1; both are
// zero on a slice satisfying the discrete Neumann condition.
double edge_deriv_left(const Slice& f, const Grid& g);
double edge_deriv_right(const Slice& f, const Grid& g);

}  // namespace mfgcast
