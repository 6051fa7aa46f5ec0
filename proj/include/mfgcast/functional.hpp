#pragma once

#include <optional>

#include "mfgcast/carleman.hpp"
#include "mfgcast/grid.hpp"

namespace mfgcast {

// Interaction kernel K(x,y): either a constant or a full nx-by-nx table.
struct KernelSpec {
  double constant = 1.0;
  std::optional<Eigen::MatrixXd> table;

  static KernelSpec make_constant(double v) { return KernelSpec{v, std::nullopt}; }
  static KernelSpec make_table(Eigen::MatrixXd k) { return KernelSpec{0.0, std::move(k)}; }
};

struct MfgParams {
  double beta = 0.25;
  double r = 50.0;
  KernelSpec kernel;
  CarlemanParams carleman;
  double alpha = 1e-4;
  double u_left = 2.0;
};

void validate_params(const MfgParams& p);

struct State {
  Field u;
  Field m;
};

// Optional source terms; zero forcing reproduces the plain HJB/FPK residuals.
struct Forcing {
  Field f1;
  Field f2;

  static Forcing zero(const Grid& g) {
    return Forcing{Field::Zero(g.nx, g.nt), Field::Zero(g.nx, g.nt)};
  }
};

// ∫ K(x,y) m(y,t) dy for each (x,t), trapezoid in y.
Field kernel_integral(const Field& m, const KernelSpec& kernel, const Grid& g);

// HJB residual: u_t + beta u_xx + r/2 u_x^2 + ∫K m dy + f1.
Field op_L1(const State& s, const MfgParams& p, const Grid& g, const Forcing& forcing);

// FPK residual: m_t - beta m_xx + d1x(r m u_x) + f2.
Field op_L2(const State& s, const MfgParams& p, const Grid& g, const Forcing& forcing);

double eval_J(const State& s, const MfgParams& p, const Grid& g, const Forcing& forcing);

// Exact gradient of the discrete eval_J; first is d/du, second d/dm.
std::pair<Field, Field> grad_J(const State& s, const MfgParams& p, const Grid& g,
                               const Forcing& forcing);

// Shared precomputation for repeated J/grad evaluations at fixed (p, g).
class JEvaluator {
 public:
  JEvaluator(const MfgParams& p, const Grid& g, const Forcing& forcing);

  double value(const State& s) const;
  void value_and_grad(const State& s, double& J, Field& gu, Field& gm) const;

  const MfgParams& params() const { return p_; }
  const Grid& grid() const { return g_; }

 private:
  MfgParams p_;
  Grid g_;
  Forcing forcing_;
  DiffOps ops_;
  Eigen::MatrixXd quad_w_;     // outer-product trapezoid weights, nx by nt
  Eigen::MatrixXd cw_quad_w_;  // quad_w_ with the balanced Carleman column scaling
  Eigen::MatrixXd kernel_mat_; // K(x_i, y_j) * (y-quadrature weight)
  double q_scale_ = 0.0;       // q * d
};

}  // namespace mfgcast
