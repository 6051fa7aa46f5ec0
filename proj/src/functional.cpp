#include "mfgcast/functional.hpp"

namespace mfgcast {

void validate_params(const MfgParams& p) {
  if (!(p.beta > 0.0)) throw validation_error("beta must be positive");
  if (!(p.alpha > 0.0 && p.alpha < 1.0))
    throw validation_error("alpha must lie in (0, 1)");
  validate_params(p.carleman);
}

namespace {

Eigen::MatrixXd kernel_matrix(const KernelSpec& kernel, const Grid& g) {
  const Slice wx = weights_x(g);
  if (kernel.table) {
    if (kernel.table->rows() != g.nx || kernel.table->cols() != g.nx)
      throw validation_error("tabulated kernel must be nx by nx");
    return *kernel.table * wx.asDiagonal();
  }
  Eigen::MatrixXd k = Eigen::MatrixXd::Constant(g.nx, g.nx, kernel.constant);
  return k * wx.asDiagonal();
}

void check_shape(const Field& f, const Grid& g, const char* what) {
  if (f.rows() != g.nx || f.cols() != g.nt)
    throw validation_error(std::string(what) + ": field shape does not match grid");
}

Field residual_L1(const Field& u, const Field& m, const MfgParams& p,
                  const DiffOps& ops, const Eigen::MatrixXd& kmat, const Field& f1) {
  const Field ux = ops.dx * u;
  return u * ops.dt.transpose() + p.beta * (ops.dxx * u) +
         0.5 * p.r * ux.cwiseProduct(ux) + kmat * m + f1;
}

Field residual_L2(const Field& u, const Field& m, const MfgParams& p,
                  const DiffOps& ops, const Field& f2) {
  const Field flux = p.r * m.cwiseProduct(ops.dx * u);
  return m * ops.dt.transpose() - p.beta * (ops.dxx * m) + ops.dx * flux + f2;
}

}  // namespace

Field kernel_integral(const Field& m, const KernelSpec& kernel, const Grid& g) {
  check_shape(m, g, "kernel_integral");
  return kernel_matrix(kernel, g) * m;
}

Field op_L1(const State& s, const MfgParams& p, const Grid& g, const Forcing& forcing) {
  check_shape(s.u, g, "op_L1 u");
  check_shape(s.m, g, "op_L1 m");
  check_shape(forcing.f1, g, "op_L1 f1");
  return residual_L1(s.u, s.m, p, make_ops(g), kernel_matrix(p.kernel, g), forcing.f1);
}

Field op_L2(const State& s, const MfgParams& p, const Grid& g, const Forcing& forcing) {
  check_shape(s.u, g, "op_L2 u");
  check_shape(s.m, g, "op_L2 m");
  check_shape(forcing.f2, g, "op_L2 f2");
  return residual_L2(s.u, s.m, p, make_ops(g), forcing.f2);
}

JEvaluator::JEvaluator(const MfgParams& p, const Grid& g, const Forcing& forcing)
    : p_(p), g_(g), forcing_(forcing), ops_(make_ops(g)) {
  validate_params(p_);
  check_shape(forcing_.f1, g_, "forcing f1");
  check_shape(forcing_.f2, g_, "forcing f2");
  if (std::abs(p_.carleman.T - g_.T) > 1e-12 * std::max(1.0, g_.T))
    throw validation_error("Carleman horizon does not match grid horizon");

  quad_w_ = ops_.wx * ops_.wt.transpose();
  const Slice cw = weight_profile(g_, p_.carleman);
  cw_quad_w_ = quad_w_ * cw.asDiagonal();
  kernel_mat_ = kernel_matrix(p_.kernel, g_);
  q_scale_ = q_factor(p_.carleman) * p_.carleman.d;
}

double JEvaluator::value(const State& s) const {
  check_shape(s.u, g_, "eval_J u");
  check_shape(s.m, g_, "eval_J m");
  const Field l1 = residual_L1(s.u, s.m, p_, ops_, kernel_mat_, forcing_.f1);
  const Field l2 = residual_L2(s.u, s.m, p_, ops_, forcing_.f2);
  const double carleman_part =
      (cw_quad_w_.array() * (l1.array().square() + q_scale_ * l2.array().square())).sum();

  const Field ux = ops_.dx * s.u;
  const Field mx = ops_.dx * s.m;
  const Field uxx = ops_.dxx * s.u;
  const Field mxx = ops_.dxx * s.m;
  const double reg_part =
      (quad_w_.array() * (ux.array().square() + mx.array().square() +
                          uxx.array().square() + mxx.array().square()))
          .sum();
  return carleman_part + p_.alpha * reg_part;
}

void JEvaluator::value_and_grad(const State& s, double& J, Field& gu, Field& gm) const {
  check_shape(s.u, g_, "grad_J u");
  check_shape(s.m, g_, "grad_J m");
  const Field ux = ops_.dx * s.u;
  const Field mx = ops_.dx * s.m;
  const Field uxx = ops_.dxx * s.u;
  const Field mxx = ops_.dxx * s.m;

  const Field l1 = residual_L1(s.u, s.m, p_, ops_, kernel_mat_, forcing_.f1);
  const Field l2 = residual_L2(s.u, s.m, p_, ops_, forcing_.f2);

  J = (cw_quad_w_.array() * (l1.array().square() + q_scale_ * l2.array().square())).sum() +
      p_.alpha * (quad_w_.array() *
                  (ux.array().square() + mx.array().square() + uxx.array().square() +
                   mxx.array().square()))
                     .sum();

  const Field r1 = 2.0 * cw_quad_w_.cwiseProduct(l1);
  const Field r2 = (2.0 * q_scale_) * cw_quad_w_.cwiseProduct(l2);
  const Field dxt_r2 = ops_.dx.transpose() * r2;

  gu = r1 * ops_.dt + p_.beta * (ops_.dxx.transpose() * r1) +
       ops_.dx.transpose() * (p_.r * ux.cwiseProduct(r1)) +
       ops_.dx.transpose() * (p_.r * s.m.cwiseProduct(dxt_r2)) +
       2.0 * p_.alpha *
           (ops_.dx.transpose() * quad_w_.cwiseProduct(ux) +
            ops_.dxx.transpose() * quad_w_.cwiseProduct(uxx));

  gm = kernel_mat_.transpose() * r1 + r2 * ops_.dt - p_.beta * (ops_.dxx.transpose() * r2) +
       p_.r * ux.cwiseProduct(dxt_r2) +
       2.0 * p_.alpha *
           (ops_.dx.transpose() * quad_w_.cwiseProduct(mx) +
            ops_.dxx.transpose() * quad_w_.cwiseProduct(mxx));
}

double eval_J(const State& s, const MfgParams& p, const Grid& g, const Forcing& forcing) {
  return JEvaluator(p, g, forcing).value(s);
}

std::pair<Field, Field> grad_J(const State& s, const MfgParams& p, const Grid& g,
                               const Forcing& forcing) {
  const JEvaluator eval(p, g, forcing);
  double J = 0.0;
  Field gu, gm;
  eval.value_and_grad(s, J, gu, gm);
  return {std::move(gu), std::move(gm)};
}

}  // namespace mfgcast
