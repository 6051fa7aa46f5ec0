#include "mfgcast/solver.hpp"

#include <cmath>
#include <deque>

namespace mfgcast {

namespace {

constexpr double kNeumannTol = 1e-10;

void check_slice(const Slice& f, const Grid& g, const char* what) {
  if (f.size() != g.nx)
    throw validation_error(std::string(what) + ": slice length does not match grid");
  if (!f.allFinite()) throw validation_error(std::string(what) + ": slice not finite");
}

double edge_violation(const Slice& f, const Grid& g) {
  return std::max(std::abs(edge_deriv_left(f, g)), std::abs(edge_deriv_right(f, g)));
}

// Folds the gradient of the dependent edge rows into the interior rows
// they are reconstructed from.
void fold_edges(Field& grad) {
  const int n = static_cast<int>(grad.rows());
  grad.row(1) += (4.0 / 3.0) * grad.row(0);
  grad.row(2) -= (1.0 / 3.0) * grad.row(0);
  grad.row(n - 2) += (4.0 / 3.0) * grad.row(n - 1);
  grad.row(n - 3) -= (1.0 / 3.0) * grad.row(n - 1);
}

void rebuild_edges(Field& f, int first_col) {
  const int n = static_cast<int>(f.rows());
  for (int j = first_col; j < f.cols(); ++j) {
    f(0, j) = (4.0 * f(1, j) - f(2, j)) / 3.0;
    f(n - 1, j) = (4.0 * f(n - 2, j) - f(n - 3, j)) / 3.0;
  }
}

}  // namespace

Slice neumann_adjust_value(Slice f, const Grid& g) {
  check_slice(f, g, "neumann_adjust_value");
  const int n = g.nx;
  f[1] = (3.0 * f[0] + f[2]) / 4.0;
  f[n - 1] = (4.0 * f[n - 2] - f[n - 3]) / 3.0;
  return f;
}

ConstraintSet make_constraints(const Slice& u0, const std::array<Slice, 3>& m_slices,
                               const Grid& g) {
  if (g.nt < 4)
    throw validation_error("make_constraints: need nt >= 4 so a free m column exists");
  check_slice(u0, g, "pinned u(.,0)");
  if (edge_violation(u0, g) > kNeumannTol)
    throw validation_error("pinned u(.,0) violates the discrete Neumann condition");
  for (const auto& m : m_slices) {
    check_slice(m, g, "pinned m slice");
    if (edge_violation(m, g) > kNeumannTol)
      throw validation_error("pinned m slice violates the discrete Neumann condition");
  }
  return ConstraintSet{u0, m_slices};
}

State build_initial_guess(const Slice& u0, const std::array<Slice, 3>& m_slices,
                          const Grid& g) {
  check_slice(u0, g, "build_initial_guess u0");
  State s;
  s.u = u0.replicate(1, g.nt);
  s.m = Field(g.nx, g.nt);
  const Slice avg = (m_slices[0] + m_slices[1] + m_slices[2]) / 3.0;
  for (int j = 0; j < g.nt; ++j)
    s.m.col(j) = j < 3 ? m_slices[static_cast<std::size_t>(j)] : avg;
  // Dependent edge entries recomputed from the interior so the guess lies
  // exactly in the range of unpack_free.
  rebuild_edges(s.u, 1);
  rebuild_edges(s.m, 3);
  return s;
}

int free_count(const Grid& g) { return (g.nx - 2) * (2 * g.nt - 4); }

Eigen::VectorXd pack_free(const State& s, const ConstraintSet& c, const Grid& g) {
  if (s.u.rows() != g.nx || s.u.cols() != g.nt || s.m.rows() != g.nx || s.m.cols() != g.nt)
    throw validation_error("pack_free: state shape does not match grid");
  Eigen::VectorXd v(free_count(g));
  int k = 0;
  for (int j = 1; j < g.nt; ++j)
    for (int i = 1; i < g.nx - 1; ++i) v[k++] = s.u(i, j);
  for (int j = 3; j < g.nt; ++j)
    for (int i = 1; i < g.nx - 1; ++i) v[k++] = s.m(i, j);
  return v;
}

State unpack_free(const Eigen::VectorXd& v, const ConstraintSet& c, const Grid& g) {
  if (v.size() != free_count(g))
    throw validation_error("unpack_free: free vector has wrong length");
  State s;
  s.u = Field(g.nx, g.nt);
  s.m = Field(g.nx, g.nt);
  s.u.col(0) = c.u0;
  for (int j = 0; j < 3; ++j) s.m.col(j) = c.m0h2[static_cast<std::size_t>(j)];
  int k = 0;
  for (int j = 1; j < g.nt; ++j)
    for (int i = 1; i < g.nx - 1; ++i) s.u(i, j) = v[k++];
  for (int j = 3; j < g.nt; ++j)
    for (int i = 1; i < g.nx - 1; ++i) s.m(i, j) = v[k++];
  rebuild_edges(s.u, 1);
  rebuild_edges(s.m, 3);
  return s;
}

namespace {

Eigen::VectorXd reduce_grad(Field gu, Field gm, const Grid& g) {
  fold_edges(gu);
  fold_edges(gm);
  Eigen::VectorXd v(free_count(g));
  int k = 0;
  for (int j = 1; j < g.nt; ++j)
    for (int i = 1; i < g.nx - 1; ++i) v[k++] = gu(i, j);
  for (int j = 3; j < g.nt; ++j)
    for (int i = 1; i < g.nx - 1; ++i) v[k++] = gm(i, j);
  return v;
}

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

Eigen::VectorXd lbfgs_direction(const Eigen::VectorXd& grad, const std::deque<Pair>& mem) {
  Eigen::VectorXd q = -grad;
  if (mem.empty()) return q;
  std::vector<double> alpha(mem.size());
  for (int i = static_cast<int>(mem.size()) - 1; i >= 0; --i) {
    alpha[i] = mem[i].rho * mem[i].s.dot(q);
    q -= alpha[i] * mem[i].y;
  }
  const Pair& last = mem.back();
  q *= last.s.dot(last.y) / last.y.squaredNorm();
  for (std::size_t i = 0; i < mem.size(); ++i) {
    const double beta = mem[i].rho * mem[i].y.dot(q);
    q += (alpha[i] - beta) * mem[i].s;
  }
  return q;
}

}  // namespace

SolveResult minimize(const MfgParams& p, const Grid& g, const ConstraintSet& c,
                     const Forcing& forcing, const SolveOptions& opts,
                     const State* start) {
  const JEvaluator eval(p, g, forcing);

  Eigen::VectorXd v;
  if (start) {
    v = pack_free(*start, c, g);
  } else {
    v = pack_free(build_initial_guess(c.u0, c.m0h2, g), c, g);
  }
  if (opts.iterate_bound > 0.0 && v.lpNorm<Eigen::Infinity>() > opts.iterate_bound)
    throw validation_error("minimize: start violates the iterate bound");

  State s = unpack_free(v, c, g);
  double f = 0.0;
  Field gu, gm;
  eval.value_and_grad(s, f, gu, gm);
  Eigen::VectorXd grad = reduce_grad(std::move(gu), std::move(gm), g);
  if (!std::isfinite(f) || !grad.allFinite())
    throw numeric_error("minimize: objective not finite at the starting point");

  SolveResult res;
  res.objective_trace.push_back(f);

  std::deque<Pair> mem;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (grad.lpNorm<Eigen::Infinity>() <= opts.tolerance) break;

    Eigen::VectorXd d = lbfgs_direction(grad, mem);
    double slope = grad.dot(d);
    if (!(slope < 0.0)) {
      d = -grad;
      slope = grad.dot(d);
    }

    double step = mem.empty() ? 1.0 / std::max(1.0, grad.lpNorm<Eigen::Infinity>()) : 1.0;
    if (opts.iterate_bound > 0.0) {
      while (step > 0.0 && (v + step * d).lpNorm<Eigen::Infinity>() > opts.iterate_bound)
        step *= opts.backtrack;
    }

    bool accepted = false;
    double f_new = f;
    Eigen::VectorXd v_new;
    for (int ls = 0; ls < opts.max_line_search; ++ls) {
      v_new = v + step * d;
      f_new = eval.value(unpack_free(v_new, c, g));
      if (std::isfinite(f_new) && f_new <= f + opts.armijo_c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= opts.backtrack;
    }
    if (!accepted) {
      res.line_search_stalled = true;
      break;
    }

    State s_new = unpack_free(v_new, c, g);
    double f_check = 0.0;
    eval.value_and_grad(s_new, f_check, gu, gm);
    Eigen::VectorXd grad_new = reduce_grad(std::move(gu), std::move(gm), g);
    if (!grad_new.allFinite())
      throw numeric_error("minimize: gradient not finite at iteration " + std::to_string(it + 1));

    Pair pair{v_new - v, grad_new - grad, 0.0};
    const double sy = pair.s.dot(pair.y);
    if (sy > 1e-12 * pair.s.norm() * pair.y.norm()) {
      pair.rho = 1.0 / sy;
      mem.push_back(std::move(pair));
      if (static_cast<int>(mem.size()) > opts.history) mem.pop_front();
    }

    v = std::move(v_new);
    f = f_new;
    grad = std::move(grad_new);
    res.objective_trace.push_back(f);
  }

  res.state = unpack_free(v, c, g);
  res.iterations = it;
  res.final_optimality = grad.lpNorm<Eigen::Infinity>();
  res.hit_iteration_cap =
      it == opts.max_iterations && res.final_optimality > opts.tolerance;

  double pinned = (res.state.u.col(0) - c.u0).lpNorm<Eigen::Infinity>();
  for (int j = 0; j < 3; ++j)
    pinned = std::max(pinned,
                      (res.state.m.col(j) - c.m0h2[static_cast<std::size_t>(j)])
                          .lpNorm<Eigen::Infinity>());
  res.max_pinned_violation = pinned;

  double neum = 0.0;
  for (int j = 0; j < g.nt; ++j) {
    neum = std::max(neum, edge_violation(res.state.u.col(j), g));
    neum = std::max(neum, edge_violation(res.state.m.col(j), g));
  }
  res.max_neumann_violation = neum;
  return res;
}

}  // namespace mfgcast
