#include "mfgcast/tridiag.hpp"

#include <cmath>

namespace mfgcast {

Eigen::VectorXd solve_tridiagonal(const Eigen::VectorXd& lower,
                                  const Eigen::VectorXd& diag,
                                  const Eigen::VectorXd& upper,
                                  const Eigen::VectorXd& rhs) {
  const Eigen::Index n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n)
    throw validation_error("solve_tridiagonal: band lengths differ");
  Eigen::VectorXd c(n), d(n);
  double pivot = diag[0];
  if (pivot == 0.0) throw numeric_error("solve_tridiagonal: zero pivot at row 0");
  c[0] = upper[0] / pivot;
  d[0] = rhs[0] / pivot;
  for (Eigen::Index i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    if (pivot == 0.0)
      throw numeric_error("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    c[i] = upper[i] / pivot;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / pivot;
  }
  Eigen::VectorXd x(n);
  x[n - 1] = d[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

CubicSpline::CubicSpline(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
    : x_(x), y_(y) {
  const Eigen::Index n = x.size();
  if (n < 3 || y.size() != n)
    throw validation_error("CubicSpline: need >= 3 matching knots");
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    if (!(x[i + 1] > x[i]))
      throw validation_error("CubicSpline: knots must be strictly increasing");

  Eigen::VectorXd lower = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd upper = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double hl = x[i] - x[i - 1];
    const double hr = x[i + 1] - x[i];
    lower[i] = hl / 6.0;
    diag[i] = (hl + hr) / 3.0;
    upper[i] = hr / 6.0;
    rhs[i] = (y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl;
  }
  m_ = solve_tridiagonal(lower, diag, upper, rhs);
}

double CubicSpline::operator()(double x) const {
  const Eigen::Index n = x_.size();
  Eigen::Index i = 0;
  if (x <= x_[0]) {
    i = 0;
  } else if (x >= x_[n - 1]) {
    i = n - 2;
  } else {
    // binary search for the interval [x_i, x_{i+1}]
    Eigen::Index lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const Eigen::Index mid = (lo + hi) / 2;
      (x_[mid] <= x ? lo : hi) = mid;
    }
    i = lo;
  }
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

}  // namespace mfgcast
