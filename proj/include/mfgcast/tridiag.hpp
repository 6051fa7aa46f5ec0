#pragma once

#include <Eigen/Dense>

#include "mfgcast/errors.hpp"

namespace mfgcast {

// Thomas algorithm for a tridiagonal system with diagonals (lower, diag,
// upper); lower[0] and upper[n-1] are ignored.  Throws numeric_error on a
// vanishing pivot.
Eigen::VectorXd solve_tridiagonal(const Eigen::VectorXd& lower,
                                  const Eigen::VectorXd& diag,
                                  const Eigen::VectorXd& upper,
                                  const Eigen::VectorXd& rhs);

// Natural cubic spline through (x_i, y_i), strictly increasing x.
class CubicSpline {
public:
  CubicSpline(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

  double operator()(double x) const;

private:
  Eigen::VectorXd x_, y_, m_;  // m_ holds second derivatives at the knots
};

}  // namespace mfgcast
