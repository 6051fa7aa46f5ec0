#pragma once

#include <array>
#include <vector>

#include "mfgcast/functional.hpp"

namespace mfgcast {

// Equality constraints realized by variable elimination: the whole u
// slice at t=0 and the m slices at t in {0, h, 2h} are pinned, and all
// edge values of unpinned columns are dependent on their two interior
// neighbours through the one-sided zero-derivative rule.
struct ConstraintSet {
  Slice u0;
  std::array<Slice, 3> m0h2;
};

// Smallest edit giving a slice vanishing one-sided edge derivatives:
// moves f[1] on the left (keeping f[0], the anchored value) and f[n-1]
// on the right.
Slice neumann_adjust_value(Slice f, const Grid& g);

// Validates that every pinned slice satisfies the discrete Neumann
// conditions; throws otherwise.
ConstraintSet make_constraints(const Slice& u0, const std::array<Slice, 3>& m_slices,
                               const Grid& g);

struct SolveOptions {
  // The cap is a safety net; the intended stopping rule is the optimality
  // tolerance, which badly conditioned problems reach only slowly.
  int max_iterations = 200000;
  double tolerance = 1e-5;
  int history = 10;
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  int max_line_search = 60;
  double iterate_bound = 0.0;  // max-norm bound on free variables; 0 disables
};

struct SolveResult {
  State state;
  int iterations = 0;
  double final_optimality = 0.0;
  std::vector<double> objective_trace;
  double max_pinned_violation = 0.0;
  double max_neumann_violation = 0.0;
  bool hit_iteration_cap = false;
  bool line_search_stalled = false;
};

// u extended constant in time; m equals the data for the known three
// columns and their average afterwards.
State build_initial_guess(const Slice& u0, const std::array<Slice, 3>& m_slices,
                          const Grid& g);

int free_count(const Grid& g);
Eigen::VectorXd pack_free(const State& s, const ConstraintSet& c, const Grid& g);
State unpack_free(const Eigen::VectorXd& v, const ConstraintSet& c, const Grid& g);

// Limited-memory quasi-Newton descent on the free variables with Armijo
// backtracking.  Deterministic given identical inputs.  When start is
// null the paper-style initial guess is built from the constraints.
SolveResult minimize(const MfgParams& p, const Grid& g, const ConstraintSet& c,
                     const Forcing& forcing, const SolveOptions& opts = {},
                     const State* start = nullptr);

}  // namespace mfgcast
