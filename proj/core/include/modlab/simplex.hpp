#pragma once

#include <Eigen/Dense>
#include <vector>

namespace modlab {

/// maximize c^T x subject to A x = b, 0 <= x <= upper (entries may be inf).
struct LinearProgram {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::VectorXd upper;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  Eigen::VectorXd x;
  double objective = 0.0;
  /// Indices of the structural columns in the final basis.
  std::vector<int> basis;
  /// Solution of B^T y = c_B over the structural basic columns.
  Eigen::VectorXd duals;
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 50000;
  double tolerance = 1e-10;
  /// Consecutive degenerate pivots after which pricing switches from the
  /// largest reduced cost to Bland's smallest-index rule.
  int degenerate_switch = 50;
};

/// Dense two-phase bounded-variable simplex.
[[nodiscard]] LpSolution solve_lp(const LinearProgram& lp,
                                  const SimplexOptions& options = {});

}  // namespace modlab
