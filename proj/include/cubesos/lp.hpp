#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace cubesos {

enum class RowSense { le, ge, eq };
enum class LpStatus { optimal, unbounded, infeasible };
std::string to_string(LpStatus s);

// optimize c'x  s.t.  A_i x (sense_i) b_i,  x >= 0 except where is_free.
struct LinearProgram {
  bool maximize = true;
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<RowSense> sense;  // empty means all le
  std::vector<bool> is_free;    // empty means all nonnegative
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
  // Multipliers y of the rows: c - A'y is dual feasible at the optimum,
  // and b'y equals the objective.
  Eigen::VectorXd duals;
  double max_violation = 0.0;  // recomputed from x
  int pivots = 0;
};

// Dense two-phase tableau simplex with Bland's rule.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace cubesos
