#pragma once

#include <vector>

#include "chebcenter/norm.hpp"

namespace chebcenter {

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double objective = 0.0;
  int iterations = 0;
};

// Small dense linear program
//
//   minimize c'x  subject to  rows (<=, =, >=)  and  x_j >= 0 or x_j free.
//
// Solved with a two-phase tableau simplex using Bland's rule, which rules
// out cycling on the degenerate vertices minimax problems produce.
// Intended for desk-scale problems (a few hundred variables at most).
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  void set_free(int var);
  void set_objective(int var, double coefficient);
  void add_row(const Vec& coefficients, RowSense sense, double rhs);

  LpSolution minimize(int max_iterations = 50000) const;

 private:
  struct Row {
    Vec coefficients;
    RowSense sense;
    double rhs;
  };

  int num_vars_;
  std::vector<bool> free_;
  Vec objective_;
  std::vector<Row> rows_;
};

}  // namespace chebcenter
