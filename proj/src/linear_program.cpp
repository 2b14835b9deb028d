#include "chebcenter/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chebcenter {

namespace {

constexpr double kCostTol = 1e-10;
constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-9;

// Tableau with the reduced-cost row stored last and the rhs column last.
class Tableau {
 public:
  Tableau(int rows, int cols) : t_(Mat::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  double& at(int r, int c) { return t_(r, c); }
  double at(int r, int c) const { return t_(r, c); }
  double& rhs(int r) { return t_(r, cols()); }
  double rhs(int r) const { return t_(r, cols()); }
  double& cost(int c) { return t_(rows(), c); }
  double objective() const { return -t_(rows(), cols()); }
  std::vector<int>& basis() { return basis_; }
  const std::vector<int>& basis() const { return basis_; }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
  }

  // Rebuild the reduced-cost row for cost vector c (columns beyond c.size()
  // cost zero).
  void price(const Vec& c) {
    t_.row(rows()).setZero();
    for (int j = 0; j < c.size(); ++j) t_(rows(), j) = c(j);
    for (int i = 0; i < rows(); ++i) {
      const int b = basis_[i];
      const double cb = b < c.size() ? c(b) : 0.0;
      if (cb != 0.0) t_.row(rows()) -= cb * t_.row(i);
    }
  }

  void drop_row(int r) {
    const int last = rows() - 1;
    if (r != last) {
      t_.row(r).swap(t_.row(last));
      basis_[r] = basis_[last];
    }
    // Move the cost row up one position.
    t_.row(last) = t_.row(last + 1);
    t_.conservativeResize(last + 1, Eigen::NoChange);
    basis_.pop_back();
  }

  // Bland's rule: lowest-index entering column, lowest-index leaving basic
  // variable among ratio ties.
  LpStatus run(const std::vector<bool>& allowed, int& iterations, int max_iterations) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (allowed[j] && cost(j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      if (iterations >= max_iterations) return LpStatus::IterationLimit;

      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        const double slack = 1e-12 * std::max(1.0, std::abs(best));
        if (leave < 0 || ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + slack && basis_[i] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
      ++iterations;
    }
  }

 private:
  Mat t_;
  std::vector<int> basis_;
};

}  // namespace

LinearProgram::LinearProgram(int num_vars)
    : num_vars_(num_vars), free_(num_vars, false), objective_(Vec::Zero(num_vars)) {
  if (num_vars < 1) throw Error(ErrorCode::InvalidArgument, "LP needs at least one variable");
}

void LinearProgram::set_free(int var) { free_.at(var) = true; }

void LinearProgram::set_objective(int var, double coefficient) { objective_(var) = coefficient; }

void LinearProgram::add_row(const Vec& coefficients, RowSense sense, double rhs) {
  if (coefficients.size() != num_vars_) {
    throw Error(ErrorCode::DimensionMismatch, "LP row length differs from variable count");
  }
  rows_.push_back({coefficients, sense, rhs});
}

LpSolution LinearProgram::minimize(int max_iterations) const {
  // Column layout: structural (positive part), negative parts of free
  // variables, slack/surplus, artificials.
  std::vector<int> neg_col(num_vars_, -1);
  int cols = num_vars_;
  for (int j = 0; j < num_vars_; ++j) {
    if (free_[j]) neg_col[j] = cols++;
  }
  const int m = num_rows();
  std::vector<RowSense> sense(m);
  std::vector<double> sign(m, 1.0);
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i) {
    sense[i] = rows_[i].sense;
    if (rows_[i].rhs < 0.0) {
      sign[i] = -1.0;
      if (sense[i] == RowSense::LessEqual) sense[i] = RowSense::GreaterEqual;
      else if (sense[i] == RowSense::GreaterEqual) sense[i] = RowSense::LessEqual;
    }
    if (sense[i] != RowSense::Equal) slack_col[i] = cols++;
  }
  const int first_artificial = cols;
  std::vector<int> art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (sense[i] != RowSense::LessEqual) art_col[i] = cols++;
  }

  Tableau tab(m, cols);
  for (int i = 0; i < m; ++i) {
    const Row& row = rows_[i];
    for (int j = 0; j < num_vars_; ++j) {
      const double a = sign[i] * row.coefficients(j);
      tab.at(i, j) = a;
      if (neg_col[j] >= 0) tab.at(i, neg_col[j]) = -a;
    }
    tab.rhs(i) = sign[i] * row.rhs;
    if (slack_col[i] >= 0) tab.at(i, slack_col[i]) = sense[i] == RowSense::LessEqual ? 1.0 : -1.0;
    if (art_col[i] >= 0) {
      tab.at(i, art_col[i]) = 1.0;
      tab.basis()[i] = art_col[i];
    } else {
      tab.basis()[i] = slack_col[i];
    }
  }

  LpSolution out;
  std::vector<bool> allowed(cols, true);

  if (first_artificial < cols) {
    Vec phase1 = Vec::Zero(cols);
    for (int j = first_artificial; j < cols; ++j) phase1(j) = 1.0;
    tab.price(phase1);
    const LpStatus st = tab.run(allowed, out.iterations, max_iterations);
    if (st == LpStatus::IterationLimit) {
      out.status = st;
      return out;
    }
    double scale = 1.0;
    for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(rows_[i].rhs));
    if (tab.objective() > kFeasTol * scale) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (int i = tab.rows() - 1; i >= 0; --i) {
      if (tab.basis()[i] < first_artificial) continue;
      int c = -1;
      double best = kPivotTol;
      for (int j = 0; j < first_artificial; ++j) {
        if (std::abs(tab.at(i, j)) > best) {
          best = std::abs(tab.at(i, j));
          c = j;
        }
      }
      if (c >= 0) tab.pivot(i, c);
      else tab.drop_row(i);
    }
    for (int j = first_artificial; j < cols; ++j) allowed[j] = false;
  }

  Vec phase2 = Vec::Zero(cols);
  for (int j = 0; j < num_vars_; ++j) {
    phase2(j) = objective_(j);
    if (neg_col[j] >= 0) phase2(neg_col[j]) = -objective_(j);
  }
  tab.price(phase2);
  out.status = tab.run(allowed, out.iterations, max_iterations);
  if (out.status != LpStatus::Optimal) return out;

  Vec values = Vec::Zero(cols);
  for (int i = 0; i < tab.rows(); ++i) values(tab.basis()[i]) = tab.rhs(i);
  out.x = Vec::Zero(num_vars_);
  for (int j = 0; j < num_vars_; ++j) {
    out.x(j) = values(j) - (neg_col[j] >= 0 ? values(neg_col[j]) : 0.0);
  }
  out.objective = objective_.dot(out.x);
  return out;
}

}  // namespace chebcenter
