#pragma once

#include <utility>
#include <vector>

#include "netmig/common.hpp"

namespace netmig {

enum class Sense : char { Le, Ge, Eq };

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Minimization LP with bounded variables and sparse rows.
struct LpModel {
  std::vector<double> lo, hi, obj;
  struct Row {
    std::vector<std::pair<int, double>> coefs;
    Sense sense = Sense::Ge;
    double rhs = 0.0;
  };
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(obj.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_var(double lo_, double hi_, double obj_);
  int add_row(Sense sense, double rhs);
  void set_coef(int row, int var, double a);
  // Appends a variable with bounds [0, inf) and the given row coefficients.
  int add_column(double obj_, const std::vector<std::pair<int, double>>& entries);
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  // Row duals for the minimization: Ge rows >= 0, Le rows <= 0, Eq free.
  std::vector<double> y;
  double objective = 0.0;
  double dual_objective = 0.0;
  long pivots = 0;
};

struct LpOptions {
  double tol = 1e-7;
  long max_pivots = 1'000'000;
};

LpSolution solve_lp(const LpModel& model, const LpOptions& opts = {});

}  // namespace netmig
