#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "netmig/lp.hpp"

namespace netmig {

struct MipModel {
  LpModel lp;
  std::vector<char> integer;  // per variable
};

enum class MipStatus { Optimal, Feasible, Infeasible };

struct MipSolution {
  MipStatus status = MipStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  double best_bound = -kInf;
  double gap = 0.0;
  long nodes = 0;
  bool timed_out = false;
  std::vector<double> bound_trace;  // global bound after each processed node
};

// Called at LP-integral nodes with the candidate point (integer variables
// rounded). Returned rows are added globally and the node is re-solved; the
// point becomes incumbent only once no rows come back.
using LazySeparator = std::function<std::vector<LpModel::Row>(const std::vector<double>&)>;

struct MipOptions {
  long max_nodes = 1'000'000;
  double int_tol = 1e-6;
  std::optional<double> time_limit_s;
  LpOptions lp;
};

MipSolution solve_mip(const MipModel& model, double rel_gap,
                      const LazySeparator& separator = nullptr,
                      const MipOptions& opts = {});

// Most-fractional integer variable (|frac - 0.5| minimal, ties by lowest
// index); -1 when all integer variables are within tol of integrality.
int branch_select(const std::vector<double>& x, const std::vector<char>& integer,
                  double tol = 1e-6);

}  // namespace netmig
