#pragma once

#include <vector>

#include "netmig/plan.hpp"

namespace netmig {

struct OracleLimits {
  int max_sites = 6;
  int max_total_circuits = 6;
  int max_windows = 2;
  int max_tech_per_region = 2;
};

struct OracleResult {
  bool feasible = false;
  Cents cost = 0;
  std::vector<WindowDemand> m;  // optimal split, per window
  std::vector<Plan> plans;      // witnesses, per window
  long nodes = 0;
};

// Ground truth on tiny instances: enumerates every split of the pair counts
// across windows, then plans each window by brute force over endpoint-to-
// technician assignments. Shares no search code with the solver.
OracleResult solve_exact(const Instance& inst, const OracleLimits& limits = {});

// Exact plan cost for a single window, by the oracle's brute force.
// Returns Infeasible/Optimal (never TimedOut).
PlanResult oracle_plan_window(const Instance& inst, const WindowDemand& demand);

// Complete duplicate-free list of valid columns for a region, every visited
// site carrying at least one endpoint.
std::vector<ShiftColumn> enumerate_columns(const Instance& inst, int region);

// Farkas check of an INIT-phase certificate against the full column set:
// with rows normalized to >= form, pi >= 0, pi'A <= tol columnwise and
// pi'b > tol, where b = (m, -eta_tech, -alpha*eta_eng).
bool verify_farkas(const Instance& inst, const WindowDemand& demand, const CgDuals& duals,
                   const std::vector<ShiftColumn>& all_columns, double tol = 1e-7);

}  // namespace netmig
