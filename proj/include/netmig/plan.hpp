#pragma once

#include <optional>
#include <vector>

#include "netmig/colgen.hpp"

namespace netmig {

struct VisitCount {
  int pair = 0;
  int n = 0;  // endpoints of this pair migrated at the visit's site
};

struct Visit {
  int site = 0;
  Minutes start = 0;
  Minutes end = 0;
  std::vector<VisitCount> counts;
};

struct TechShift {
  int region = 0;
  int tech = 0;
  Minutes duration = 0;  // member of Delta
  std::vector<Visit> visits;
};

struct Plan {
  std::vector<TechShift> shifts;
  Cents cost = 0;
};

enum class PlanStatus { Optimal, Infeasible, TimedOut };

struct PlanResult {
  PlanStatus status = PlanStatus::Infeasible;
  std::optional<Plan> plan;
};

// Exact minimum-cost plan for one window's demand: per-region covering DP
// over remaining endpoint counts, combined across regions under the engineer
// cap. Output is canonical (shifts sorted, earliest start times).
PlanResult solve_plan(const Instance& inst, const WindowDemand& demand,
                      std::optional<double> time_limit_s = {});

// Independent checker: recomputes every plan invariant from raw fields
// (timing, travel gaps, durations, orientation rule, resource caps, and
// per-side pair totals against the demand).
bool verify_plan(const Plan& plan, const Instance& inst, const WindowDemand& demand);

// Same checks with the failure reason, for diagnostics.
bool verify_plan(const Plan& plan, const Instance& inst, const WindowDemand& demand,
                 std::string* why);

}  // namespace netmig
