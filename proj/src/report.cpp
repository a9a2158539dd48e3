#include "netmig/report.hpp"

#include <sstream>

namespace netmig {

namespace {

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Optimal:
      return "optimal";
    case RunStatus::GapReached:
      return "gap_reached";
    case RunStatus::Infeasible:
      return "infeasible";
    case RunStatus::TimedOut:
      return "timed_out";
  }
  return "unknown";
}

}  // namespace

Report summarize(const SolveReport& solution, const Instance& inst) {
  Report rep;
  long total_minutes = 0;
  long busy_minutes = 0;
  for (const Plan& plan : solution.plans) {
    Report::WindowRow row;
    long w_total = 0, w_busy = 0;
    for (const TechShift& shift : plan.shifts) {
      row.cost += shift_cost_cents(inst.resources, shift.duration);
      ++row.shifts;
      ++rep.duration_histogram[shift.duration];
      w_total += shift.duration;
      for (std::size_t v = 0; v < shift.visits.size(); ++v) {
        w_busy += shift.visits[v].end - shift.visits[v].start;
        if (v > 0)
          w_busy += inst.network.travel[shift.visits[v - 1].site][shift.visits[v].site];
      }
    }
    row.working_fraction = w_total > 0 ? static_cast<double>(w_busy) / w_total : 0.0;
    rep.cost += row.cost;
    rep.shifts += row.shifts;
    total_minutes += w_total;
    busy_minutes += w_busy;
    rep.windows.push_back(row);
  }
  rep.working_fraction =
      total_minutes > 0 ? static_cast<double>(busy_minutes) / total_minutes : 0.0;
  return rep;
}

std::string report_csv_header() {
  return "instance,status,cost_cents,lb_cents,gap,iterations,cuts_bd_feas,cuts_bd_opt,"
         "cuts_lbbd_feas,cuts_lbbd_opt,columns,shifts,wf";
}

std::string report_csv_row(const std::string& instance_name, const SolveReport& solution,
                           const Report& report) {
  std::ostringstream os;
  os << instance_name << ',' << status_name(solution.status) << ',';
  if (solution.has_incumbent)
    os << solution.upper_bound;
  os << ',' << static_cast<long long>(solution.lower_bound) << ',';
  if (solution.gap != kInf)
    os << solution.gap;
  os << ',' << solution.iterations << ',' << solution.cuts_benders_feas << ','
     << solution.cuts_benders_opt << ',' << solution.cuts_lbbd_feas << ','
     << solution.cuts_lbbd_opt << ',' << solution.columns << ',' << report.shifts << ','
     << report.working_fraction;
  return os.str();
}

}  // namespace netmig
