#pragma once

#include <functional>
#include <vector>

#include "netmig/mip.hpp"
#include "netmig/oracle.hpp"
#include "netmig/plan.hpp"

namespace netmig {

enum class CutKind { BendersFeas, BendersOpt, LbbdFeas, LbbdOpt };

// One separated cut with enough payload to re-instantiate or evaluate it.
// Benders kinds carry the dual data of (8) / the optimality cut; LBBD kinds
// carry the demand snapshot and, for optimality, the subproblem value.
struct Cut {
  CutKind kind = CutKind::BendersFeas;
  int window = 0;
  int tau = 0;
  std::vector<double> pair_coef;  // Benders: aggregated pair dual, per pair
  double rhs_const = 0.0;         // BendersFeas: sum pi_tech*eta + pi_eng*alpha*eta
  double cg_value = 0.0;          // BendersOpt
  std::vector<int> m_bar;         // BendersOpt + LBBD kinds: demand snapshot
  Cents cp_value = 0;             // LbbdOpt
};

struct CgProbe {
  int window = 0;
  std::vector<int> m;
  bool feasible = false;
  double value = 0.0;
  CgDuals duals;
};

struct Config {
  double target_gap = 0.10;
  double time_limit_s = 10800.0;
  bool propagate = true;
  PricingMode pricing = PricingMode::Hybrid;
  bool keep_columns = true;
  std::uint64_t seed = 0;  // echoed into outputs; the solve itself is deterministic
  bool lbbd_feas_paper_rhs = false;  // (10b) rhs |S_p|-1 instead of |P+|-1
  MipOptions mip;
  std::function<void(const CgProbe&)> probe_hook;  // test instrumentation
};

enum class RunStatus { Optimal, GapReached, Infeasible, TimedOut };

struct SolveReport {
  RunStatus status = RunStatus::Infeasible;
  bool has_incumbent = false;
  Cents upper_bound = 0;
  double lower_bound = 0.0;  // cents
  double gap = kInf;
  int iterations = 0;
  long cuts_benders_feas = 0;
  long cuts_benders_opt = 0;
  long cuts_lbbd_feas = 0;
  long cuts_lbbd_opt = 0;
  long columns = 0;
  long master_nodes = 0;
  std::vector<WindowDemand> m;  // incumbent split per window
  std::vector<Plan> plans;      // incumbent plans per window
  std::vector<Cut> cuts;        // everything ever separated
  double master_seconds = 0.0;
  double cg_seconds = 0.0;
  double cp_seconds = 0.0;
  double total_seconds = 0.0;
};

SolveReport run(const Instance& inst, const Config& config = {});

// Benders separation for one window at an integer master point. Emits the
// feasibility cut (8) from an INIT certificate, or an optimality cut when
// the CG value exceeds eta_bar; re-instantiated for every window when
// config.propagate is set.
std::vector<Cut> separate_benders(const Instance& inst, int window,
                                  const WindowDemand& m_bar, double eta_bar,
                                  ColumnPool& pool, const Config& config);

Cut make_lbbd_feas_cut(const Instance& inst, int window, const WindowDemand& m_bar,
                       int tau);
Cut make_lbbd_opt_cut(const Instance& inst, int window, const WindowDemand& m_bar,
                      Cents cp_value, int tau);

// Evaluates a cut at a complete candidate (m per window, eta per window in
// cents). For LBBD kinds the binaries take their weakest feasible setting.
bool cut_satisfied(const Cut& cut, const Instance& inst,
                   const std::vector<WindowDemand>& m, const std::vector<double>& eta,
                   bool paper_rhs = false, double tol = 1e-6);

// Sufficient condition for the optimality cut to stay tight at m_hat >= m_bar:
// a matching that assigns every extra endpoint side to a distinct technician
// already visiting that site with enough spare time (and no opposite-
// orientation work on the pair). True implies cost(m_hat) == cost(m_bar).
bool check_opt_cut_tight(const Instance& inst, const WindowDemand& m_hat,
                         const WindowDemand& m_bar, const Plan& plan);

}  // namespace netmig
