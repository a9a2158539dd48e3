#pragma once

#include <vector>

#include "netmig/lp.hpp"
#include "netmig/pricing.hpp"

namespace netmig {

enum class PricingMode { OrderedOnly, Hybrid, GeneralOnly };

// Per-pair migration counts for one maintenance window.
struct WindowDemand {
  std::vector<int> m;  // indexed like Network::pairs

  int total() const;
};

struct CgResult {
  bool feasible = false;
  double value = 0.0;  // LP optimum of the shift-selection relaxation
  CgDuals duals;       // optimal duals, or the infeasibility certificate
  int columns_generated = 0;
};

// Row layout of the restricted master: pairs first (>= m), then one row per
// region (<= eta_tech), then the engineer row (<= alpha * eta_eng). In phase
// one, columns cost 0 and an artificial rho (cost 1) is attached to every
// coverage row with positive rhs.
LpModel build_rmp(const Instance& inst, const WindowDemand& demand,
                  const std::vector<ShiftColumn>& pool, bool phase_one = false);

CgDuals extract_duals(const Instance& inst, const LpSolution& sol);

struct InitResult {
  bool feasible = false;
  CgDuals duals;  // Farkas certificate when infeasible
  int columns_generated = 0;
};

// Phase-one column generation. Feasible iff the artificial objective reaches
// zero; otherwise the returned duals certify infeasibility over the full
// column set (the finishing pricer priced every column nonnegative).
InitResult init_phase(const Instance& inst, const WindowDemand& demand, ColumnPool& pool,
                      PricingMode mode = PricingMode::Hybrid);

// Full CG on the real objective. Requires a pool that already covers the
// demand (run init_phase first). Columns are retained in the pool.
CgResult solve_cg(const Instance& inst, const WindowDemand& demand, ColumnPool& pool,
                  PricingMode mode = PricingMode::Hybrid);

}  // namespace netmig
