#include "netmig/colgen.hpp"

#include <algorithm>
#include <numeric>

namespace netmig {

int WindowDemand::total() const {
  return std::accumulate(m.begin(), m.end(), 0);
}

// Coverage has one row per endpoint side (rows 2p and 2p+1 share the pair's
// demand): both ends of every migrated circuit must be staffed in the same
// window.
LpModel build_rmp(const Instance& inst, const WindowDemand& demand,
                  const std::vector<ShiftColumn>& pool, bool phase_one) {
  const Network& net = inst.network;
  const int num_pairs = static_cast<int>(net.pairs.size());
  const int num_regions = net.num_regions;
  if (static_cast<int>(demand.m.size()) != num_pairs)
    throw ValidationError("build_rmp: demand size mismatch");

  LpModel lp;
  for (int p = 0; p < num_pairs; ++p) {
    if (demand.m[p] < 0) throw ValidationError("build_rmp: negative demand");
    lp.add_row(Sense::Ge, demand.m[p]);  // lo side
    lp.add_row(Sense::Ge, demand.m[p]);  // hi side
  }
  for (int r = 0; r < num_regions; ++r)
    lp.add_row(Sense::Le, inst.resources.eta_tech[r]);
  lp.add_row(Sense::Le, inst.resources.max_shifts_per_window());

  for (const ShiftColumn& col : pool) {
    const double cost =
        phase_one ? 0.0 : static_cast<double>(shift_cost_cents(inst.resources, col.duration));
    std::vector<std::pair<int, double>> entries;
    for (const OrientedCount& oc : col.counts)
      entries.emplace_back(2 * oc.pair + (oc.at_lo ? 0 : 1), static_cast<double>(oc.n));
    entries.emplace_back(2 * num_pairs + col.region, 1.0);
    entries.emplace_back(2 * num_pairs + num_regions, 1.0);
    lp.add_column(cost, entries);
  }

  if (phase_one) {
    for (int row = 0; row < 2 * num_pairs; ++row)
      if (demand.m[row / 2] > 0) lp.add_column(1.0, {{row, 1.0}});
  }
  return lp;
}

CgDuals extract_duals(const Instance& inst, const LpSolution& sol) {
  const int num_pairs = static_cast<int>(inst.network.pairs.size());
  const int num_regions = inst.network.num_regions;
  CgDuals d;
  d.pi_side.assign(sol.y.begin(), sol.y.begin() + 2 * num_pairs);
  d.pi_tech.assign(sol.y.begin() + 2 * num_pairs,
                   sol.y.begin() + 2 * num_pairs + num_regions);
  d.pi_eng = sol.y[2 * num_pairs + num_regions];
  return d;
}

namespace {

// One pricing round: ordered pricer first (when the mode allows it), the
// general pricer only once ordered finds nothing. Returns new pool columns.
int price_round(const Instance& inst, const CgDuals& duals, ColumnPool& pool,
                PricingMode mode, bool phase_one) {
  int added = 0;
  PricingInput in;
  in.inst = &inst;
  in.duals = duals;
  in.phase_one = phase_one;
  if (mode != PricingMode::GeneralOnly) {
    for (int r = 0; r < inst.network.num_regions; ++r) {
      in.region = r;
      for (ShiftColumn& col : price_ordered(in))
        if (pool.add(std::move(col))) ++added;
    }
    if (added > 0) return added;
  }
  if (mode != PricingMode::OrderedOnly) {
    for (int r = 0; r < inst.network.num_regions; ++r) {
      in.region = r;
      for (ShiftColumn& col : price_general(in))
        if (pool.add(std::move(col))) ++added;
    }
  }
  return added;
}

}  // namespace

InitResult init_phase(const Instance& inst, const WindowDemand& demand, ColumnPool& pool,
                      PricingMode mode) {
  InitResult res;
  const double eps = 1e-6 * (1.0 + demand.total());
  while (true) {
    LpModel rmp = build_rmp(inst, demand, pool.columns(), /*phase_one=*/true);
    LpSolution sol = solve_lp(rmp);
    if (sol.status != LpStatus::Optimal)
      throw NumericalError("init_phase: phase-one RMP did not solve");
    if (sol.objective <= eps) {
      res.feasible = true;
      res.duals = extract_duals(inst, sol);
      return res;
    }
    CgDuals duals = extract_duals(inst, sol);
    const int added = price_round(inst, duals, pool, mode, /*phase_one=*/true);
    res.columns_generated += added;
    if (added == 0) {
      // No column prices negative under these duals: Farkas certificate.
      res.feasible = false;
      res.duals = duals;
      return res;
    }
  }
}

CgResult solve_cg(const Instance& inst, const WindowDemand& demand, ColumnPool& pool,
                  PricingMode mode) {
  CgResult res;
  while (true) {
    LpModel rmp = build_rmp(inst, demand, pool.columns(), /*phase_one=*/false);
    LpSolution sol = solve_lp(rmp);
    if (sol.status != LpStatus::Optimal)
      throw NumericalError("solve_cg: RMP not optimal; run init_phase first");
    CgDuals duals = extract_duals(inst, sol);
    const int added = price_round(inst, duals, pool, mode, /*phase_one=*/false);
    res.columns_generated += added;
    if (added == 0) {
      res.feasible = true;
      res.value = sol.objective;
      res.duals = duals;
      return res;
    }
  }
}

}  // namespace netmig
