#pragma once

#include <vector>

#include "netmig/columns.hpp"

namespace netmig {

// Duals of the per-window restricted master: one per coverage row (two per
// pair, one per endpoint side; >= rows, so >= 0), one per region and one
// engineer dual (<= rows, so <= 0).
struct CgDuals {
  std::vector<double> pi_side;  // 2 * pair + (at_lo ? 0 : 1)
  std::vector<double> pi_tech;
  double pi_eng = 0.0;

  double side(int pair, bool at_lo) const { return pi_side[2 * pair + (at_lo ? 0 : 1)]; }
};

struct PricingInput {
  const Instance* inst = nullptr;
  int region = 0;
  CgDuals duals;
  bool phase_one = false;  // duration cost term replaced by 0
  int max_cols = 10;
  double rc_threshold = -1e-6;
};

// Reduced cost in cents: cost(duration) - sum n * pi_pair - pi_tech_r - pi_eng
// (cost term 0 in phase one).
double reduced_cost(const ShiftColumn& col, const Instance& inst, const CgDuals& duals,
                    bool phase_one = false);

// Exact pricers enumerating site subsets x durations with a greedy endpoint
// fill (equal item weight theta makes the greedy exact under per-pair caps).
// price_general uses the shortest path over each subset; price_ordered
// restricts to the ascending-index visit order. Both return columns with
// reduced cost below rc_threshold, best first, at most max_cols.
std::vector<ShiftColumn> price_general(const PricingInput& in);
std::vector<ShiftColumn> price_ordered(const PricingInput& in);

}  // namespace netmig
