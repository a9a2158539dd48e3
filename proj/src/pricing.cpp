#include "netmig/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace netmig {

double reduced_cost(const ShiftColumn& col, const Instance& inst, const CgDuals& duals,
                    bool phase_one) {
  double rc = phase_one ? 0.0
                        : static_cast<double>(shift_cost_cents(inst.resources, col.duration));
  for (const OrientedCount& oc : col.counts) rc -= oc.n * duals.side(oc.pair, oc.at_lo);
  rc -= duals.pi_tech[col.region];
  rc -= duals.pi_eng;
  return rc;
}

namespace {

struct Item {
  int pair;
  bool at_lo;
  int site;
  int cap;
  double value;
};

// Shared enumerator: subsets of the region's sites x durations, allocation by
// greedy fill (equal endpoint weight theta). `ordered` prices the ascending-
// index visit order instead of the shortest path.
std::vector<ShiftColumn> price_impl(const PricingInput& in, bool ordered) {
  const Instance& inst = *in.inst;
  const Network& net = inst.network;
  const std::vector<int>& sites = net.region_sites[in.region];
  const int k = static_cast<int>(sites.size());
  if (k > 12) throw LimitError("pricing: region exceeds the exactness bound (12 sites)");
  std::vector<ShiftColumn> found;
  if (k == 0) return found;
  const Minutes theta = inst.resources.theta;

  std::vector<int> pos_in_region(net.sites.size(), -1);
  for (int i = 0; i < k; ++i) pos_in_region[sites[i]] = i;

  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) subset.push_back(sites[i]);

    Minutes travel = 0;
    if (ordered) {
      for (std::size_t i = 0; i + 1 < subset.size(); ++i)
        travel += net.travel[subset[i]][subset[i + 1]];
    } else {
      travel = min_path_travel(subset, net.travel);
    }

    // Candidate endpoints: one item per pair at its best reachable side
    // (at most one orientation per pair, the larger dual wins).
    std::vector<Item> items;
    for (int p = 0; p < static_cast<int>(net.pairs.size()); ++p) {
      const SitePair& sp = net.pairs[p];
      const bool lo_in = pos_in_region[sp.lo] >= 0 && (mask & (1 << pos_in_region[sp.lo]));
      const bool hi_in = pos_in_region[sp.hi] >= 0 && (mask & (1 << pos_in_region[sp.hi]));
      if (!lo_in && !hi_in) continue;
      Item it;
      it.pair = p;
      if (lo_in && (!hi_in || in.duals.side(p, true) >= in.duals.side(p, false)))
        it.at_lo = true;
      else
        it.at_lo = false;
      it.site = it.at_lo ? sp.lo : sp.hi;
      it.cap = sp.circuits;
      it.value = in.duals.side(p, it.at_lo);
      if (it.value <= 0.0) continue;
      items.push_back(it);
    }
    if (items.empty()) continue;
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      if (a.value != b.value) return a.value > b.value;
      return a.pair < b.pair;
    });

    for (Minutes dur : inst.resources.durations) {
      const Minutes budget = dur - travel;
      if (budget < theta * static_cast<Minutes>(subset.size())) continue;
      int slots = budget / theta;

      ShiftColumn col;
      col.region = in.region;
      col.duration = dur;
      std::vector<int> site_load(net.sites.size(), 0);
      double gain = 0.0;
      for (const Item& it : items) {
        if (slots <= 0) break;
        const int take = std::min(it.cap, slots);
        if (take <= 0) continue;
        col.counts.push_back({it.pair, it.at_lo, take});
        site_load[it.site] += take;
        gain += take * it.value;
        slots -= take;
      }
      bool covers = !col.counts.empty();
      for (int s : subset)
        if (site_load[s] == 0) covers = false;
      if (!covers) continue;  // a smaller subset dominates this one

      const double cost_term =
          in.phase_one ? 0.0 : static_cast<double>(shift_cost_cents(inst.resources, dur));
      const double rc = cost_term - gain - in.duals.pi_tech[in.region] - in.duals.pi_eng;
      if (rc < in.rc_threshold) {
        std::sort(col.counts.begin(), col.counts.end(),
                  [](const OrientedCount& a, const OrientedCount& b) {
                    return a.pair != b.pair ? a.pair < b.pair : a.at_lo > b.at_lo;
                  });
        found.push_back(std::move(col));
      }
    }
  }

  std::sort(found.begin(), found.end(), [&](const ShiftColumn& a, const ShiftColumn& b) {
    const double ra = reduced_cost(a, inst, in.duals, in.phase_one);
    const double rb = reduced_cost(b, inst, in.duals, in.phase_one);
    if (ra != rb) return ra < rb;
    if (a.duration != b.duration) return a.duration < b.duration;
    return a.counts < b.counts;
  });
  if (static_cast<int>(found.size()) > in.max_cols) found.resize(in.max_cols);
  return found;
}

}  // namespace

std::vector<ShiftColumn> price_general(const PricingInput& in) {
  return price_impl(in, /*ordered=*/false);
}

std::vector<ShiftColumn> price_ordered(const PricingInput& in) {
  return price_impl(in, /*ordered=*/true);
}

}  // namespace netmig
