#include "netmig/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace netmig {

namespace {

constexpr Cents kBig = std::numeric_limits<Cents>::max() / 4;

struct Token {
  int pair;
  bool at_lo;
  int site;
};

// Travel by direct permutation search, kept separate from the solver's path
// machinery on purpose.
Minutes perm_travel(std::vector<int> sites, const std::vector<std::vector<Minutes>>& travel,
                    std::vector<int>* order_out = nullptr) {
  std::sort(sites.begin(), sites.end());
  if (sites.size() <= 1) {
    if (order_out) *order_out = sites;
    return 0;
  }
  Minutes best = std::numeric_limits<Minutes>::max();
  std::vector<int> best_order = sites;
  std::vector<int> perm = sites;
  do {
    Minutes t = 0;
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) t += travel[perm[i]][perm[i + 1]];
    if (t < best) {
      best = t;
      best_order = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (order_out) *order_out = best_order;
  return best;
}

Minutes fit_duration(const Resources& res, Minutes span) {
  for (Minutes d : res.durations)
    if (span <= d) return d;
  return -1;
}

// Cost of one slot's token multiset, or -1 when invalid.
Cents slot_cost(const Instance& inst, const std::vector<Token>& tokens,
                const std::vector<int>& members) {
  if (members.empty()) return 0;
  std::map<int, int> orient;  // pair -> +1 lo, -1 hi seen
  std::vector<int> sites;
  for (int i : members) {
    const Token& tk = tokens[i];
    int& o = orient[tk.pair];
    const int want = tk.at_lo ? 1 : -1;
    if (o == 0)
      o = want;
    else if (o != want)
      return -1;  // both endpoints of a pair in one shift
    sites.push_back(tk.site);
  }
  const Minutes span =
      inst.resources.theta * static_cast<Minutes>(members.size()) +
      perm_travel(sites, inst.network.travel);
  const Minutes d = fit_duration(inst.resources, span);
  if (d < 0) return -1;
  return shift_cost_cents(inst.resources, d);
}

struct RegionAnswer {
  // best cost and witness assignment per active-technician count
  std::vector<Cents> cost_by_active;
  std::vector<std::vector<int>> witness_by_active;  // token -> slot
};

RegionAnswer brute_force_region(const Instance& inst, int region,
                                const std::vector<Token>& tokens, long* nodes) {
  const int slots = inst.resources.eta_tech[region];
  RegionAnswer ans;
  ans.cost_by_active.assign(slots + 1, kBig);
  ans.witness_by_active.assign(slots + 1, {});
  if (tokens.empty()) {
    ans.cost_by_active[0] = 0;
    return ans;
  }
  if (slots == 0) return ans;
  double combos = 1;
  for (std::size_t i = 0; i < tokens.size(); ++i) combos *= slots;
  if (combos > 5e6) throw LimitError("oracle: region assignment space too large");

  std::vector<int> assign(tokens.size(), 0);
  while (true) {
    ++*nodes;
    std::vector<std::vector<int>> groups(slots);
    for (std::size_t i = 0; i < tokens.size(); ++i) groups[assign[i]].push_back(i);
    Cents total = 0;
    int active = 0;
    bool ok = true;
    for (int s = 0; s < slots && ok; ++s) {
      const Cents c = slot_cost(inst, tokens, groups[s]);
      if (c < 0)
        ok = false;
      else {
        total += c;
        if (!groups[s].empty()) ++active;
      }
    }
    if (ok && total < ans.cost_by_active[active]) {
      ans.cost_by_active[active] = total;
      ans.witness_by_active[active] = assign;
    }
    // next assignment vector
    std::size_t i = 0;
    for (; i < assign.size(); ++i) {
      if (++assign[i] < slots) break;
      assign[i] = 0;
    }
    if (i == assign.size()) break;
  }
  return ans;
}

TechShift shift_from_slot(const Instance& inst, int region, const std::vector<Token>& tokens,
                          const std::vector<int>& members) {
  std::vector<int> sites;
  for (int i : members) sites.push_back(tokens[i].site);
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  std::vector<int> order;
  const Minutes travel = perm_travel(sites, inst.network.travel, &order);
  const Minutes span = inst.resources.theta * static_cast<Minutes>(members.size()) + travel;

  TechShift shift;
  shift.region = region;
  shift.duration = fit_duration(inst.resources, span);
  Minutes clock = 0;
  for (std::size_t v = 0; v < order.size(); ++v) {
    if (v > 0) clock += inst.network.travel[order[v - 1]][order[v]];
    Visit visit;
    visit.site = order[v];
    visit.start = clock;
    std::map<int, int> here;  // pair -> n at this site
    for (int i : members)
      if (tokens[i].site == order[v]) ++here[tokens[i].pair];
    int total = 0;
    for (auto [p, n] : here) {
      visit.counts.push_back({p, n});
      total += n;
    }
    visit.end = visit.start + inst.resources.theta * total;
    clock = visit.end;
    shift.visits.push_back(std::move(visit));
  }
  return shift;
}

}  // namespace

PlanResult oracle_plan_window(const Instance& inst, const WindowDemand& demand) {
  const Network& net = inst.network;
  long nodes = 0;

  std::vector<std::vector<Token>> tokens(net.num_regions);
  for (int p = 0; p < static_cast<int>(net.pairs.size()); ++p) {
    const SitePair& sp = net.pairs[p];
    for (int k = 0; k < demand.m[p]; ++k) {
      tokens[net.region_of(sp.lo)].push_back({p, true, sp.lo});
      tokens[net.region_of(sp.hi)].push_back({p, false, sp.hi});
    }
  }

  std::vector<RegionAnswer> answers;
  for (int r = 0; r < net.num_regions; ++r)
    answers.push_back(brute_force_region(inst, r, tokens[r], &nodes));

  // Combine under the engineer cap by direct recursion over regions.
  const int budget = inst.resources.max_shifts_per_window();
  const int regions = net.num_regions;
  std::vector<std::vector<Cents>> h(regions + 1, std::vector<Cents>(budget + 1, kBig));
  for (int b = 0; b <= budget; ++b) h[0][b] = 0;
  for (int r = 0; r < regions; ++r)
    for (int b = 0; b <= budget; ++b) {
      if (h[r][b] >= kBig) continue;
      for (int k = 0; k < static_cast<int>(answers[r].cost_by_active.size()); ++k) {
        if (answers[r].cost_by_active[k] >= kBig || b + k > budget) continue;
        h[r + 1][b + k] = std::min(h[r + 1][b + k], h[r][b] + answers[r].cost_by_active[k]);
      }
    }
  Cents best = kBig;
  for (int b = 0; b <= budget; ++b) best = std::min(best, h[regions][b]);
  if (best >= kBig) return {PlanStatus::Infeasible, std::nullopt};

  // Witness: walk the recursion again, lowest budget and k first.
  Plan plan;
  {
    int b_end = -1;
    for (int b = 0; b <= budget && b_end < 0; ++b)
      if (h[regions][b] == best) b_end = b;
    int b = b_end;
    std::vector<int> chosen(regions, 0);
    for (int r = regions - 1; r >= 0; --r) {
      for (int k = 0; k < static_cast<int>(answers[r].cost_by_active.size()); ++k) {
        if (k > b || answers[r].cost_by_active[k] >= kBig || h[r][b - k] >= kBig) continue;
        if (h[r][b - k] + answers[r].cost_by_active[k] == h[r + 1][b]) {
          chosen[r] = k;
          b -= k;
          break;
        }
      }
    }
    for (int r = 0; r < regions; ++r) {
      if (tokens[r].empty()) continue;
      const std::vector<int>& assign = answers[r].witness_by_active[chosen[r]];
      const int slots = inst.resources.eta_tech[r];
      for (int s = 0; s < slots; ++s) {
        std::vector<int> members;
        for (std::size_t i = 0; i < assign.size(); ++i)
          if (assign[i] == s) members.push_back(static_cast<int>(i));
        if (members.empty()) continue;
        plan.shifts.push_back(shift_from_slot(inst, r, tokens[r], members));
      }
    }
  }
  int tech = 0;
  int last_region = -1;
  for (TechShift& s : plan.shifts) {
    if (s.region != last_region) {
      tech = 0;
      last_region = s.region;
    }
    s.tech = tech++;
  }
  plan.cost = 0;
  for (const TechShift& s : plan.shifts)
    plan.cost += shift_cost_cents(inst.resources, s.duration);
  return {PlanStatus::Optimal, std::move(plan)};
}

OracleResult solve_exact(const Instance& inst, const OracleLimits& limits) {
  const Network& net = inst.network;
  const Resources& res = inst.resources;
  if (static_cast<int>(net.sites.size()) > limits.max_sites)
    throw LimitError("oracle: too many sites");
  int total_circuits = 0;
  for (const SitePair& p : net.pairs) total_circuits += p.circuits;
  if (total_circuits > limits.max_total_circuits)
    throw LimitError("oracle: too many circuits");
  if (res.windows > limits.max_windows) throw LimitError("oracle: too many windows");
  for (int e : res.eta_tech)
    if (e > limits.max_tech_per_region)
      throw LimitError("oracle: too many technicians per region");

  const int P = static_cast<int>(net.pairs.size());
  const int W = res.windows;
  OracleResult out;

  std::map<std::vector<int>, PlanResult> window_cache;
  auto plan_of = [&](const std::vector<int>& m) -> const PlanResult& {
    auto it = window_cache.find(m);
    if (it == window_cache.end()) {
      WindowDemand d{m};
      it = window_cache.emplace(m, oracle_plan_window(inst, d)).first;
    }
    return it->second;
  };

  std::vector<std::vector<int>> split(W, std::vector<int>(P, 0));
  std::vector<int> window_load(W, 0);
  Cents best = kBig;
  std::vector<std::vector<int>> best_split;

  // Distribute every pair's circuits across windows, respecting eta_cir.
  auto rec = [&](auto&& self, int p) -> void {
    if (p == P) {
      ++out.nodes;
      Cents total = 0;
      for (int w = 0; w < W; ++w) {
        const PlanResult& pr = plan_of(split[w]);
        if (pr.status != PlanStatus::Optimal) return;
        total += pr.plan->cost;
        if (total >= best) return;
      }
      if (total < best) {
        best = total;
        best_split.assign(W, {});
        for (int w = 0; w < W; ++w) best_split[w] = split[w];
      }
      return;
    }
    const int phi = net.pairs[p].circuits;
    // compositions of phi into W nonnegative parts
    std::vector<int> parts(W, 0);
    auto comp = [&](auto&& inner, int pos, int left) -> void {
      if (pos == W - 1) {
        parts[pos] = left;
        if (window_load[pos] + left > res.eta_cir) return;
        for (int w = 0; w < W; ++w) {
          split[w][p] = parts[w];
          window_load[w] += parts[w];
        }
        self(self, p + 1);
        for (int w = 0; w < W; ++w) window_load[w] -= parts[w];
        return;
      }
      for (int take = 0; take <= left; ++take) {
        if (window_load[pos] + take > res.eta_cir) continue;
        parts[pos] = take;
        inner(inner, pos + 1, left - take);
      }
    };
    comp(comp, 0, phi);
  };
  rec(rec, 0);

  if (best >= kBig) {
    out.feasible = false;
    return out;
  }
  out.feasible = true;
  out.cost = best;
  for (int w = 0; w < W; ++w) {
    out.m.push_back(WindowDemand{best_split[w]});
    out.plans.push_back(*plan_of(best_split[w]).plan);
  }
  return out;
}

std::vector<ShiftColumn> enumerate_columns(const Instance& inst, int region) {
  const Network& net = inst.network;
  const Resources& res = inst.resources;
  const std::vector<int>& sites = net.region_sites[region];
  if (sites.size() > 4) throw LimitError("enumerate_columns: region too large");
  if (res.durations.back() / res.theta > 24)
    throw LimitError("enumerate_columns: endpoint capacity too large");

  ColumnPool pool;
  const int k = static_cast<int>(sites.size());
  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) subset.push_back(sites[i]);
    const Minutes travel = perm_travel(subset, net.travel);

    std::vector<char> in_subset(net.sites.size(), 0);
    for (int s : subset) in_subset[s] = 1;
    // pairs usable from this subset, with their side options
    struct Opt {
      int pair;
      bool lo_ok, hi_ok;
      int cap;
    };
    std::vector<Opt> opts;
    for (int p = 0; p < static_cast<int>(net.pairs.size()); ++p) {
      const SitePair& sp = net.pairs[p];
      const bool lo_ok = in_subset[sp.lo];
      const bool hi_ok = in_subset[sp.hi];
      if (lo_ok || hi_ok) opts.push_back({p, lo_ok, hi_ok, sp.circuits});
    }

    for (Minutes dur : res.durations) {
      const Minutes budget = dur - travel;
      if (budget < res.theta * static_cast<Minutes>(subset.size())) continue;
      const int slots = budget / res.theta;

      std::vector<OrientedCount> cur;
      std::vector<int> site_load(net.sites.size(), 0);
      auto rec = [&](auto&& self, std::size_t idx, int used) -> void {
        if (idx == opts.size()) {
          if (cur.empty()) return;
          for (int s : subset)
            if (site_load[s] == 0) return;
          ShiftColumn col;
          col.region = region;
          col.duration = dur;
          col.counts = cur;
          pool.add(std::move(col));
          if (pool.size() > 2'000'000)
            throw LimitError("enumerate_columns: too many columns");
          return;
        }
        const Opt& o = opts[idx];
        self(self, idx + 1, used);  // n = 0
        for (int side = 0; side < 2; ++side) {
          const bool at_lo = side == 0;
          if (at_lo && !o.lo_ok) continue;
          if (!at_lo && !o.hi_ok) continue;
          const int site = at_lo ? net.pairs[o.pair].lo : net.pairs[o.pair].hi;
          for (int n = 1; n <= o.cap && used + n <= slots; ++n) {
            cur.push_back({o.pair, at_lo, n});
            site_load[site] += n;
            self(self, idx + 1, used + n);
            site_load[site] -= n;
            cur.pop_back();
          }
        }
      };
      rec(rec, 0, 0);
    }
  }
  return pool.columns();
}

bool verify_farkas(const Instance& inst, const WindowDemand& demand, const CgDuals& duals,
                   const std::vector<ShiftColumn>& all_columns, double tol) {
  const Network& net = inst.network;
  // Nonnegativity in the normalized (>=) form.
  for (double v : duals.pi_side)
    if (v < -tol) return false;
  for (double v : duals.pi_tech)
    if (v > tol) return false;
  if (duals.pi_eng > tol) return false;

  for (const ShiftColumn& col : all_columns) {
    double dot = duals.pi_tech[col.region] + duals.pi_eng;
    for (const OrientedCount& oc : col.counts) dot += oc.n * duals.side(oc.pair, oc.at_lo);
    if (dot > tol) return false;
  }

  double rhs = duals.pi_eng * inst.resources.max_shifts_per_window();
  for (int r = 0; r < net.num_regions; ++r)
    rhs += duals.pi_tech[r] * inst.resources.eta_tech[r];
  for (int p = 0; p < static_cast<int>(net.pairs.size()); ++p)
    rhs += (duals.side(p, true) + duals.side(p, false)) * demand.m[p];
  return rhs > tol;
}

}  // namespace netmig
