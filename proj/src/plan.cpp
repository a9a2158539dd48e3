#include "netmig/plan.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

namespace netmig {

namespace {

constexpr Cents kBigCost = std::numeric_limits<Cents>::max() / 4;

struct SideDemand {
  int pair;
  bool at_lo;
  int site;
  int count;
};

// Smallest allowed duration covering work + travel; -1 when none fits.
Minutes duration_tier(const Resources& res, Minutes span) {
  for (Minutes d : res.durations)
    if (span <= d) return d;
  return -1;
}

struct Take {
  int enc = 0;
  std::vector<int> t;
  Cents cost = 0;
};

// Exact covering of one region's side demands by at most eta_tech shifts:
// DP over the vector of remaining counts.
struct RegionCover {
  const Instance* inst = nullptr;
  int region = 0;
  std::vector<SideDemand> demands;
  std::vector<int> radix;
  long states = 1;
  std::vector<Take> takes;
  std::vector<std::vector<Cents>> g;  // g[k][state], k = 0..eta

  void decode(int enc, std::vector<int>& out) const {
    out.resize(demands.size());
    for (std::size_t i = 0; i < demands.size(); ++i) {
      out[i] = enc % radix[i];
      enc /= radix[i];
    }
  }

  bool take_fits(const Take& tk, const std::vector<int>& digits) const {
    for (std::size_t i = 0; i < demands.size(); ++i)
      if (tk.t[i] > digits[i]) return false;
    return true;
  }

  // Validity and cost of one shift pattern; -1 cost when no duration fits.
  Cents shift_cost_of(const std::vector<int>& t, Minutes* tier_out = nullptr) const {
    const Network& net = inst->network;
    int total = 0;
    std::vector<int> sites;
    for (std::size_t i = 0; i < demands.size(); ++i) {
      if (t[i] == 0) continue;
      total += t[i];
      sites.push_back(demands[i].site);
    }
    if (total == 0) return -1;
    // One orientation per pair within a shift.
    for (std::size_t i = 0; i < demands.size(); ++i)
      for (std::size_t j = i + 1; j < demands.size(); ++j)
        if (t[i] > 0 && t[j] > 0 && demands[i].pair == demands[j].pair) return -1;
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    const Minutes span = inst->resources.theta * static_cast<Minutes>(total) +
                         min_path_travel(sites, net.travel);
    const Minutes tier = duration_tier(inst->resources, span);
    if (tier < 0) return -1;
    if (tier_out) *tier_out = tier;
    return shift_cost_cents(inst->resources, tier);
  }

  void build_takes() {
    std::vector<int> t;
    for (int enc = 1; enc < states; ++enc) {
      decode(enc, t);
      const Cents c = shift_cost_of(t);
      if (c >= 0) takes.push_back(Take{enc, t, c});
    }
  }

  // Fills g up to k_max shifts; throws LimitError on oversized state spaces.
  void solve(int k_max, const std::function<void()>& tick) {
    if (demands.empty()) {
      g.assign(k_max + 1, std::vector<Cents>(1, 0));
      return;
    }
    radix.clear();
    states = 1;
    for (const SideDemand& d : demands) {
      radix.push_back(d.count + 1);
      states *= radix.back();
      if (states > 2'000'000) throw LimitError("solve_plan: demand state space too large");
    }
    build_takes();
    if (states * static_cast<long>(takes.size()) > 400'000'000)
      throw LimitError("solve_plan: transition space too large");

    std::vector<std::vector<int>> digits(states);
    for (int s = 0; s < states; ++s) decode(s, digits[s]);

    g.assign(k_max + 1, std::vector<Cents>(states, kBigCost));
    g[0][0] = 0;
    for (int k = 1; k <= k_max; ++k) {
      g[k][0] = 0;
      for (int s = 1; s < states; ++s) {
        Cents best = g[k - 1][s];
        for (const Take& tk : takes) {
          if (!take_fits(tk, digits[s])) continue;
          const Cents rest = g[k - 1][s - tk.enc];
          if (rest >= kBigCost) continue;
          best = std::min(best, tk.cost + rest);
        }
        g[k][s] = best;
      }
      tick();
    }
  }

  Cents cost_with(int k) const { return g[k][states - 1]; }

  // Extracts the shift patterns behind g[k][full]; deterministic because the
  // takes are scanned in encoding order.
  std::vector<std::vector<int>> extract(int k) const {
    std::vector<std::vector<int>> shifts;
    int s = static_cast<int>(states - 1);
    int kk = k;
    std::vector<int> digits;
    while (s != 0) {
      decode(s, digits);
      if (kk > 0 && g[kk][s] == g[kk - 1][s]) {
        --kk;
        continue;
      }
      bool found = false;
      for (const Take& tk : takes) {
        if (!take_fits(tk, digits)) continue;
        const Cents rest = g[kk - 1][s - tk.enc];
        if (rest < kBigCost && tk.cost + rest == g[kk][s]) {
          shifts.push_back(tk.t);
          s -= tk.enc;
          --kk;
          found = true;
          break;
        }
      }
      if (!found) throw NumericalError("solve_plan: reconstruction failed");
    }
    return shifts;
  }
};

TechShift build_shift(const Instance& inst, const RegionCover& rc,
                      const std::vector<int>& t) {
  const Network& net = inst.network;
  std::vector<int> sites;
  int total = 0;
  for (std::size_t i = 0; i < rc.demands.size(); ++i) {
    if (t[i] == 0) continue;
    sites.push_back(rc.demands[i].site);
    total += t[i];
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  auto [travel, order] = min_path_order(sites, net.travel);
  const Minutes span = inst.resources.theta * static_cast<Minutes>(total) + travel;
  const Minutes tier = duration_tier(inst.resources, span);

  TechShift shift;
  shift.region = rc.region;
  shift.duration = tier;
  Minutes clock = 0;
  for (std::size_t v = 0; v < order.size(); ++v) {
    if (v > 0) clock += net.travel[order[v - 1]][order[v]];
    Visit visit;
    visit.site = order[v];
    visit.start = clock;
    int here = 0;
    for (std::size_t i = 0; i < rc.demands.size(); ++i) {
      if (t[i] == 0 || rc.demands[i].site != order[v]) continue;
      visit.counts.push_back({rc.demands[i].pair, t[i]});
      here += t[i];
    }
    std::sort(visit.counts.begin(), visit.counts.end(),
              [](const VisitCount& a, const VisitCount& b) { return a.pair < b.pair; });
    visit.end = visit.start + inst.resources.theta * here;
    clock = visit.end;
    shift.visits.push_back(std::move(visit));
  }
  return shift;
}

// Canonical order: region, duration, then the visit structure.
bool shift_less(const TechShift& a, const TechShift& b) {
  if (a.region != b.region) return a.region < b.region;
  if (a.duration != b.duration) return a.duration < b.duration;
  auto key = [](const TechShift& s) {
    std::vector<int> k;
    for (const Visit& v : s.visits) {
      k.push_back(v.site);
      for (const VisitCount& c : v.counts) {
        k.push_back(c.pair);
        k.push_back(c.n);
      }
    }
    return k;
  };
  return key(a) < key(b);
}

}  // namespace

PlanResult solve_plan(const Instance& inst, const WindowDemand& demand,
                      std::optional<double> time_limit_s) {
  const Network& net = inst.network;
  const int num_pairs = static_cast<int>(net.pairs.size());
  if (static_cast<int>(demand.m.size()) != num_pairs)
    throw ValidationError("solve_plan: demand size mismatch");
  for (int v : demand.m)
    if (v < 0) throw ValidationError("solve_plan: negative demand");
  for (const auto& rs : net.region_sites)
    if (rs.size() > 8) throw LimitError("solve_plan: region exceeds the exhaustive bound");

  const auto t0 = std::chrono::steady_clock::now();
  bool expired = false;
  auto tick = [&] {
    if (!time_limit_s || expired) return;
    const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (el > *time_limit_s) expired = true;
  };

  std::vector<RegionCover> covers(net.num_regions);
  for (int r = 0; r < net.num_regions; ++r) {
    covers[r].inst = &inst;
    covers[r].region = r;
  }
  for (int p = 0; p < num_pairs; ++p) {
    if (demand.m[p] == 0) continue;
    const SitePair& sp = net.pairs[p];
    covers[net.region_of(sp.lo)].demands.push_back({p, true, sp.lo, demand.m[p]});
    covers[net.region_of(sp.hi)].demands.push_back({p, false, sp.hi, demand.m[p]});
  }

  for (int r = 0; r < net.num_regions; ++r) {
    covers[r].solve(inst.resources.eta_tech[r], tick);
    if (expired) return {PlanStatus::TimedOut, std::nullopt};
  }

  // Choose technician counts per region under the engineer cap.
  const int budget = inst.resources.max_shifts_per_window();
  const int regions = net.num_regions;
  std::vector<std::vector<Cents>> h(regions + 1, std::vector<Cents>(budget + 1, kBigCost));
  for (int b = 0; b <= budget; ++b) h[0][b] = 0;
  for (int r = 0; r < regions; ++r) {
    const int kmax = inst.resources.eta_tech[r];
    for (int b = 0; b <= budget; ++b) {
      if (h[r][b] >= kBigCost) continue;
      for (int k = 0; k <= kmax && b + k <= budget; ++k) {
        const Cents c = covers[r].cost_with(k);
        if (c >= kBigCost) continue;
        h[r + 1][b + k] = std::min(h[r + 1][b + k], h[r][b] + c);
      }
    }
  }
  Cents best = kBigCost;
  for (int b = 0; b <= budget; ++b) best = std::min(best, h[regions][b]);
  if (best >= kBigCost) return {PlanStatus::Infeasible, std::nullopt};

  // Reconstruct the per-region technician counts (first minimal k wins).
  std::vector<int> chosen(regions, 0);
  {
    int b_end = 0;
    for (int b = 0; b <= budget; ++b)
      if (h[regions][b] == best) {
        b_end = b;
        break;
      }
    int b = b_end;
    for (int r = regions - 1; r >= 0; --r) {
      bool ok = false;
      for (int k = 0; k <= inst.resources.eta_tech[r] && k <= b; ++k) {
        const Cents c = covers[r].cost_with(k);
        if (c < kBigCost && h[r][b - k] < kBigCost && h[r][b - k] + c == h[r + 1][b]) {
          chosen[r] = k;
          b -= k;
          ok = true;
          break;
        }
      }
      if (!ok) throw NumericalError("solve_plan: knapsack reconstruction failed");
    }
  }

  Plan plan;
  for (int r = 0; r < regions; ++r) {
    if (covers[r].demands.empty()) continue;
    for (const std::vector<int>& t : covers[r].extract(chosen[r]))
      plan.shifts.push_back(build_shift(inst, covers[r], t));
  }
  std::sort(plan.shifts.begin(), plan.shifts.end(), shift_less);
  std::map<int, int> tech_counter;
  for (TechShift& s : plan.shifts) s.tech = tech_counter[s.region]++;
  plan.cost = 0;
  for (const TechShift& s : plan.shifts) plan.cost += shift_cost_cents(inst.resources, s.duration);
  if (plan.cost != best) throw NumericalError("solve_plan: cost mismatch in reconstruction");
  return {PlanStatus::Optimal, std::move(plan)};
}

bool verify_plan(const Plan& plan, const Instance& inst, const WindowDemand& demand) {
  return verify_plan(plan, inst, demand, nullptr);
}

bool verify_plan(const Plan& plan, const Instance& inst, const WindowDemand& demand,
                 std::string* why) {
  const Network& net = inst.network;
  const Resources& res = inst.resources;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int num_pairs = static_cast<int>(net.pairs.size());
  if (static_cast<int>(demand.m.size()) != num_pairs) return fail("demand size mismatch");

  std::vector<long> at_lo(num_pairs, 0), at_hi(num_pairs, 0);
  std::vector<int> shifts_per_region(net.num_regions, 0);
  Cents cost = 0;

  for (const TechShift& shift : plan.shifts) {
    if (shift.region < 0 || shift.region >= net.num_regions) return fail("bad region");
    if (std::find(res.durations.begin(), res.durations.end(), shift.duration) ==
        res.durations.end())
      return fail("duration not in Delta");
    ++shifts_per_region[shift.region];
    cost += shift_cost_cents(res, shift.duration);

    std::vector<long> lo_in_shift(num_pairs, 0), hi_in_shift(num_pairs, 0);
    Minutes prev_end = 0;
    int prev_site = -1;
    for (const Visit& v : shift.visits) {
      if (v.site < 0 || v.site >= static_cast<int>(net.sites.size()))
        return fail("bad visit site");
      if (net.region_of(v.site) != shift.region) return fail("visit outside region");
      if (v.start < 0) return fail("negative start");
      if (prev_site >= 0 && v.start < prev_end + net.travel[prev_site][v.site])
        return fail("travel time violated between visits");
      long here = 0;
      for (const VisitCount& c : v.counts) {
        if (c.pair < 0 || c.pair >= num_pairs) return fail("bad pair index");
        if (c.n < 0) return fail("negative count");
        const SitePair& sp = net.pairs[c.pair];
        if (sp.lo == v.site) {
          at_lo[c.pair] += c.n;
          lo_in_shift[c.pair] += c.n;
        } else if (sp.hi == v.site) {
          at_hi[c.pair] += c.n;
          hi_in_shift[c.pair] += c.n;
        } else {
          return fail("visit site is not an endpoint of the pair");
        }
        here += c.n;
      }
      if (v.end - v.start != res.theta * here) return fail("visit length != theta * counts");
      if (v.end > shift.duration) return fail("visit ends after shift duration");
      prev_end = v.end;
      prev_site = v.site;
    }
    for (int p = 0; p < num_pairs; ++p)
      if (lo_in_shift[p] > 0 && hi_in_shift[p] > 0)
        return fail("both endpoints of a pair in one shift");
  }

  for (int r = 0; r < net.num_regions; ++r)
    if (shifts_per_region[r] > res.eta_tech[r]) return fail("region technician cap violated");
  if (static_cast<int>(plan.shifts.size()) > res.max_shifts_per_window())
    return fail("engineer cap violated");
  for (int p = 0; p < num_pairs; ++p)
    if (at_lo[p] != demand.m[p] || at_hi[p] != demand.m[p])
      return fail("pair totals do not match the demand");
  if (cost != plan.cost) return fail("stored cost mismatch");
  return true;
}

}  // namespace netmig
