#include "netmig/lbbd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace netmig {

namespace {

std::uint64_t cut_fingerprint(const Cut& c) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(c.kind));
  mix(static_cast<std::uint64_t>(c.window));
  for (double v : c.pair_coef) mix(static_cast<std::uint64_t>(std::llround(v * 1e9)));
  mix(static_cast<std::uint64_t>(std::llround(c.rhs_const * 1e9)));
  mix(static_cast<std::uint64_t>(std::llround(c.cg_value * 1e9)));
  for (int v : c.m_bar) mix(static_cast<std::uint64_t>(v));
  mix(static_cast<std::uint64_t>(c.cp_value));
  return h;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

struct MasterLayout {
  int num_pairs = 0;
  int windows = 0;
  int m_index(int p, int w) const { return w * num_pairs + p; }
  int eta_index(int w) const { return windows * num_pairs + w; }
};

LpModel::Row benders_row(const Cut& cut, const MasterLayout& lay) {
  LpModel::Row row;
  if (cut.kind == CutKind::BendersFeas) {
    // 0 >= sum pi_p m_pw + const  <=>  sum pi_p m_pw <= -const
    for (int p = 0; p < lay.num_pairs; ++p)
      if (cut.pair_coef[p] != 0.0)
        row.coefs.emplace_back(lay.m_index(p, cut.window), cut.pair_coef[p]);
    row.sense = Sense::Le;
    row.rhs = -cut.rhs_const;
  } else {
    // eta_w >= v - sum pi_p (mbar_p - m_pw)
    row.coefs.emplace_back(lay.eta_index(cut.window), 1.0);
    double rhs = cut.cg_value;
    for (int p = 0; p < lay.num_pairs; ++p) {
      if (cut.pair_coef[p] != 0.0)
        row.coefs.emplace_back(lay.m_index(p, cut.window), -cut.pair_coef[p]);
      rhs -= cut.pair_coef[p] * cut.m_bar[p];
    }
    row.sense = Sense::Ge;
    row.rhs = rhs;
  }
  return row;
}

}  // namespace

Cut make_lbbd_feas_cut(const Instance& inst, int window, const WindowDemand& m_bar,
                       int tau) {
  (void)inst;
  Cut cut;
  cut.kind = CutKind::LbbdFeas;
  cut.window = window;
  cut.tau = tau;
  cut.m_bar = m_bar.m;
  return cut;
}

Cut make_lbbd_opt_cut(const Instance& inst, int window, const WindowDemand& m_bar,
                      Cents cp_value, int tau) {
  (void)inst;
  Cut cut;
  cut.kind = CutKind::LbbdOpt;
  cut.window = window;
  cut.tau = tau;
  cut.m_bar = m_bar.m;
  cut.cp_value = cp_value;
  return cut;
}

std::vector<Cut> separate_benders(const Instance& inst, int window,
                                  const WindowDemand& m_bar, double eta_bar,
                                  ColumnPool& pool, const Config& config) {
  if (!config.keep_columns) pool.clear();

  std::vector<Cut> cuts;
  InitResult init = init_phase(inst, m_bar, pool, config.pricing);
  Cut base;
  bool have_cut = false;
  if (!init.feasible) {
    if (config.probe_hook)
      config.probe_hook(CgProbe{window, m_bar.m, false, 0.0, init.duals});
    base.kind = CutKind::BendersFeas;
    base.window = window;
    base.pair_coef.resize(m_bar.m.size());
    for (std::size_t p = 0; p < m_bar.m.size(); ++p)
      base.pair_coef[p] = init.duals.side(static_cast<int>(p), true) +
                          init.duals.side(static_cast<int>(p), false);
    base.rhs_const = init.duals.pi_eng * inst.resources.max_shifts_per_window();
    for (int r = 0; r < inst.network.num_regions; ++r)
      base.rhs_const += init.duals.pi_tech[r] * inst.resources.eta_tech[r];
    have_cut = true;
  } else {
    CgResult cg = solve_cg(inst, m_bar, pool, config.pricing);
    if (config.probe_hook)
      config.probe_hook(CgProbe{window, m_bar.m, true, cg.value, cg.duals});
    if (cg.value > eta_bar + 1e-6) {
      base.kind = CutKind::BendersOpt;
      base.window = window;
      base.pair_coef.resize(m_bar.m.size());
      for (std::size_t p = 0; p < m_bar.m.size(); ++p)
        base.pair_coef[p] = cg.duals.side(static_cast<int>(p), true) +
                            cg.duals.side(static_cast<int>(p), false);
      base.cg_value = cg.value;
      base.m_bar = m_bar.m;
      have_cut = true;
    }
  }
  if (!have_cut) return cuts;

  if (config.propagate) {
    for (int w = 0; w < inst.resources.windows; ++w) {
      Cut c = base;
      c.window = w;
      cuts.push_back(std::move(c));
    }
  } else {
    cuts.push_back(std::move(base));
  }
  return cuts;
}

bool cut_satisfied(const Cut& cut, const Instance& inst,
                   const std::vector<WindowDemand>& m, const std::vector<double>& eta,
                   bool paper_rhs, double tol) {
  const int w = cut.window;
  const int num_pairs = static_cast<int>(inst.network.pairs.size());
  switch (cut.kind) {
    case CutKind::BendersFeas: {
      double lhs = cut.rhs_const;
      for (int p = 0; p < num_pairs; ++p) lhs += cut.pair_coef[p] * m[w].m[p];
      return lhs <= tol;
    }
    case CutKind::BendersOpt: {
      double rhs = cut.cg_value;
      for (int p = 0; p < num_pairs; ++p)
        rhs -= cut.pair_coef[p] * (cut.m_bar[p] - m[w].m[p]);
      return eta[w] >= rhs - tol;
    }
    case CutKind::LbbdFeas: {
      int positive = 0, at_least = 0;
      for (int p = 0; p < num_pairs; ++p) {
        if (cut.m_bar[p] <= 0) continue;
        ++positive;
        if (m[w].m[p] >= cut.m_bar[p]) ++at_least;
      }
      const int rhs = paper_rhs ? num_pairs - 1 : positive - 1;
      return at_least <= rhs;
    }
    case CutKind::LbbdOpt: {
      int positive = 0, below = 0;
      for (int p = 0; p < num_pairs; ++p) {
        if (cut.m_bar[p] <= 0) continue;
        ++positive;
        if (m[w].m[p] < cut.m_bar[p]) ++below;  // kappa free to take 0
      }
      const double bound = static_cast<double>(cut.cp_value) * (1.0 - below);
      return eta[w] >= bound - tol;
    }
  }
  return false;
}

bool check_opt_cut_tight(const Instance& inst, const WindowDemand& m_hat,
                         const WindowDemand& m_bar, const Plan& plan) {
  const Network& net = inst.network;
  const int num_pairs = static_cast<int>(net.pairs.size());
  for (int p = 0; p < num_pairs; ++p)
    if (m_hat.m[p] < m_bar.m[p])
      throw ValidationError("check_opt_cut_tight: m_hat must dominate m_bar");

  // One node per (pair, endpoint side) needing extra migrations.
  struct Need {
    int pair;
    bool at_lo;
    int site;
    int extra;
  };
  std::vector<Need> needs;
  for (int p = 0; p < num_pairs; ++p) {
    const int extra = m_hat.m[p] - m_bar.m[p];
    if (extra <= 0) continue;
    needs.push_back({p, true, net.pairs[p].lo, extra});
    needs.push_back({p, false, net.pairs[p].hi, extra});
  }
  if (needs.empty()) return true;

  const int techs = static_cast<int>(plan.shifts.size());
  std::vector<std::vector<int>> adj(needs.size());
  for (std::size_t i = 0; i < needs.size(); ++i) {
    const Need& nd = needs[i];
    for (int t = 0; t < techs; ++t) {
      const TechShift& shift = plan.shifts[t];
      bool visits_site = false;
      bool opposite = false;
      Minutes wtime = 0;
      if (!shift.visits.empty())
        wtime = shift.visits.back().end - shift.visits.front().start;
      for (const Visit& v : shift.visits) {
        if (v.site == nd.site) visits_site = true;
        for (const VisitCount& c : v.counts)
          if (c.pair == nd.pair && c.n > 0 && v.site != nd.site) opposite = true;
      }
      if (!visits_site || opposite) continue;
      if (wtime + inst.resources.theta * nd.extra <= shift.duration)
        adj[i].push_back(t);
    }
  }

  // Augmenting-path matching; true iff every need is matched.
  std::vector<int> match_tech(techs, -1);
  std::vector<char> seen;
  auto try_match = [&](auto&& self, int i) -> bool {
    for (int t : adj[i]) {
      if (seen[t]) continue;
      seen[t] = 1;
      if (match_tech[t] < 0 || self(self, match_tech[t])) {
        match_tech[t] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < needs.size(); ++i) {
    seen.assign(techs, 0);
    if (!try_match(try_match, static_cast<int>(i))) return false;
  }
  return true;
}

SolveReport run(const Instance& inst, const Config& config) {
  const Network& net = inst.network;
  const Resources& res = inst.resources;
  const int P = static_cast<int>(net.pairs.size());
  const int W = res.windows;
  const int R = net.num_regions;
  MasterLayout lay{P, W};

  Timer total_timer;
  SolveReport rep;
  ColumnPool pool;
  std::vector<Cut> benders_cuts;  // materialized as rows on every build
  std::vector<Cut> lbbd_cuts;     // materialized as kappa blocks
  std::unordered_set<std::uint64_t> cut_keys;

  const double eta_ub = static_cast<double>(shift_cost_cents(res, res.durations.back())) *
                        res.max_shifts_per_window();
  double lb = 0.0;
  bool done = false;

  auto time_left = [&] { return config.time_limit_s - total_timer.elapsed(); };

  auto record = [&](const Cut& cut) -> bool {
    if (!cut_keys.insert(cut_fingerprint(cut)).second) return false;
    rep.cuts.push_back(cut);
    switch (cut.kind) {
      case CutKind::BendersFeas:
        ++rep.cuts_benders_feas;
        break;
      case CutKind::BendersOpt:
        ++rep.cuts_benders_opt;
        break;
      case CutKind::LbbdFeas:
        ++rep.cuts_lbbd_feas;
        break;
      case CutKind::LbbdOpt:
        ++rep.cuts_lbbd_opt;
        break;
    }
    return true;
  };

  while (!done) {
    ++rep.iterations;
    const int tau = rep.iterations;
    const double master_gap = std::max(0.0, 0.10 - 0.05 * (tau - 1));

    // Build the master: m and eta variables plus all accumulated cuts.
    MipModel master;
    for (int w = 0; w < W; ++w)
      for (int p = 0; p < P; ++p)
        master.lp.add_var(0.0, net.pairs[p].circuits, 0.0);
    for (int w = 0; w < W; ++w) master.lp.add_var(0.0, eta_ub, 1.0);
    master.integer.assign(master.lp.num_vars(), 0);
    for (int w = 0; w < W; ++w)
      for (int p = 0; p < P; ++p) master.integer[lay.m_index(p, w)] = 1;

    for (int p = 0; p < P; ++p) {
      const int row = master.lp.add_row(Sense::Ge, net.pairs[p].circuits);
      for (int w = 0; w < W; ++w) master.lp.set_coef(row, lay.m_index(p, w), 1.0);
    }
    for (int w = 0; w < W; ++w) {
      const int row = master.lp.add_row(Sense::Le, res.eta_cir);
      for (int p = 0; p < P; ++p) master.lp.set_coef(row, lay.m_index(p, w), 1.0);
    }

    // Endpoint-counting relaxation of the subproblems: a shift carries at
    // most floor(maxD/theta) endpoints, costs at least the shortest
    // duration, and regions/engineers bound the number of shifts.
    const int cap_ep = res.durations.back() / res.theta;
    for (int w = 0; w < W; ++w) {
      if (cap_ep == 0) {
        const int row = master.lp.add_row(Sense::Le, 0.0);
        for (int p = 0; p < P; ++p) master.lp.set_coef(row, lay.m_index(p, w), 1.0);
        continue;
      }
      const double min_cost =
          static_cast<double>(shift_cost_cents(res, res.durations.front()));
      const int eta_row = master.lp.add_row(Sense::Ge, 0.0);
      master.lp.set_coef(eta_row, lay.eta_index(w), 1.0);
      for (int p = 0; p < P; ++p)
        master.lp.set_coef(eta_row, lay.m_index(p, w), -2.0 * min_cost / cap_ep);
      const int eng_row =
          master.lp.add_row(Sense::Le, 0.5 * res.max_shifts_per_window() * cap_ep);
      for (int p = 0; p < P; ++p) master.lp.set_coef(eng_row, lay.m_index(p, w), 1.0);
      for (int r = 0; r < R; ++r) {
        const int row =
            master.lp.add_row(Sense::Le, static_cast<double>(res.eta_tech[r]) * cap_ep);
        bool any = false;
        for (int p = 0; p < P; ++p) {
          const int sides = (net.region_of(net.pairs[p].lo) == r ? 1 : 0) +
                            (net.region_of(net.pairs[p].hi) == r ? 1 : 0);
          if (sides > 0) {
            master.lp.set_coef(row, lay.m_index(p, w), sides);
            any = true;
          }
        }
        if (!any) master.lp.rows.pop_back();
      }
    }

    // Windows are interchangeable; ordering their loads keeps an optimal
    // solution while removing permuted duplicates from the tree.
    for (int w = 0; w + 1 < W; ++w) {
      const int row = master.lp.add_row(Sense::Ge, 0.0);
      for (int p = 0; p < P; ++p) {
        master.lp.set_coef(row, lay.m_index(p, w), 1.0);
        master.lp.set_coef(row, lay.m_index(p, w + 1), -1.0);
      }
    }
    for (const Cut& cut : benders_cuts) master.lp.rows.push_back(benders_row(cut, lay));
    for (const Cut& cut : lbbd_cuts) {
      std::vector<int> kappa;
      for (int p = 0; p < P; ++p) {
        if (cut.m_bar[p] <= 0) continue;
        const int v = master.lp.add_var(0.0, 1.0, 0.0);
        master.integer.push_back(1);
        kappa.push_back(v);
        // m_pw - (phi_p + 1) kappa <= mbar_p - 1
        const int row = master.lp.add_row(Sense::Le, cut.m_bar[p] - 1.0);
        master.lp.set_coef(row, lay.m_index(p, cut.window), 1.0);
        master.lp.set_coef(row, v, -(net.pairs[p].circuits + 1.0));
      }
      if (cut.kind == CutKind::LbbdFeas) {
        const double rhs =
            config.lbbd_feas_paper_rhs ? P - 1.0 : static_cast<double>(kappa.size()) - 1.0;
        const int row = master.lp.add_row(Sense::Le, rhs);
        for (int v : kappa) master.lp.set_coef(row, v, 1.0);
      } else {
        // eta_w - V sum kappa >= V (1 - |P+|)
        const double v_cents = static_cast<double>(cut.cp_value);
        const int row =
            master.lp.add_row(Sense::Ge, v_cents * (1.0 - static_cast<double>(kappa.size())));
        master.lp.set_coef(row, lay.eta_index(cut.window), 1.0);
        for (int v : kappa) master.lp.set_coef(row, v, -v_cents);
      }
    }

    // Lazy Benders separation at integer master points.
    Timer cg_timer;
    double cg_spent = 0.0;
    auto separator = [&](const std::vector<double>& x) {
      Timer t;
      std::vector<LpModel::Row> rows;
      for (int w = 0; w < W; ++w) {
        WindowDemand mw;
        mw.m.resize(P);
        for (int p = 0; p < P; ++p)
          mw.m[p] = static_cast<int>(std::llround(x[lay.m_index(p, w)]));
        const double eta_w = x[lay.eta_index(w)];
        for (Cut& cut : separate_benders(inst, w, mw, eta_w, pool, config)) {
          if (record(cut)) {
            benders_cuts.push_back(cut);
            rows.push_back(benders_row(cut, lay));
          }
        }
      }
      cg_spent += t.elapsed();
      return rows;
    };

    MipOptions mip_opts = config.mip;
    mip_opts.time_limit_s = time_left();
    Timer master_timer;
    MipSolution msol = solve_mip(master, master_gap, separator, mip_opts);
    rep.master_seconds += master_timer.elapsed() - cg_spent;
    rep.cg_seconds += cg_spent;
    rep.master_nodes += msol.nodes;

    if (msol.timed_out) {
      rep.status = RunStatus::TimedOut;
      break;
    }
    if (msol.status == MipStatus::Infeasible) {
      if (rep.has_incumbent)
        throw NumericalError("run: master infeasible despite an incumbent");
      rep.status = RunStatus::Infeasible;
      rep.gap = kInf;
      break;
    }

    lb = std::max(lb, msol.best_bound);

    std::vector<WindowDemand> m_bar(W);
    std::vector<double> eta_bar(W);
    for (int w = 0; w < W; ++w) {
      m_bar[w].m.resize(P);
      for (int p = 0; p < P; ++p)
        m_bar[w].m[p] = static_cast<int>(std::llround(msol.x[lay.m_index(p, w)]));
      eta_bar[w] = msol.x[lay.eta_index(w)];
    }
    for (int p = 0; p < P; ++p) {
      long covered = 0;
      for (int w = 0; w < W; ++w) covered += m_bar[w].m[p];
      if (covered < net.pairs[p].circuits)
        throw NumericalError("run: master candidate violates circuit coverage");
    }
    if (log_level() >= 2) {
      std::ostringstream os;
      os << "iter " << tau << " master obj " << msol.objective << " bound "
         << msol.best_bound << " nodes " << msol.nodes << " eta_bar";
      for (int w = 0; w < W; ++w) os << ' ' << eta_bar[w];
      log_debug(os.str());
    }

    // Stage two: exact subproblems per window.
    bool added = false;
    bool all_feasible = true;
    std::vector<Plan> plans(W);
    Timer cp_timer;
    for (int w = 0; w < W; ++w) {
      PlanResult pr = solve_plan(inst, m_bar[w], time_left());
      if (pr.status == PlanStatus::TimedOut) {
        rep.status = RunStatus::TimedOut;
        rep.cp_seconds += cp_timer.elapsed();
        rep.lower_bound = lb;
        rep.columns = static_cast<long>(pool.size());
        rep.total_seconds = total_timer.elapsed();
        return rep;
      }
      if (pr.status == PlanStatus::Infeasible) {
        all_feasible = false;
        if (record(make_lbbd_feas_cut(inst, w, m_bar[w], tau))) {
          lbbd_cuts.push_back(rep.cuts.back());
          added = true;
        }
      } else {
        plans[w] = *pr.plan;
        if (eta_bar[w] < static_cast<double>(pr.plan->cost) - 1e-6) {
          if (record(make_lbbd_opt_cut(inst, w, m_bar[w], pr.plan->cost, tau))) {
            lbbd_cuts.push_back(rep.cuts.back());
            added = true;
          }
        }
      }
    }
    rep.cp_seconds += cp_timer.elapsed();

    if (all_feasible) {
      Cents ub_cand = 0;
      for (int w = 0; w < W; ++w) ub_cand += plans[w].cost;
      if (!rep.has_incumbent || ub_cand < rep.upper_bound) {
        rep.has_incumbent = true;
        rep.upper_bound = ub_cand;
        rep.plans = plans;
        rep.m = m_bar;
      }
    }

    if (rep.has_incumbent) {
      const double ub = static_cast<double>(rep.upper_bound);
      rep.gap = ub <= 0.0 ? std::max(0.0, -lb) : std::max(0.0, (ub - lb) / ub);
      if (rep.gap <= config.target_gap + 1e-12) {
        rep.status = rep.gap <= 1e-9 ? RunStatus::Optimal : RunStatus::GapReached;
        done = true;
      }
    }
    if (!done && !added && all_feasible && master_gap == 0.0 &&
        msol.status == MipStatus::Optimal) {
      // Exact master and no violated cuts: the incumbent is optimal.
      lb = static_cast<double>(rep.upper_bound);
      rep.gap = 0.0;
      rep.status = RunStatus::Optimal;
      done = true;
    }
    if (!done && !added && !all_feasible) {
      // Every violated point must yield a fresh cut; the paper-form (10b)
      // rhs can fail to separate when few pairs are positive.
      throw NumericalError(
          "run: infeasible master point was not cut off (weak feasibility-cut rhs?)");
    }
    if (!done && time_left() <= 0.0) {
      rep.status = RunStatus::TimedOut;
      done = true;
    }
  }

  rep.lower_bound = lb;
  rep.columns = static_cast<long>(pool.size());
  rep.total_seconds = total_timer.elapsed();
  return rep;
}

}  // namespace netmig
