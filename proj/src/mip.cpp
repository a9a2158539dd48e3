#include "netmig/mip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

namespace netmig {

int branch_select(const std::vector<double>& x, const std::vector<char>& integer,
                  double tol) {
  int best = -1;
  double best_score = kInf;
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (!integer[j]) continue;
    const double frac = x[j] - std::floor(x[j]);
    if (frac <= tol || frac >= 1.0 - tol) continue;
    const double score = std::abs(frac - 0.5);
    if (score < best_score - 1e-12) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

namespace {

struct Node {
  double bound;
  long id;
  std::vector<double> lo, hi;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

MipSolution solve_mip(const MipModel& model, double rel_gap, const LazySeparator& separator,
                      const MipOptions& opts) {
  if (rel_gap < 0.0 || rel_gap >= 1.0)
    throw ValidationError("solve_mip: rel_gap must be in [0, 1)");
  if (model.integer.size() != static_cast<std::size_t>(model.lp.num_vars()))
    throw ValidationError("solve_mip: integrality marks size mismatch");

  const auto t0 = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (!opts.time_limit_s) return false;
    const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return el > *opts.time_limit_s;
  };

  LpModel work = model.lp;  // cut rows are appended here, shared by all nodes

  MipSolution res;
  bool have_inc = false;
  std::vector<double> inc_x;
  double inc_obj = kInf;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{-kInf, next_id++, model.lp.lo, model.lp.hi});

  auto gap_of = [&](double bound) {
    if (!have_inc) return kInf;
    return (inc_obj - bound) / std::max(std::abs(inc_obj), 1e-9);
  };

  double global_bound = -kInf;

  while (!open.empty()) {
    if (res.nodes >= opts.max_nodes) throw LimitError("solve_mip: node limit exceeded");
    if (out_of_time()) {
      res.timed_out = true;
      break;
    }

    Node node = open.top();
    open.pop();
    global_bound = std::max(global_bound, node.bound);
    if (have_inc && gap_of(global_bound) <= rel_gap + 1e-12) {
      // Everything still open is within the requested gap.
      open.push(std::move(node));
      break;
    }

    ++res.nodes;
    work.lo = node.lo;
    work.hi = node.hi;

    LpSolution lp;
    bool pruned = false;
    while (true) {
      lp = solve_lp(work, opts.lp);
      if (lp.status == LpStatus::Infeasible) {
        pruned = true;
        break;
      }
      if (lp.status == LpStatus::Unbounded)
        throw NumericalError("solve_mip: LP relaxation unbounded");
      for (int j = 0; j < work.num_vars(); ++j)
        lp.x[j] = std::clamp(lp.x[j], work.lo[j], work.hi[j]);
      if (have_inc && lp.objective >= inc_obj - 1e-7 * std::max(1.0, std::abs(inc_obj))) {
        pruned = true;
        break;
      }
      const int frac_var = branch_select(lp.x, model.integer, opts.int_tol);
      if (frac_var >= 0) break;

      // Integral point: run the lazy separation loop.
      std::vector<double> cand = lp.x;
      for (int j = 0; j < static_cast<int>(cand.size()); ++j)
        if (model.integer[j]) cand[j] = std::llround(cand[j]);
      if (separator) {
        std::vector<LpModel::Row> cuts = separator(cand);
        if (!cuts.empty()) {
          for (auto& row : cuts) work.rows.push_back(std::move(row));
          if (out_of_time()) {
            res.timed_out = true;
            pruned = true;
            break;
          }
          continue;  // re-solve this node with the new cuts
        }
      }
      double obj = 0.0;
      for (int j = 0; j < work.num_vars(); ++j) obj += work.obj[j] * cand[j];
      if (obj < inc_obj) {
        inc_obj = obj;
        inc_x = cand;
        have_inc = true;
      }
      pruned = true;
      break;
    }

    if (!pruned) {
      const int v = branch_select(lp.x, model.integer, opts.int_tol);
      Node down{lp.objective, next_id++, node.lo, node.hi};
      down.hi[v] = std::floor(lp.x[v]);
      Node up{lp.objective, next_id++, node.lo, node.hi};
      up.lo[v] = std::ceil(lp.x[v]);
      if (down.lo[v] <= down.hi[v]) open.push(std::move(down));
      if (up.lo[v] <= up.hi[v]) open.push(std::move(up));
    }

    double now = open.empty() ? (have_inc ? inc_obj : kInf) : open.top().bound;
    if (have_inc) now = std::min(now, inc_obj);
    global_bound = std::max(global_bound, now);
    res.bound_trace.push_back(global_bound);
    if (res.timed_out) break;
  }

  if (!have_inc) {
    res.status = MipStatus::Infeasible;
    res.best_bound = (open.empty() && !res.timed_out) ? kInf : global_bound;
    return res;
  }

  if (open.empty() && !res.timed_out) global_bound = inc_obj;
  res.x = inc_x;
  res.objective = inc_obj;
  res.best_bound = std::min(global_bound, inc_obj);
  res.gap = std::max(0.0, gap_of(res.best_bound));
  res.status = res.gap <= 1e-9 ? MipStatus::Optimal : MipStatus::Feasible;
  return res;
}

}  // namespace netmig
