#include "netmig/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

namespace netmig {

int LpModel::add_var(double lo_, double hi_, double obj_) {
  if (lo_ > hi_) throw ValidationError("add_var: lo > hi");
  lo.push_back(lo_);
  hi.push_back(hi_);
  obj.push_back(obj_);
  return num_vars() - 1;
}

int LpModel::add_row(Sense sense, double rhs) {
  rows.push_back(Row{{}, sense, rhs});
  return num_rows() - 1;
}

void LpModel::set_coef(int row, int var, double a) {
  if (row < 0 || row >= num_rows() || var < 0 || var >= num_vars())
    throw ValidationError("set_coef: index out of range");
  rows[row].coefs.emplace_back(var, a);
}

int LpModel::add_column(double obj_, const std::vector<std::pair<int, double>>& entries) {
  const int v = add_var(0.0, kInf, obj_);
  for (auto [r, a] : entries) {
    if (r < 0 || r >= num_rows()) throw ValidationError("add_column: bad row index");
    rows[r].coefs.emplace_back(v, a);
  }
  return v;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class VarMode : char { Shifted, Negated, FreePos, FreeNeg };

enum class State : char { AtLower, AtUpper, Basic };

struct Simplex {
  const LpModel& model;
  const LpOptions& opts;

  int m = 0;
  int ncols = 0;
  MatrixXd a;                  // standardized dense columns, row-scaled
  VectorXd b;                  // standardized rhs, >= 0 after flips
  VectorXd upper;              // per column; lower bounds are all 0
  std::vector<int> orig;       // original variable index or -1
  std::vector<VarMode> mode;
  std::vector<char> artificial;
  std::vector<double> flip;    // +-1 per row
  std::vector<double> rscale;  // power-of-two row equilibration
  std::vector<double> c1, c2;  // phase-one / phase-two costs
  std::vector<int> slack_col;  // per row, -1 for equalities

  std::vector<State> state;
  std::vector<int> basis;
  MatrixXd binv;
  VectorXd b_eff;
  VectorXd xb;
  VectorXd y, d, w, cb;  // pivot workspaces
  long pivots = 0;
  int degen_streak = 0;

  explicit Simplex(const LpModel& mdl, const LpOptions& o) : model(mdl), opts(o) {
    build();
  }

  void build() {
    m = model.num_rows();
    const int n = model.num_vars();
    b = VectorXd::Zero(m);
    flip.assign(m, 1.0);
    rscale.assign(m, 1.0);
    for (int i = 0; i < m; ++i) {
      double biggest = 0.0;
      for (auto [j, aij] : model.rows[i].coefs) biggest = std::max(biggest, std::abs(aij));
      // powers of two keep the scaling exact in binary floating point
      if (biggest > 0.0) rscale[i] = std::exp2(-std::round(std::log2(biggest)));
      b[i] = model.rows[i].rhs * rscale[i];
    }

    std::vector<std::vector<std::pair<int, double>>> acol(n);
    for (int i = 0; i < m; ++i)
      for (auto [j, aij] : model.rows[i].coefs) acol[j].emplace_back(i, aij * rscale[i]);

    int n_std = 0;
    for (int j = 0; j < n; ++j)
      n_std += (model.lo[j] == -kInf && model.hi[j] == kInf) ? 2 : 1;
    int n_slack = 0;
    for (int i = 0; i < m; ++i)
      if (model.rows[i].sense != Sense::Eq) ++n_slack;

    const int cap = n_std + n_slack + m;
    a = MatrixXd::Zero(m, cap);
    upper = VectorXd::Constant(cap, kInf);
    orig.assign(cap, -1);
    mode.assign(cap, VarMode::Shifted);
    artificial.assign(cap, 0);
    c2.assign(cap, 0.0);

    int col = 0;
    for (int j = 0; j < n; ++j) {
      const double lo = model.lo[j], hi = model.hi[j];
      if (lo == -kInf && hi == kInf) {
        for (auto [row, aij] : acol[j]) a(row, col) += aij;
        c2[col] = model.obj[j];
        orig[col] = j;
        mode[col] = VarMode::FreePos;
        ++col;
        for (auto [row, aij] : acol[j]) a(row, col) -= aij;
        c2[col] = -model.obj[j];
        orig[col] = j;
        mode[col] = VarMode::FreeNeg;
        ++col;
      } else if (lo != -kInf) {
        for (auto [row, aij] : acol[j]) a(row, col) += aij;
        c2[col] = model.obj[j];
        orig[col] = j;
        mode[col] = VarMode::Shifted;
        upper[col] = hi - lo;
        if (lo != 0.0)
          for (auto [row, aij] : acol[j]) b[row] -= aij * lo;
        ++col;
      } else {
        for (auto [row, aij] : acol[j]) a(row, col) -= aij;
        c2[col] = -model.obj[j];
        orig[col] = j;
        mode[col] = VarMode::Negated;
        for (auto [row, aij] : acol[j]) b[row] -= aij * hi;
        ++col;
      }
    }

    slack_col.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      if (model.rows[i].sense == Sense::Eq) continue;
      a(i, col) = model.rows[i].sense == Sense::Le ? 1.0 : -1.0;
      slack_col[i] = col;
      ++col;
    }

    for (int i = 0; i < m; ++i) {
      if (b[i] < 0) {
        b[i] = -b[i];
        flip[i] = -1.0;
        a.row(i) = -a.row(i);
      }
    }

    // Crash basis: the slack where it can sit at a feasible value, an
    // artificial elsewhere, so phase one only prices the hard rows.
    basis.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      if (slack_col[i] >= 0 && a(i, slack_col[i]) > 0.0) {
        basis[i] = slack_col[i];
      } else {
        a(i, col) = 1.0;
        artificial[col] = 1;
        basis[i] = col;
        ++col;
      }
    }
    ncols = col;
    a.conservativeResize(m, ncols);
    upper.conservativeResize(ncols);
    c2.resize(ncols);
    orig.resize(ncols);
    mode.resize(ncols);
    artificial.resize(ncols);

    c1.assign(ncols, 0.0);
    for (int j = 0; j < ncols; ++j)
      if (artificial[j]) c1[j] = 1.0;

    state.assign(ncols, State::AtLower);
    for (int i = 0; i < m; ++i) state[basis[i]] = State::Basic;
    binv = MatrixXd::Identity(m, m);
    b_eff = b;
    xb = b_eff;
    y.resize(m);
    w.resize(m);
    cb.resize(m);
    d.resize(ncols);
  }

  void refactor() {
    if (m == 0) return;
    MatrixXd bmat(m, m);
    for (int i = 0; i < m; ++i) bmat.col(i) = a.col(basis[i]);
    binv = Eigen::PartialPivLU<MatrixXd>(bmat).inverse();
    xb.noalias() = binv * b_eff;
  }

  // Pivot loop for the given costs; returns false on unboundedness.
  bool iterate(const std::vector<double>& c, bool phase_one) {
    const double tol = opts.tol;
    const Eigen::Map<const VectorXd> cvec(c.data(), ncols);
    bool bland = false;
    while (true) {
      if (pivots > opts.max_pivots)
        throw NumericalError("solve_lp: pivot limit exceeded");
      for (int i = 0; i < m; ++i) cb[i] = c[basis[i]];
      y.noalias() = binv.transpose() * cb;
      d.noalias() = cvec - a.transpose() * y;

      int enter = -1;
      int dir = +1;
      double best = tol;
      for (int j = 0; j < ncols; ++j) {
        if (state[j] == State::Basic) continue;
        if (!phase_one && artificial[j]) continue;
        if (upper[j] == 0.0) continue;  // fixed
        double score;
        int cand_dir;
        if (state[j] == State::AtLower && d[j] < -tol) {
          score = -d[j];
          cand_dir = +1;
        } else if (state[j] == State::AtUpper && d[j] > tol) {
          score = d[j];
          cand_dir = -1;
        } else {
          continue;
        }
        if (bland) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (score > best) {
          best = score;
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter < 0) return true;  // optimal for these costs

      w.noalias() = binv * a.col(enter);
      // Entering moves by t >= 0; basic i changes by -dir*w_i*t.
      double t = upper[enter];  // bound-flip distance (may be inf)
      int leave_row = -1;
      for (int i = 0; i < m; ++i) {
        const double rate = dir * w[i];
        double ti = kInf;
        if (rate > 1e-9) {
          ti = xb[i] / rate;
        } else if (rate < -1e-9 && upper[basis[i]] != kInf) {
          ti = (upper[basis[i]] - xb[i]) / (-rate);
        } else {
          continue;
        }
        if (ti < -1e-9) ti = 0.0;
        if (ti < t - 1e-12) {
          t = ti;
          leave_row = i;
        } else if (leave_row >= 0 && ti <= t + 1e-12) {
          // Ties: Bland by lowest leaving variable, else larger pivot.
          if (bland ? basis[i] < basis[leave_row]
                    : std::abs(w[i]) > std::abs(w[leave_row]) + 1e-12) {
            t = std::min(t, ti);
            leave_row = i;
          }
        }
      }
      if (t == kInf) {
        if (phase_one) throw NumericalError("solve_lp: phase one unbounded");
        return false;
      }

      ++pivots;
      degen_streak = (t <= 1e-10) ? degen_streak + 1 : 0;
      if (degen_streak > 100) bland = true;
      if (degen_streak == 0) bland = false;

      if (leave_row < 0) {
        // Bound flip of the entering variable.
        if (state[enter] == State::AtLower) {
          state[enter] = State::AtUpper;
          b_eff.noalias() -= a.col(enter) * upper[enter];
        } else {
          state[enter] = State::AtLower;
          b_eff.noalias() += a.col(enter) * upper[enter];
        }
        xb.noalias() = binv * b_eff;
        continue;
      }

      const int leave = basis[leave_row];
      const double rate = dir * w[leave_row];
      state[leave] = rate > 0 ? State::AtLower : State::AtUpper;
      if (state[leave] == State::AtUpper) b_eff.noalias() -= a.col(leave) * upper[leave];
      if (state[enter] == State::AtUpper) b_eff.noalias() += a.col(enter) * upper[enter];
      state[enter] = State::Basic;
      basis[leave_row] = enter;

      const double piv = w[leave_row];
      if (std::abs(piv) < 1e-9) {
        refactor();
        continue;
      }
      binv.row(leave_row) /= piv;
      for (int i = 0; i < m; ++i) {
        if (i == leave_row) continue;
        const double f = w[i];
        if (f != 0.0) binv.row(i) -= f * binv.row(leave_row);
      }
      if (pivots % 64 == 0)
        refactor();
      else
        xb.noalias() = binv * b_eff;
    }
  }

  double phase_objective(const std::vector<double>& c) const {
    double v = 0.0;
    for (int i = 0; i < m; ++i) v += c[basis[i]] * xb[i];
    for (int j = 0; j < ncols; ++j)
      if (state[j] == State::AtUpper) v += c[j] * upper[j];
    return v;
  }

  LpSolution finish(LpStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.pivots = pivots;
    if (status != LpStatus::Optimal) return sol;

    std::vector<double> xstd(ncols, 0.0);
    for (int j = 0; j < ncols; ++j)
      if (state[j] == State::AtUpper) xstd[j] = upper[j];
    for (int i = 0; i < m; ++i) xstd[basis[i]] = xb[i];

    sol.x.assign(model.num_vars(), 0.0);
    for (int j = 0; j < ncols; ++j) {
      if (orig[j] < 0) continue;
      switch (mode[j]) {
        case VarMode::Shifted:
          sol.x[orig[j]] = (model.lo[orig[j]] == -kInf ? 0.0 : model.lo[orig[j]]) + xstd[j];
          break;
        case VarMode::Negated:
          sol.x[orig[j]] = model.hi[orig[j]] - xstd[j];
          break;
        case VarMode::FreePos:
          sol.x[orig[j]] += xstd[j];
          break;
        case VarMode::FreeNeg:
          sol.x[orig[j]] -= xstd[j];
          break;
      }
    }

    sol.objective = 0.0;
    for (int j = 0; j < model.num_vars(); ++j) sol.objective += model.obj[j] * sol.x[j];

    for (int i = 0; i < m; ++i) cb[i] = c2[basis[i]];
    y.noalias() = binv.transpose() * cb;
    sol.y.assign(m, 0.0);
    for (int i = 0; i < m; ++i) sol.y[i] = flip[i] * y[i] * rscale[i];

    // Dual objective with bound contributions, in the original space.
    std::vector<double> z(model.obj);
    for (int i = 0; i < m; ++i)
      for (auto [j, aij] : model.rows[i].coefs) z[j] -= sol.y[i] * aij;
    double dual = 0.0;
    for (int i = 0; i < m; ++i) dual += sol.y[i] * model.rows[i].rhs;
    for (int j = 0; j < model.num_vars(); ++j) {
      if (z[j] > 0 && model.lo[j] != -kInf)
        dual += z[j] * model.lo[j];
      else if (z[j] < 0 && model.hi[j] != kInf)
        dual += z[j] * model.hi[j];
    }
    sol.dual_objective = dual;
    return sol;
  }
};

}  // namespace

LpSolution solve_lp(const LpModel& model, const LpOptions& opts) {
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.lo[j] > model.hi[j]) throw ValidationError("solve_lp: lo > hi");

  Simplex s(model, opts);
  s.iterate(s.c1, /*phase_one=*/true);
  const double infeas = s.phase_objective(s.c1);
  if (infeas > opts.tol * (1.0 + s.b.lpNorm<1>())) return s.finish(LpStatus::Infeasible);

  // Pin artificials at zero for phase two; basic ones leave via ratio tests.
  for (int j = 0; j < s.ncols; ++j)
    if (s.artificial[j]) s.upper[j] = 0.0;

  if (!s.iterate(s.c2, /*phase_one=*/false)) return s.finish(LpStatus::Unbounded);

  LpSolution sol = s.finish(LpStatus::Optimal);
  const double gap = std::abs(sol.objective - sol.dual_objective);
  if (gap > opts.tol * (1.0 + std::abs(sol.objective)) * 10.0) {
    s.refactor();
    sol = s.finish(LpStatus::Optimal);
    const double gap2 = std::abs(sol.objective - sol.dual_objective);
    if (gap2 > opts.tol * (1.0 + std::abs(sol.objective)) * 10.0)
      throw NumericalError("solve_lp: duality gap " + std::to_string(gap2));
  }
  const double sign_tol = opts.tol * (1.0 + std::abs(sol.objective)) * 10.0;
  for (int i = 0; i < model.num_rows(); ++i) {
    if (model.rows[i].sense == Sense::Ge && sol.y[i] < -sign_tol)
      throw NumericalError("solve_lp: negative dual on a >= row");
    if (model.rows[i].sense == Sense::Le && sol.y[i] > sign_tol)
      throw NumericalError("solve_lp: positive dual on a <= row");
  }
  return sol;
}

}  // namespace netmig
