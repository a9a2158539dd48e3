#include <cmath>
#include <random>

#include "doctest.h"
#include "netmig/mip.hpp"

using namespace netmig;

TEST_CASE("binary knapsack as minimization") {
  MipModel m;
  int x = m.lp.add_var(0.0, 1.0, -3.0);
  int y = m.lp.add_var(0.0, 1.0, -2.0);
  int row = m.lp.add_row(Sense::Le, 1.0);
  m.lp.set_coef(row, x, 1.0);
  m.lp.set_coef(row, y, 1.0);
  m.integer = {1, 1};
  MipSolution sol = solve_mip(m, 0.0);
  REQUIRE(sol.status == MipStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-3.0));
  CHECK(sol.gap == doctest::Approx(0.0));
  CHECK(sol.x[x] == doctest::Approx(1.0));
  CHECK(sol.x[y] == doctest::Approx(0.0));
}

TEST_CASE("empty feasible set") {
  MipModel m;
  int x = m.lp.add_var(0.0, 1.0, 0.0);
  int r1 = m.lp.add_row(Sense::Ge, 1.0);
  m.lp.set_coef(r1, x, 1.0);
  int r2 = m.lp.add_row(Sense::Le, 0.0);
  m.lp.set_coef(r2, x, 1.0);
  m.integer = {1};
  CHECK(solve_mip(m, 0.0).status == MipStatus::Infeasible);
}

TEST_CASE("lazy separator keeps cutting until the point is acceptable") {
  MipModel m;
  int x0 = m.lp.add_var(0.0, 3.0, -1.0);
  int x1 = m.lp.add_var(0.0, 3.0, -1.0);
  int row = m.lp.add_row(Sense::Le, 4.0);
  m.lp.set_coef(row, x0, 1.0);
  m.lp.set_coef(row, x1, 1.0);
  m.integer = {1, 1};

  int calls = 0;
  LazySeparator sep = [&](const std::vector<double>& x) {
    ++calls;
    std::vector<LpModel::Row> cuts;
    if (x[0] >= 1.0 - 1e-6) {
      LpModel::Row cut;
      cut.coefs = {{0, 1.0}};
      cut.sense = Sense::Le;
      cut.rhs = 0.0;
      cuts.push_back(cut);
    }
    return cuts;
  };
  MipSolution with_sep = solve_mip(m, 0.0, sep);
  REQUIRE(with_sep.status == MipStatus::Optimal);
  CHECK(calls > 0);
  CHECK(with_sep.x[x0] == doctest::Approx(0.0));

  // same model with the cut written out explicitly
  MipModel explicit_model = m;
  int cut_row = explicit_model.lp.add_row(Sense::Le, 0.0);
  explicit_model.lp.set_coef(cut_row, x0, 1.0);
  MipSolution reference = solve_mip(explicit_model, 0.0);
  REQUIRE(reference.status == MipStatus::Optimal);
  CHECK(with_sep.objective == doctest::Approx(reference.objective));
}

TEST_CASE("branch_select picks the most fractional variable") {
  std::vector<char> marks = {1, 1};
  CHECK(branch_select({0.5, 0.9}, marks) == 0);
  CHECK(branch_select({0.9, 0.5}, marks) == 1);
  CHECK(branch_select({0.5, 0.5}, marks) == 0);
  CHECK(branch_select({1.0, 2.0}, marks) == -1);
}

namespace {

struct RandomIp {
  MipModel model;
  int n = 0;
};

RandomIp make_random_ip(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(2, 5), nr(1, 4), coef(-5, 5);
  RandomIp out;
  out.n = nv(rng);
  for (int j = 0; j < out.n; ++j) out.model.lp.add_var(0.0, 3.0, coef(rng));
  out.model.integer.assign(out.n, 1);
  const int m = nr(rng);
  std::uniform_int_distribution<int> rhs(-6, 18);
  std::uniform_int_distribution<int> sense(0, 2);
  for (int i = 0; i < m; ++i) {
    Sense s = sense(rng) == 0 ? Sense::Le : (sense(rng) == 1 ? Sense::Ge : Sense::Le);
    int row = out.model.lp.add_row(s, rhs(rng));
    for (int j = 0; j < out.n; ++j) {
      int a = coef(rng);
      if (a != 0) out.model.lp.set_coef(row, j, a);
    }
  }
  return out;
}

// Exhaustive lattice reference on the bounded box.
std::pair<bool, double> enumerate_ip(const RandomIp& ip) {
  const int n = ip.n;
  std::vector<int> x(n, 0);
  bool feasible = false;
  double best = 0.0;
  while (true) {
    bool ok = true;
    for (const auto& row : ip.model.lp.rows) {
      double lhs = 0.0;
      for (auto [j, a] : row.coefs) lhs += a * x[j];
      if (row.sense == Sense::Le && lhs > row.rhs + 1e-9) ok = false;
      if (row.sense == Sense::Ge && lhs < row.rhs - 1e-9) ok = false;
      if (row.sense == Sense::Eq && std::abs(lhs - row.rhs) > 1e-9) ok = false;
      if (!ok) break;
    }
    if (ok) {
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += ip.model.lp.obj[j] * x[j];
      if (!feasible || obj < best) best = obj;
      feasible = true;
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++x[i] <= 3) break;
      x[i] = 0;
    }
    if (i == n) break;
  }
  return {feasible, best};
}

}  // namespace

TEST_CASE("random integer programs match lattice enumeration") {
  std::mt19937_64 rng(99);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    RandomIp ip = make_random_ip(rng);
    auto [feasible, best] = enumerate_ip(ip);
    MipSolution sol = solve_mip(ip.model, 0.0);
    if (!feasible) {
      CHECK(sol.status == MipStatus::Infeasible);
      continue;
    }
    REQUIRE(sol.status == MipStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(best).epsilon(1e-9));
    ++solved;
  }
  CHECK(solved > 20);
}

TEST_CASE("global bound is monotone over the run") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    RandomIp ip = make_random_ip(rng);
    MipSolution sol;
    try {
      sol = solve_mip(ip.model, 0.0);
    } catch (const LimitError&) {
      continue;
    }
    for (std::size_t i = 1; i < sol.bound_trace.size(); ++i)
      CHECK(sol.bound_trace[i] >= sol.bound_trace[i - 1] - 1e-9);
  }
}

TEST_CASE("relative gap stop returns a certified bound") {
  MipModel m;
  // min sum -x_i with a fairly tight packing row; gap 50% stops early
  const int n = 6;
  int row = -1;
  for (int j = 0; j < n; ++j) m.lp.add_var(0.0, 1.0, -(1.0 + 0.1 * j));
  row = m.lp.add_row(Sense::Le, 2.5);
  for (int j = 0; j < n; ++j) m.lp.set_coef(row, j, 1.0);
  m.integer.assign(n, 1);
  MipSolution rough = solve_mip(m, 0.5);
  REQUIRE((rough.status == MipStatus::Optimal || rough.status == MipStatus::Feasible));
  MipSolution exact = solve_mip(m, 0.0);
  REQUIRE(exact.status == MipStatus::Optimal);
  CHECK(rough.best_bound <= exact.objective + 1e-9);
  CHECK(rough.objective >= exact.objective - 1e-9);
}
