#include <cmath>
#include <random>

#include "doctest.h"
#include "netmig/lp.hpp"

using namespace netmig;

TEST_CASE("single lower-bounded variable") {
  LpModel lp;
  int x = lp.add_var(0.0, kInf, 1.0);
  int row = lp.add_row(Sense::Ge, 3.0);
  lp.set_coef(row, x, 1.0);
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[x] == doctest::Approx(3.0));
  CHECK(sol.objective == doctest::Approx(3.0));
  CHECK(sol.y[row] == doctest::Approx(1.0));
}

TEST_CASE("unbounded below") {
  LpModel lp;
  lp.add_var(0.0, kInf, -1.0);
  LpSolution sol = solve_lp(lp);
  CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("conflicting rows are infeasible") {
  LpModel lp;
  int x = lp.add_var(-kInf, kInf, 0.0);
  int r1 = lp.add_row(Sense::Ge, 1.0);
  lp.set_coef(r1, x, 1.0);
  int r2 = lp.add_row(Sense::Le, 0.0);
  lp.set_coef(r2, x, 1.0);
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("equality rows and free variables") {
  LpModel lp;
  int x = lp.add_var(-kInf, kInf, -1.0);
  int y = lp.add_var(0.0, kInf, 0.0);
  int row = lp.add_row(Sense::Eq, 4.0);
  lp.set_coef(row, x, 1.0);
  lp.set_coef(row, y, 1.0);
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  // maximizing x drives y to its floor
  CHECK(sol.objective == doctest::Approx(-4.0));
  CHECK(sol.x[x] == doctest::Approx(4.0));
  CHECK(sol.x[y] == doctest::Approx(0.0));
}

TEST_CASE("adding a column never hurts a minimization") {
  LpModel lp;
  int row = lp.add_row(Sense::Ge, 2.0);
  lp.add_column(5.0, {{row, 1.0}});
  double before = solve_lp(lp).objective;
  CHECK(before == doctest::Approx(10.0));

  SUBCASE("duplicate column leaves the optimum unchanged") {
    lp.add_column(5.0, {{row, 1.0}});
    CHECK(solve_lp(lp).objective == doctest::Approx(before));
  }
  SUBCASE("a cheaper column improves the optimum") {
    lp.add_column(3.0, {{row, 2.0}});
    CHECK(solve_lp(lp).objective == doctest::Approx(3.0));
  }
}

TEST_CASE("negatively priced column strictly improves or re-prices clean") {
  // Coverage-style restricted master with one expensive column.
  LpModel lp;
  int cover = lp.add_row(Sense::Ge, 4.0);
  int cap = lp.add_row(Sense::Le, 10.0);
  lp.add_column(9.0, {{cover, 1.0}, {cap, 1.0}});
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  const double before = sol.objective;
  // candidate column: cost 12, covers 2 per unit -> reduced cost 12 - 2*pi
  const double rc = 12.0 - 2.0 * sol.y[cover] - sol.y[cap];
  CHECK(rc < -1e-6);
  lp.add_column(12.0, {{cover, 2.0}, {cap, 1.0}});
  LpSolution improved = solve_lp(lp);
  CHECK(improved.objective < before - 1e-6);
}

namespace {

struct RandomLp {
  LpModel lp;
};

RandomLp make_random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(2, 6), nr(1, 5), coef(-5, 5);
  std::uniform_real_distribution<double> rhs(-8.0, 8.0);
  std::uniform_int_distribution<int> kind(0, 3), sense(0, 2);
  RandomLp out;
  const int n = nv(rng);
  for (int j = 0; j < n; ++j) {
    switch (kind(rng)) {
      case 0:
        out.lp.add_var(0.0, kInf, coef(rng));
        break;
      case 1:
        out.lp.add_var(0.0, 4.0, coef(rng));
        break;
      case 2:
        out.lp.add_var(-3.0, 5.0, coef(rng));
        break;
      default:
        out.lp.add_var(-kInf, kInf, coef(rng));
        break;
    }
  }
  const int m = nr(rng);
  for (int i = 0; i < m; ++i) {
    Sense s = sense(rng) == 0 ? Sense::Le : (sense(rng) == 1 ? Sense::Eq : Sense::Ge);
    int row = out.lp.add_row(s, rhs(rng));
    for (int j = 0; j < n; ++j) {
      int a = coef(rng);
      if (a != 0) out.lp.set_coef(row, j, a);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("random LPs satisfy strong duality and dual sign conventions") {
  std::mt19937_64 rng(42);
  int optimal = 0, infeasible = 0, unbounded = 0;
  for (int trial = 0; trial < 400; ++trial) {
    RandomLp r = make_random_lp(rng);
    LpSolution sol = solve_lp(r.lp);
    if (sol.status == LpStatus::Infeasible) {
      ++infeasible;
      continue;
    }
    if (sol.status == LpStatus::Unbounded) {
      ++unbounded;
      continue;
    }
    ++optimal;
    const double scale = 1.0 + std::abs(sol.objective);
    CHECK(std::abs(sol.objective - sol.dual_objective) <= 1e-7 * scale * 10);
    for (int i = 0; i < r.lp.num_rows(); ++i) {
      double lhs = 0.0;
      for (auto [j, a] : r.lp.rows[i].coefs) lhs += a * sol.x[j];
      switch (r.lp.rows[i].sense) {
        case Sense::Ge:
          CHECK(lhs >= r.lp.rows[i].rhs - 1e-6 * scale);
          CHECK(sol.y[i] >= -1e-7 * scale);
          break;
        case Sense::Le:
          CHECK(lhs <= r.lp.rows[i].rhs + 1e-6 * scale);
          CHECK(sol.y[i] <= 1e-7 * scale);
          break;
        case Sense::Eq:
          CHECK(lhs == doctest::Approx(r.lp.rows[i].rhs).epsilon(1e-6));
          break;
      }
    }
    for (int j = 0; j < r.lp.num_vars(); ++j) {
      CHECK(sol.x[j] >= (r.lp.lo[j] == -kInf ? -1e18 : r.lp.lo[j]) - 1e-6 * scale);
      CHECK(sol.x[j] <= (r.lp.hi[j] == kInf ? 1e18 : r.lp.hi[j]) + 1e-6 * scale);
    }
  }
  // the generator must exercise all three statuses
  CHECK(optimal > 100);
  CHECK(infeasible > 10);
  CHECK(unbounded > 10);
}
