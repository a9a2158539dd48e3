#include <random>

#include "doctest.h"
#include "netmig/colgen.hpp"
#include "netmig/oracle.hpp"
#include "netmig/plan.hpp"
#include "support.hpp"

using namespace netmig;
using netmig::testing::TinySpec;
using netmig::testing::make_instance;

TEST_CASE("empty demand with an empty pool solves to zero") {
  Instance inst = netmig::testing::cross_pair_instance();
  WindowDemand demand{{0}};
  LpModel rmp = build_rmp(inst, demand, {});
  LpSolution sol = solve_lp(rmp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(0.0));
}

TEST_CASE("covering columns are selected at their duration cost") {
  Instance inst = netmig::testing::cross_pair_instance(4);
  inst.resources.eta_tech = {2, 2};  // room for two copies per side
  ShiftColumn lo_col, hi_col;
  lo_col.region = 0;
  lo_col.duration = 360;
  lo_col.counts = {{0, true, 2}};
  hi_col.region = 1;
  hi_col.duration = 360;
  hi_col.counts = {{0, false, 2}};
  REQUIRE(validate_column(lo_col, inst));
  REQUIRE(validate_column(hi_col, inst));

  SUBCASE("one side alone cannot cover the pair") {
    WindowDemand demand{{2}};
    LpSolution sol = solve_lp(build_rmp(inst, demand, {lo_col}));
    CHECK(sol.status == LpStatus::Infeasible);
  }
  SUBCASE("demand met by one copy per side") {
    WindowDemand demand{{2}};
    LpSolution sol = solve_lp(build_rmp(inst, demand, {lo_col, hi_col}));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(163200.0));
    CHECK(sol.x[0] == doctest::Approx(1.0));
    CHECK(sol.x[1] == doctest::Approx(1.0));
  }
  SUBCASE("demand scales the copies linearly, no integrality needed") {
    WindowDemand demand{{4}};
    LpSolution sol = solve_lp(build_rmp(inst, demand, {lo_col, hi_col}));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(326400.0));
    CHECK(sol.x[0] == doctest::Approx(2.0));
    CHECK(sol.x[1] == doctest::Approx(2.0));
  }
}

TEST_CASE("init phase is immediately feasible for zero demand") {
  Instance inst = netmig::testing::cross_pair_instance();
  ColumnPool pool;
  WindowDemand demand{{0}};
  InitResult init = init_phase(inst, demand, pool);
  CHECK(init.feasible);
}

TEST_CASE("init phase certifies infeasibility when no technician can work") {
  TinySpec spec;    // intra-region pair, but the region has no technicians
  spec.sites = {{0, 0.0, 0.0}, {0, 10.0, 0.0}};
  spec.pairs = {{0, 1, 2}};
  spec.eta_tech = {0};
  Instance inst = make_instance(spec);
  ColumnPool pool;
  WindowDemand demand{{1}};
  InitResult init = init_phase(inst, demand, pool);
  REQUIRE(!init.feasible);
  CHECK(verify_farkas(inst, demand, init.duals, enumerate_columns(inst, 0)));
}

TEST_CASE("init phase agrees with plan feasibility within capacity") {
  Instance inst = netmig::testing::cross_pair_instance(3);
  ColumnPool pool;
  WindowDemand demand{{2}};
  InitResult init = init_phase(inst, demand, pool);
  CHECK(init.feasible);
  PlanResult plan = solve_plan(inst, demand);
  CHECK(plan.status == PlanStatus::Optimal);
}

TEST_CASE("solve_cg is a fixpoint once converged") {
  Instance inst = netmig::testing::cross_pair_instance(3);
  ColumnPool pool;
  WindowDemand demand{{3}};
  REQUIRE(init_phase(inst, demand, pool).feasible);
  CgResult first = solve_cg(inst, demand, pool);
  CgResult second = solve_cg(inst, demand, pool);
  CHECK(second.value == doctest::Approx(first.value));
  CHECK(second.columns_generated == 0);
}

TEST_CASE("hybrid, ordered and general modes agree on two-site regions") {
  TinySpec spec;
  spec.sites = {{0, 0.0, 0.0}, {0, 20.0, 0.0}, {1, 400.0, 0.0}, {1, 420.0, 10.0}};
  spec.pairs = {{0, 2, 2}, {1, 3, 2}, {0, 1, 1}};
  spec.eta_tech = {2, 2};
  Instance inst = make_instance(spec);
  WindowDemand demand{{2, 1, 1}};
  double values[3];
  int i = 0;
  for (PricingMode mode :
       {PricingMode::Hybrid, PricingMode::OrderedOnly, PricingMode::GeneralOnly}) {
    ColumnPool pool;
    REQUIRE(init_phase(inst, demand, pool, mode).feasible);
    values[i++] = solve_cg(inst, demand, pool, mode).value;
  }
  CHECK(values[1] == doctest::Approx(values[0]));
  CHECK(values[2] == doctest::Approx(values[0]));
}

TEST_CASE("cg optimum equals the LP over all enumerable columns") {
  std::mt19937_64 rng(2024);
  int probes = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Instance inst = netmig::testing::random_tiny(seed);
    const int P = static_cast<int>(inst.network.pairs.size());

    std::vector<ShiftColumn> all_columns;
    for (int r = 0; r < inst.network.num_regions; ++r)
      for (const ShiftColumn& c : enumerate_columns(inst, r)) all_columns.push_back(c);

    for (int trial = 0; trial < 3; ++trial) {
      WindowDemand demand;
      demand.m.resize(P);
      for (int p = 0; p < P; ++p)
        demand.m[p] = std::uniform_int_distribution<int>(
            0, inst.network.pairs[p].circuits)(rng);

      ColumnPool pool;
      InitResult init = init_phase(inst, demand, pool);
      LpModel full = build_rmp(inst, demand, all_columns);
      LpSolution full_sol = solve_lp(full);
      if (!init.feasible) {
        CHECK(full_sol.status == LpStatus::Infeasible);
        CHECK(verify_farkas(inst, demand, init.duals, all_columns));
        continue;
      }
      REQUIRE(full_sol.status == LpStatus::Optimal);
      CgResult cg = solve_cg(inst, demand, pool);
      CHECK(cg.value == doctest::Approx(full_sol.objective).epsilon(1e-9));

      // returned duals price every enumerable column nonnegatively
      for (const ShiftColumn& col : all_columns)
        CHECK(reduced_cost(col, inst, cg.duals) >= -1e-6);
      ++probes;
    }
  }
  CHECK(probes >= 20);
}
