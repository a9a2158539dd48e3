#include <algorithm>
#include <random>

#include "doctest.h"
#include "netmig/oracle.hpp"
#include "netmig/pricing.hpp"
#include "support.hpp"

using namespace netmig;
using netmig::testing::TinySpec;
using netmig::testing::make_instance;

namespace {

CgDuals zero_duals(const Instance& inst) {
  CgDuals d;
  d.pi_side.assign(2 * inst.network.pairs.size(), 0.0);
  d.pi_tech.assign(inst.network.num_regions, 0.0);
  d.pi_eng = 0.0;
  return d;
}

void set_pair(CgDuals& d, int pair, double v) {
  d.pi_side[2 * pair] = v;
  d.pi_side[2 * pair + 1] = v;
}

}  // namespace

TEST_CASE("reduced cost of an empty-count column is the duration cost") {
  Instance inst = netmig::testing::cross_pair_instance();
  ShiftColumn col;
  col.region = 0;
  col.duration = 360;
  CgDuals d = zero_duals(inst);
  CHECK(reduced_cost(col, inst, d) == doctest::Approx(81600.0));
  d.pi_tech[0] = -81600.0;
  CHECK(reduced_cost(col, inst, d) == doctest::Approx(163200.0));
}

TEST_CASE("columns in the optimal basis price to zero") {
  Instance inst = netmig::testing::cross_pair_instance(2);
  ColumnPool pool;
  WindowDemand demand{{2}};
  InitResult init = init_phase(inst, demand, pool);
  REQUIRE(init.feasible);
  CgResult cg = solve_cg(inst, demand, pool);
  REQUIRE(cg.feasible);
  bool found_basic = false;
  for (const ShiftColumn& col : pool.columns()) {
    const double rc = reduced_cost(col, inst, cg.duals);
    CHECK(rc >= -1e-6);
    if (std::abs(rc) <= 1e-6) found_basic = true;
  }
  CHECK(found_basic);
}

TEST_CASE("single-site region with zero duals prices nothing") {
  Instance inst = netmig::testing::cross_pair_instance();
  PricingInput in;
  in.inst = &inst;
  in.region = 0;
  in.duals = zero_duals(inst);
  CHECK(price_general(in).empty());
  CHECK(price_ordered(in).empty());
}

TEST_CASE("duration caps the endpoints a shift can migrate") {
  TinySpec spec;
  spec.sites = {{0, 0.0, 0.0}, {1, 600.0, 0.0}};
  spec.pairs = {{0, 1, 30}};
  spec.eta_tech = {1, 1};
  spec.durations = {360};
  Instance inst = make_instance(spec);
  PricingInput in;
  in.inst = &inst;
  in.region = 0;
  in.duals = zero_duals(inst);
  set_pair(in.duals, 0, 100000.0);
  std::vector<ShiftColumn> cols = price_general(in);
  REQUIRE(!cols.empty());
  CHECK(cols[0].n_cir() == 18);  // floor(360 / 20)
  CHECK(reduced_cost(cols[0], inst, in.duals) ==
        doctest::Approx(81600.0 - 18 * 100000.0));
}

TEST_CASE("long intra-region travel limits two-site columns") {
  // 533.6 km ~ 400 minutes of travel between the two region sites.
  TinySpec spec;
  spec.sites = {{0, 0.0, 0.0}, {0, 533.3, 0.0}, {1, 1000.0, 0.0}};
  spec.pairs = {{0, 2, 10}, {1, 2, 10}};
  spec.eta_tech = {2, 2};
  Instance inst = make_instance(spec);
  REQUIRE(inst.network.travel[0][1] == 400);

  for (const ShiftColumn& col : enumerate_columns(inst, 0)) {
    if (col.visited_sites(inst).size() == 2) CHECK(col.n_cir() <= 4);
    CHECK(validate_column(col, inst));
  }

  PricingInput in;
  in.inst = &inst;
  in.region = 0;
  in.duals = zero_duals(inst);
  set_pair(in.duals, 0, 50000.0);
  set_pair(in.duals, 1, 50000.0);
  for (const ShiftColumn& col : price_general(in)) {
    CHECK(validate_column(col, inst));
    if (col.visited_sites(inst).size() == 2) CHECK(col.n_cir() <= 4);
  }
}

TEST_CASE("ordered pricer equals the general pricer on small regions") {
  // one- and two-site regions
  TinySpec spec;
  spec.sites = {{0, 0.0, 0.0}, {1, 200.0, 0.0}, {1, 215.0, 8.0}};
  spec.pairs = {{0, 1, 2}, {1, 2, 3}, {0, 2, 1}};
  spec.eta_tech = {2, 2};
  Instance inst = make_instance(spec);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 60000.0);
  for (int trial = 0; trial < 25; ++trial) {
    PricingInput in;
    in.inst = &inst;
    in.duals = zero_duals(inst);
    for (int p = 0; p < (int)inst.network.pairs.size(); ++p) set_pair(in.duals, p, u(rng));
    for (int r = 0; r < inst.network.num_regions; ++r) {
      in.region = r;
      std::vector<ShiftColumn> a = price_ordered(in);
      std::vector<ShiftColumn> b = price_general(in);
      REQUIRE(a.size() == b.size());
      if (!a.empty())
        CHECK(reduced_cost(a[0], inst, in.duals) ==
              doctest::Approx(reduced_cost(b[0], inst, in.duals)));
    }
  }
}

TEST_CASE("general pricer dominates the ordered pricer") {
  // 4-site region where only the non-monotone visit order 1-0-2-3 (400 min)
  // fits the 480-minute shift; the ascending order needs 573 minutes.
  TinySpec spec;
  spec.sites = {{0, 0.0, 0.0}, {0, 0.0, 320.0}, {0, 106.7, 0.0}, {0, 213.3, 0.0},
                {1, 2000.0, 0.0}};
  spec.pairs = {{0, 4, 1}, {1, 4, 1}, {2, 4, 1}, {3, 4, 1}};
  spec.eta_tech = {2, 4};
  spec.durations = {480};
  Instance inst = make_instance(spec);

  PricingInput in;
  in.inst = &inst;
  in.region = 0;
  in.duals = zero_duals(inst);
  for (int p = 0; p < 4; ++p) set_pair(in.duals, p, 40000.0);
  std::vector<ShiftColumn> gen = price_general(in);
  std::vector<ShiftColumn> ord = price_ordered(in);
  REQUIRE(!gen.empty());
  REQUIRE(!ord.empty());
  const double best_gen = reduced_cost(gen[0], inst, in.duals);
  const double best_ord = reduced_cost(ord[0], inst, in.duals);
  // 108800 - 4*40000 for the full tour vs 108800 - 3*40000 ordered
  CHECK(best_gen == doctest::Approx(-51200.0));
  CHECK(best_ord == doctest::Approx(-11200.0));
  CHECK(best_gen < best_ord);

  auto visits_all = [&](const std::vector<ShiftColumn>& cols) {
    for (const ShiftColumn& c : cols)
      if (c.visited_sites(inst).size() == 4) return true;
    return false;
  };
  CHECK(visits_all(gen));
  CHECK(!visits_all(ord));
}

TEST_CASE("pricer best column matches full enumeration") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-20000.0, 90000.0);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = netmig::testing::random_tiny(seed);
    PricingInput in;
    in.inst = &inst;
    in.duals = zero_duals(inst);
    for (int p = 0; p < (int)inst.network.pairs.size(); ++p)
      set_pair(in.duals, p, std::max(0.0, u(rng)));
    in.duals.pi_eng = -std::abs(u(rng)) / 10.0;
    for (int r = 0; r < inst.network.num_regions; ++r) {
      in.region = r;
      in.duals.pi_tech[r] = -std::abs(u(rng)) / 10.0;
      double best_enum = kInf;
      for (const ShiftColumn& col : enumerate_columns(inst, r))
        best_enum = std::min(best_enum, reduced_cost(col, inst, in.duals));
      std::vector<ShiftColumn> priced = price_general(in);
      if (priced.empty()) {
        CHECK(best_enum >= -1e-6);
      } else {
        CHECK(validate_column(priced[0], inst));
        CHECK(reduced_cost(priced[0], inst, in.duals) ==
              doctest::Approx(best_enum).epsilon(1e-9));
      }
    }
  }
}
