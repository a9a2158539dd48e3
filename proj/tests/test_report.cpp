#include "doctest.h"
#include "netmig/json_io.hpp"
#include "netmig/report.hpp"
#include "support.hpp"

using namespace netmig;

TEST_CASE("empty solutions summarize to zeros") {
  Instance inst = netmig::testing::cross_pair_instance();
  SolveReport solution;
  Report rep = summarize(solution, inst);
  CHECK(rep.cost == 0);
  CHECK(rep.shifts == 0);
  CHECK(rep.working_fraction == 0.0);
}

TEST_CASE("the single-circuit solution summary") {
  Instance inst = netmig::testing::cross_pair_instance();
  Config config;
  config.target_gap = 0.0;
  SolveReport solution = run(inst, config);
  REQUIRE(solution.status == RunStatus::Optimal);
  Report rep = summarize(solution, inst);
  CHECK(rep.cost == 163200);
  CHECK(rep.shifts == 2);
  CHECK(rep.duration_histogram.at(360) == 2);
  CHECK(rep.working_fraction == doctest::Approx(40.0 / 720.0));
  long histogram_total = 0;
  for (auto [d, n] : rep.duration_histogram) histogram_total += n;
  CHECK(histogram_total == rep.shifts);
}

TEST_CASE("summaries recompute identically from the solution file") {
  Instance inst = netmig::testing::random_tiny(2);
  Config config;
  config.target_gap = 0.0;
  SolveReport solution = run(inst, config);
  Report rep = summarize(solution, inst);
  const std::string text = solution_to_json(inst, config, solution, rep);

  SolutionDoc doc = solution_from_json(text);
  Report again = summarize(doc.solution, doc.instance);
  CHECK(again.cost == rep.cost);
  CHECK(again.shifts == rep.shifts);
  CHECK(again.working_fraction == doctest::Approx(rep.working_fraction));
  CHECK(report_csv_row(doc.instance.name, doc.solution, again) ==
        report_csv_row(inst.name, solution, rep));
}

TEST_CASE("histogram counts always add up to the shift count") {
  for (std::uint64_t seed : {5, 8}) {
    Instance inst = netmig::testing::random_tiny(seed);
    Config config;
    SolveReport solution = run(inst, config);
    Report rep = summarize(solution, inst);
    long total = 0;
    for (auto [d, n] : rep.duration_histogram) total += n;
    CHECK(total == rep.shifts);
    CHECK(rep.working_fraction >= 0.0);
    CHECK(rep.working_fraction <= 1.0);
  }
}
