#pragma once

#include <string>

#include "netmig/report.hpp"

namespace netmig {

// Solution document: embeds the instance so reports can be recomputed from
// the file alone.
std::string solution_to_json(const Instance& inst, const Config& config,
                             const SolveReport& solution, const Report& summary);

struct SolutionDoc {
  Instance instance;
  SolveReport solution;  // cuts are not serialized; counts and plans are
  Report summary;
};

SolutionDoc solution_from_json(const std::string& text);

}  // namespace netmig
