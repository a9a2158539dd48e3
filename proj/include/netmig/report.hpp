#pragma once

#include <map>
#include <string>

#include "netmig/lbbd.hpp"

namespace netmig {

// Managerial metrics recomputed from the plans themselves.
struct Report {
  Cents cost = 0;
  long shifts = 0;
  std::map<Minutes, long> duration_histogram;  // shifts per Delta member
  double working_fraction = 0.0;  // (migration + travel minutes) / shift minutes
  struct WindowRow {
    Cents cost = 0;
    long shifts = 0;
    double working_fraction = 0.0;
  };
  std::vector<WindowRow> windows;
};

Report summarize(const SolveReport& solution, const Instance& inst);

std::string report_csv_header();
std::string report_csv_row(const std::string& instance_name, const SolveReport& solution,
                           const Report& report);

}  // namespace netmig
