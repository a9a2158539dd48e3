#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netmig/common.hpp"

namespace netmig {

struct Site {
  int id = 0;
  int region = 0;
  double x_km = 0.0;
  double y_km = 0.0;
};

// Unordered site pair carrying a circuit multiplicity, stored with lo < hi.
struct SitePair {
  int lo = 0;
  int hi = 0;
  int circuits = 0;
};

struct Network {
  std::vector<Site> sites;
  std::vector<SitePair> pairs;
  std::vector<std::vector<Minutes>> travel;  // symmetric, zero diagonal

  int num_regions = 0;
  std::vector<std::vector<int>> region_sites;   // per region, ascending site ids
  std::vector<std::vector<int>> pairs_at_site;  // per site, pair indices

  // Rebuilds the derived members above and checks all structural
  // invariants; throws ValidationError naming the first violation.
  void finalize();

  int pair_between(int s, int t) const;  // -1 if no such pair
  int region_of(int site) const { return sites[site].region; }
};

struct Resources {
  std::vector<int> eta_tech;  // per region
  int eta_cir = 0;
  int eta_eng = 0;
  int alpha_eng = 1;
  Minutes theta = 20;
  Cents cost_tech_cph = 10800;  // cents per hour
  Cents cost_eng_cph = 14000;
  std::vector<Minutes> durations = {360, 480};  // ascending
  int windows = 1;

  void validate(int num_regions) const;
  int max_shifts_per_window() const { return alpha_eng * eta_eng; }
};

struct Instance {
  std::string name;
  Network network;
  Resources resources;
};

// Cost of one shift: (cost_tech + cost_eng/alpha_eng) * duration/60, kept
// exact as a rational and rounded half-up to whole cents.
Cents shift_cost_cents(const Resources& res, Minutes duration);

// cost_tech + cost_eng/alpha_eng, in cents per hour (may be fractional).
double combined_rate_cph(const Resources& res);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

// Quality-threshold clustering: repeatedly extract the largest candidate
// cluster (diameter <= threshold_km), ties broken by lowest seed index.
// Returns the region index per site.
std::vector<int> cluster_regions(const std::vector<std::array<double, 2>>& coords,
                                 double threshold_km);

// Euclidean distance at the given speed, rounded to the nearest minute.
Minutes travel_time(const std::vector<std::array<double, 2>>& coords, int s, int t,
                    double speed_kmh);

// Site coordinates plus the adjacency the circuit placement walks.
struct Topology {
  std::string name;
  std::vector<std::array<double, 2>> coords;
  std::vector<std::pair<int, int>> edges;
};

Topology eunetworks_topology();

struct GenParams {
  double mu = 5.0;     // mean endpoints per site
  double sigma = 2.5;  // std dev of endpoints per site
  std::uint64_t seed = 1;
  int windows = 3;
  int eta_cir = 30;
  int eta_tech = 3;  // per region
  int eta_eng = 3;
  int alpha_eng = 5;
  Minutes theta = 20;
  Cents cost_tech_cph = 10800;
  Cents cost_eng_cph = 14000;
  std::vector<Minutes> durations = {360, 480};
  double cluster_km = 80.0;
  double speed_kmh = 80.0;
};

Instance generate_instance(const Topology& topo, const GenParams& params);

}  // namespace netmig
