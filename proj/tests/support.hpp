#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "netmig/instance.hpp"

namespace netmig::testing {

struct TinySpec {
  // site -> (region, x_km, y_km)
  std::vector<std::tuple<int, double, double>> sites;
  // (s, t, circuits)
  std::vector<std::tuple<int, int, int>> pairs;
  std::vector<int> eta_tech;
  int eta_cir = 10;
  int eta_eng = 2;
  int alpha_eng = 5;
  int windows = 1;
  Minutes theta = 20;
  std::vector<Minutes> durations = {360, 480};
  Cents cost_tech = 10800;
  Cents cost_eng = 14000;
};

inline Instance make_instance(const TinySpec& spec, const std::string& name = "tiny") {
  Instance inst;
  inst.name = name;
  std::vector<std::array<double, 2>> coords;
  int id = 0;
  for (auto [region, x, y] : spec.sites) {
    inst.network.sites.push_back({id++, region, x, y});
    coords.push_back({x, y});
  }
  for (auto [s, t, c] : spec.pairs) inst.network.pairs.push_back({s, t, c});
  const int n = static_cast<int>(coords.size());
  inst.network.travel.assign(n, std::vector<Minutes>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      inst.network.travel[a][b] = inst.network.travel[b][a] = travel_time(coords, a, b, 80.0);
  Resources& r = inst.resources;
  r.eta_tech = spec.eta_tech;
  r.eta_cir = spec.eta_cir;
  r.eta_eng = spec.eta_eng;
  r.alpha_eng = spec.alpha_eng;
  r.theta = spec.theta;
  r.cost_tech_cph = spec.cost_tech;
  r.cost_eng_cph = spec.cost_eng;
  r.durations = spec.durations;
  r.windows = spec.windows;
  inst.network.finalize();
  inst.resources.validate(inst.network.num_regions);
  return inst;
}

// Two sites in two regions, one pair: the smallest interesting instance.
inline Instance cross_pair_instance(int circuits = 1, int windows = 1) {
  TinySpec spec;
  spec.sites = {{0, 0.0, 0.0}, {1, 500.0, 0.0}};
  spec.pairs = {{0, 1, circuits}};
  spec.eta_tech = {1, 1};
  spec.eta_cir = 10;
  spec.eta_eng = 1;
  spec.alpha_eng = 5;
  spec.windows = windows;
  return make_instance(spec, "cross-pair");
}

// Seeded random instance inside the oracle limits. Region hops stay short so
// every visit order fits the smallest duration.
inline Instance random_tiny(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  TinySpec spec;
  const int regions = pick(1, 3);
  int total_sites = 0;
  for (int r = 0; r < regions; ++r) {
    int here = pick(1, std::min(3, 6 - total_sites - (regions - 1 - r)));
    if (r == regions - 1 && total_sites + here < 2) here = 2 - total_sites;
    for (int s = 0; s < here; ++s)
      spec.sites.push_back({r, 300.0 * r + 12.0 * s, (s % 2) * 9.0});
    total_sites += here;
  }
  const int n = total_sites;

  std::vector<std::pair<int, int>> all_pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) all_pairs.emplace_back(a, b);
  std::vector<int> idx(all_pairs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::shuffle(idx.begin(), idx.end(), rng);

  int budget = pick(1, 6);
  for (int i : idx) {
    if (budget <= 0) break;
    const int phi = pick(1, std::min(3, budget));
    spec.pairs.push_back({all_pairs[i].first, all_pairs[i].second, phi});
    budget -= phi;
    if (static_cast<int>(spec.pairs.size()) >= 4) break;
  }

  spec.eta_tech.assign(regions, 0);
  for (int r = 0; r < regions; ++r) spec.eta_tech[r] = pick(1, 2);
  spec.eta_eng = pick(1, 3);
  spec.alpha_eng = pick(2, 5);
  spec.windows = pick(1, 2);
  int total_phi = 0;
  for (auto [s, t, c] : spec.pairs) total_phi += c;
  spec.eta_cir = (total_phi + spec.windows - 1) / spec.windows + pick(0, 2);
  spec.theta = pick(0, 1) ? 20 : 30;
  return make_instance(spec, "tiny-seed-" + std::to_string(seed));
}

// Deliberately infeasible variants.
inline Instance infeasible_tiny(std::uint64_t seed) {
  Instance inst = random_tiny(seed);
  switch (seed % 3) {
    case 0: {  // window cap below the circuit total
      int total = 0;
      for (const SitePair& p : inst.network.pairs) total += p.circuits;
      inst.resources.eta_cir = std::max(0, (total - 1) / inst.resources.windows -
                                               (total > 1 ? 1 : 0));
      if (inst.resources.eta_cir * inst.resources.windows >= total)
        inst.resources.eta_cir = 0;
      break;
    }
    case 1:  // no technicians where work is required
      inst.resources.eta_tech[inst.network.region_of(inst.network.pairs[0].lo)] = 0;
      break;
    default:  // migrations cannot fit any duration
      inst.resources.theta = inst.resources.durations.back() + 1;
      break;
  }
  return inst;
}

}  // namespace netmig::testing
