#include "netmig/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

namespace netmig {

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("MIGRATE_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug" || v == "2") return 2;
    if (v == "info" || v == "1") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[netmig] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[netmig] " << msg << "\n";
}

Cents shift_cost_cents(const Resources& res, Minutes duration) {
  // duration * (alpha*cost_tech + cost_eng) / (60*alpha), half-up
  const long long num =
      static_cast<long long>(duration) *
      (static_cast<long long>(res.alpha_eng) * res.cost_tech_cph + res.cost_eng_cph);
  const long long den = 60LL * res.alpha_eng;
  const long long q = num / den;
  const long long r = num % den;
  return q + (2 * r >= den ? 1 : 0);
}

double combined_rate_cph(const Resources& res) {
  return static_cast<double>(res.cost_tech_cph) +
         static_cast<double>(res.cost_eng_cph) / res.alpha_eng;
}

void Network::finalize() {
  const int n = static_cast<int>(sites.size());
  if (n == 0) throw ValidationError("network has no sites");
  num_regions = 0;
  for (int i = 0; i < n; ++i) {
    if (sites[i].id != i)
      throw ValidationError("site ids must be 0..n-1 in order");
    if (sites[i].region < 0) throw ValidationError("negative region index");
    num_regions = std::max(num_regions, sites[i].region + 1);
  }
  region_sites.assign(num_regions, {});
  for (int i = 0; i < n; ++i) region_sites[sites[i].region].push_back(i);

  std::map<std::pair<int, int>, int> seen;
  pairs_at_site.assign(n, {});
  for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
    SitePair& sp = pairs[p];
    if (sp.lo > sp.hi) std::swap(sp.lo, sp.hi);
    if (sp.lo == sp.hi) throw ValidationError("self-pair not allowed");
    if (sp.lo < 0 || sp.hi >= n) throw ValidationError("pair references unknown site");
    if (sp.circuits < 1) throw ValidationError("pair with circuits < 1");
    if (!seen.emplace(std::make_pair(sp.lo, sp.hi), p).second)
      throw ValidationError("duplicate site pair");
    pairs_at_site[sp.lo].push_back(p);
    pairs_at_site[sp.hi].push_back(p);
  }

  if (static_cast<int>(travel.size()) != n)
    throw ValidationError("travel matrix size mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(travel[i].size()) != n)
      throw ValidationError("travel matrix not square");
    if (travel[i][i] != 0) throw ValidationError("travel matrix diagonal not zero");
    for (int j = 0; j < n; ++j) {
      if (travel[i][j] < 0) throw ValidationError("negative travel time");
      if (travel[i][j] != travel[j][i])
        throw ValidationError("travel matrix not symmetric");
    }
  }
}

int Network::pair_between(int s, int t) const {
  if (s > t) std::swap(s, t);
  for (int p : pairs_at_site[s])
    if (pairs[p].lo == s && pairs[p].hi == t) return p;
  return -1;
}

void Resources::validate(int num_regions) const {
  if (static_cast<int>(eta_tech.size()) != num_regions)
    throw ValidationError("eta_tech size must equal the number of regions");
  for (int e : eta_tech)
    if (e < 0) throw ValidationError("eta_tech < 0");
  if (eta_cir < 0) throw ValidationError("eta_cir < 0");
  if (eta_eng < 0) throw ValidationError("eta_eng < 0");
  if (alpha_eng < 1) throw ValidationError("alpha_eng < 1");
  if (theta <= 0) throw ValidationError("theta must be positive");
  if (cost_tech_cph < 0 || cost_eng_cph < 0) throw ValidationError("negative cost rate");
  if (durations.empty()) throw ValidationError("durations empty");
  Minutes prev = 0;
  for (Minutes d : durations) {
    if (d <= prev) throw ValidationError("durations must be strictly ascending and > 0");
    prev = d;
  }
  if (windows < 1) throw ValidationError("windows < 1");
}

using json = nlohmann::ordered_json;

static json instance_to_json_obj(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  j["sites"] = json::array();
  for (const Site& s : inst.network.sites)
    j["sites"].push_back({{"id", s.id}, {"region", s.region}, {"x_km", s.x_km}, {"y_km", s.y_km}});
  j["pairs"] = json::array();
  for (const SitePair& p : inst.network.pairs)
    j["pairs"].push_back({{"s", p.lo}, {"t", p.hi}, {"circuits", p.circuits}});
  j["travel_minutes"] = inst.network.travel;
  const Resources& r = inst.resources;
  j["resources"] = {{"eta_tech", r.eta_tech},
                    {"eta_cir", r.eta_cir},
                    {"eta_eng", r.eta_eng},
                    {"alpha_eng", r.alpha_eng},
                    {"theta_min", r.theta},
                    {"cost_tech_cph", r.cost_tech_cph},
                    {"cost_eng_cph", r.cost_eng_cph},
                    {"durations_min", r.durations},
                    {"windows", r.windows}};
  return j;
}

static Instance instance_from_json_obj(const json& j) {
  Instance inst;
  try {
    inst.name = j.value("name", "");
    for (const auto& js : j.at("sites")) {
      Site s;
      s.id = js.at("id").get<int>();
      s.region = js.at("region").get<int>();
      s.x_km = js.at("x_km").get<double>();
      s.y_km = js.at("y_km").get<double>();
      inst.network.sites.push_back(s);
    }
    for (const auto& jp : j.at("pairs")) {
      SitePair p;
      p.lo = jp.at("s").get<int>();
      p.hi = jp.at("t").get<int>();
      p.circuits = jp.at("circuits").get<int>();
      inst.network.pairs.push_back(p);
    }
    if (j.contains("travel_minutes") && !j["travel_minutes"].is_null()) {
      inst.network.travel = j["travel_minutes"].get<std::vector<std::vector<Minutes>>>();
    } else {
      const int n = static_cast<int>(inst.network.sites.size());
      std::vector<std::array<double, 2>> coords(n);
      for (int i = 0; i < n; ++i)
        coords[i] = {inst.network.sites[i].x_km, inst.network.sites[i].y_km};
      inst.network.travel.assign(n, std::vector<Minutes>(n, 0));
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          inst.network.travel[a][b] = inst.network.travel[b][a] =
              travel_time(coords, a, b, 80.0);
    }
    const auto& jr = j.at("resources");
    Resources& r = inst.resources;
    r.eta_tech = jr.at("eta_tech").get<std::vector<int>>();
    r.eta_cir = jr.at("eta_cir").get<int>();
    r.eta_eng = jr.at("eta_eng").get<int>();
    r.alpha_eng = jr.at("alpha_eng").get<int>();
    r.theta = jr.at("theta_min").get<Minutes>();
    r.cost_tech_cph = jr.at("cost_tech_cph").get<Cents>();
    r.cost_eng_cph = jr.at("cost_eng_cph").get<Cents>();
    r.durations = jr.at("durations_min").get<std::vector<Minutes>>();
    r.windows = jr.at("windows").get<int>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("instance schema error: ") + e.what());
  }
  inst.network.finalize();
  inst.resources.validate(inst.network.num_regions);
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  return instance_to_json_obj(inst).dump(2);
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("JSON parse error: ") + e.what());
  }
  return instance_from_json_obj(j);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file: " + path);
  out << instance_to_json(inst) << "\n";
}

static double dist_km(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

std::vector<int> cluster_regions(const std::vector<std::array<double, 2>>& coords,
                                 double threshold_km) {
  const int n = static_cast<int>(coords.size());
  if (n == 0) throw ValidationError("cluster_regions: no coordinates");
  if (threshold_km <= 0) throw ValidationError("cluster_regions: threshold must be > 0");

  std::vector<int> region(n, -1);
  std::vector<char> taken(n, false);
  int next_region = 0;
  int remaining = n;
  while (remaining > 0) {
    // Candidate cluster per seed: greedily add the point that keeps the
    // diameter smallest, stopping when nothing fits under the threshold.
    std::vector<int> best;
    for (int seed = 0; seed < n; ++seed) {
      if (taken[seed]) continue;
      std::vector<int> cand = {seed};
      std::vector<char> in_cand(n, false);
      in_cand[seed] = true;
      while (true) {
        int pick = -1;
        double pick_diam = kInf;
        for (int q = 0; q < n; ++q) {
          if (taken[q] || in_cand[q]) continue;
          double diam = 0.0;
          for (int c : cand) diam = std::max(diam, dist_km(coords[c], coords[q]));
          if (diam <= threshold_km && diam < pick_diam) {
            pick_diam = diam;
            pick = q;
          }
        }
        if (pick < 0) break;
        cand.push_back(pick);
        in_cand[pick] = true;
      }
      if (cand.size() > best.size()) best = cand;  // ties keep the lowest seed
    }
    for (int c : best) {
      region[c] = next_region;
      taken[c] = true;
    }
    ++next_region;
    remaining -= static_cast<int>(best.size());
  }
  return region;
}

Minutes travel_time(const std::vector<std::array<double, 2>>& coords, int s, int t,
                    double speed_kmh) {
  if (speed_kmh <= 0) throw ValidationError("travel_time: speed must be > 0");
  if (s == t) return 0;
  const double km = dist_km(coords[s], coords[t]);
  return static_cast<Minutes>(std::llround(km / speed_kmh * 60.0));
}

Topology eunetworks_topology() {
  // 15 sites; QT clustering at 80 km yields one 4-site region, one 2-site
  // region and 9 singletons (11 regions, matching the base network shape).
  Topology t;
  t.name = "eunetworks";
  t.coords = {
      {0, 0},       {30, 10},    {55, 5},    {25, 40},    // 4-site cluster
      {200, 0},     {240, 20},                            // 2-site cluster
      {400, 300},   {700, 100},  {650, -200}, {100, 300},
      {-200, 250},  {500, -100}, {800, 400},  {-150, -150},
      {330, -260},
  };
  t.edges = {{0, 1},  {1, 2},  {0, 3},  {1, 3},  {2, 4},   {4, 5},  {5, 6},
             {6, 9},  {9, 10}, {10, 0}, {5, 11}, {11, 8},  {8, 14}, {14, 13},
             {13, 0}, {11, 7}, {7, 12}, {12, 6}, {2, 14},  {3, 9},  {4, 14}};
  return t;
}

Instance generate_instance(const Topology& topo, const GenParams& params) {
  if (params.mu <= 0 || params.sigma <= 0)
    throw ValidationError("generate_instance: mu and sigma must be > 0");
  const int n = static_cast<int>(topo.coords.size());
  if (n < 2) throw ValidationError("generate_instance: need at least 2 sites");
  if (topo.edges.empty()) throw ValidationError("generate_instance: need at least 1 edge");

  std::mt19937_64 rng(params.seed);

  // Per-site endpoint targets: lognormal with the given mean/stddev
  // (moment-matched to the underlying normal), rounded to integers.
  const double s2 = std::log(1.0 + (params.sigma * params.sigma) / (params.mu * params.mu));
  const double mlog = std::log(params.mu) - s2 / 2.0;
  std::lognormal_distribution<double> dist(mlog, std::sqrt(s2));
  std::vector<long long> residual(n);
  for (int i = 0; i < n; ++i)
    residual[i] = std::max(0LL, std::llround(dist(rng)));

  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : topo.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw ValidationError("generate_instance: bad edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());

  // Place circuits: largest residual site first, partner among adjacent
  // sites with remaining demand, falling back to any other site.
  std::map<std::pair<int, int>, int> phi;
  while (true) {
    int s = -1;
    for (int i = 0; i < n; ++i)
      if (residual[i] > 0 && (s < 0 || residual[i] > residual[s])) s = i;
    if (s < 0) break;
    std::vector<int> cand;
    for (int b : adj[s])
      if (residual[b] > 0) cand.push_back(b);
    if (cand.empty())
      for (int b = 0; b < n; ++b)
        if (b != s && residual[b] > 0) cand.push_back(b);
    if (cand.empty())
      for (int b = 0; b < n; ++b)
        if (b != s) cand.push_back(b);
    int t = cand.size() == 1
                ? cand[0]
                : cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
    ++phi[{std::min(s, t), std::max(s, t)}];
    --residual[s];
    --residual[t];
  }

  Instance inst;
  {
    std::ostringstream name;
    name << topo.name << "-mu" << params.mu << "-w" << params.windows << "-seed"
         << params.seed;
    inst.name = name.str();
  }
  std::vector<int> regions = cluster_regions(topo.coords, params.cluster_km);
  for (int i = 0; i < n; ++i)
    inst.network.sites.push_back({i, regions[i], topo.coords[i][0], topo.coords[i][1]});
  for (const auto& [key, count] : phi)
    inst.network.pairs.push_back({key.first, key.second, count});
  inst.network.travel.assign(n, std::vector<Minutes>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      inst.network.travel[a][b] = inst.network.travel[b][a] =
          travel_time(topo.coords, a, b, params.speed_kmh);

  Resources& r = inst.resources;
  const int num_regions = *std::max_element(regions.begin(), regions.end()) + 1;
  r.eta_tech.assign(num_regions, params.eta_tech);
  r.eta_cir = params.eta_cir;
  r.eta_eng = params.eta_eng;
  r.alpha_eng = params.alpha_eng;
  r.theta = params.theta;
  r.cost_tech_cph = params.cost_tech_cph;
  r.cost_eng_cph = params.cost_eng_cph;
  r.durations = params.durations;
  r.windows = params.windows;

  inst.network.finalize();
  inst.resources.validate(inst.network.num_regions);
  return inst;
}

}  // namespace netmig
