#include "netmig/columns.hpp"

#include <algorithm>
#include <numeric>

namespace netmig {

int ShiftColumn::n_cir() const {
  int total = 0;
  for (const OrientedCount& oc : counts) total += oc.n;
  return total;
}

int ShiftColumn::work_site(const Instance& inst, const OrientedCount& oc) const {
  const SitePair& p = inst.network.pairs[oc.pair];
  return oc.at_lo ? p.lo : p.hi;
}

std::vector<int> ShiftColumn::visited_sites(const Instance& inst) const {
  std::vector<int> sites;
  for (const OrientedCount& oc : counts) sites.push_back(work_site(inst, oc));
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

std::uint64_t ShiftColumn::key() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(region));
  mix(static_cast<std::uint64_t>(duration));
  for (const OrientedCount& oc : counts) {
    mix(static_cast<std::uint64_t>(oc.pair) * 2 + (oc.at_lo ? 1 : 0));
    mix(static_cast<std::uint64_t>(oc.n));
  }
  return h;
}

Minutes min_path_travel(const std::vector<int>& sites,
                        const std::vector<std::vector<Minutes>>& travel) {
  const int k = static_cast<int>(sites.size());
  if (k <= 1) return 0;
  if (k == 2) return travel[sites[0]][sites[1]];
  if (k > 16) throw LimitError("min_path_travel: too many sites");
  const int full = (1 << k) - 1;
  const Minutes big = std::numeric_limits<Minutes>::max() / 4;
  std::vector<std::vector<Minutes>> dp(1 << k, std::vector<Minutes>(k, big));
  for (int i = 0; i < k; ++i) dp[1 << i][i] = 0;
  for (int mask = 1; mask <= full; ++mask) {
    for (int last = 0; last < k; ++last) {
      if (!(mask & (1 << last)) || dp[mask][last] >= big) continue;
      for (int nxt = 0; nxt < k; ++nxt) {
        if (mask & (1 << nxt)) continue;
        const Minutes cand = dp[mask][last] + travel[sites[last]][sites[nxt]];
        if (cand < dp[mask | (1 << nxt)][nxt]) dp[mask | (1 << nxt)][nxt] = cand;
      }
    }
  }
  Minutes best = big;
  for (int last = 0; last < k; ++last) best = std::min(best, dp[full][last]);
  return best;
}

std::pair<Minutes, std::vector<int>> min_path_order(
    const std::vector<int>& sites, const std::vector<std::vector<Minutes>>& travel) {
  const int k = static_cast<int>(sites.size());
  if (k <= 1) return {0, sites};
  if (k > 8) throw LimitError("min_path_order: too many sites");
  std::vector<int> perm = sites;  // ascending = lexicographically first
  std::sort(perm.begin(), perm.end());
  std::vector<int> best_perm = perm;
  Minutes best = std::numeric_limits<Minutes>::max();
  do {
    Minutes t = 0;
    for (int i = 0; i + 1 < k; ++i) t += travel[perm[i]][perm[i + 1]];
    if (t < best) {  // strict: keeps the lexicographically first optimum
      best = t;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_perm};
}

bool validate_column(const ShiftColumn& col, const Instance& inst) {
  const Network& net = inst.network;
  if (col.region < 0 || col.region >= net.num_regions) return false;
  if (std::find(inst.resources.durations.begin(), inst.resources.durations.end(),
                col.duration) == inst.resources.durations.end())
    return false;
  if (col.counts.empty()) return false;
  std::vector<char> seen_pair(net.pairs.size(), 0);
  for (const OrientedCount& oc : col.counts) {
    if (oc.pair < 0 || oc.pair >= static_cast<int>(net.pairs.size())) return false;
    if (oc.n < 1 || oc.n > net.pairs[oc.pair].circuits) return false;
    if (seen_pair[oc.pair]) return false;  // at most one orientation per pair
    seen_pair[oc.pair] = 1;
    const int s = oc.at_lo ? net.pairs[oc.pair].lo : net.pairs[oc.pair].hi;
    if (net.region_of(s) != col.region) return false;
  }
  const Minutes work = static_cast<Minutes>(inst.resources.theta) * col.n_cir();
  const Minutes tr = min_path_travel(col.visited_sites(inst), net.travel);
  return work + tr <= col.duration;
}

bool ColumnPool::add(ShiftColumn col) {
  std::sort(col.counts.begin(), col.counts.end(),
            [](const OrientedCount& a, const OrientedCount& b) {
              return a.pair != b.pair ? a.pair < b.pair : a.at_lo > b.at_lo;
            });
  const std::uint64_t k = col.key();
  auto [it, fresh] = buckets_.try_emplace(k);
  if (!fresh) {
    for (int idx : it->second)
      if (cols_[idx] == col) return false;
  }
  it->second.push_back(static_cast<int>(cols_.size()));
  cols_.push_back(std::move(col));
  return true;
}

void ColumnPool::clear() {
  cols_.clear();
  buckets_.clear();
}

}  // namespace netmig
