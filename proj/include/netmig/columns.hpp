#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "netmig/instance.hpp"

namespace netmig {

// Endpoints migrated for one pair at one of its sites. at_lo selects which
// endpoint of the (lo, hi) pair the technician works at.
struct OrientedCount {
  int pair = 0;
  bool at_lo = true;
  int n = 0;

  friend auto operator<=>(const OrientedCount&, const OrientedCount&) = default;
};

// One technician-shift pattern: a duration from Delta and per-pair endpoint
// counts at sites of a single region. Stored window-agnostically; maintenance
// windows share the same column structure.
struct ShiftColumn {
  int region = 0;
  Minutes duration = 0;
  std::vector<OrientedCount> counts;  // sorted by (pair, at_lo), n >= 1

  int n_cir() const;
  int work_site(const Instance& inst, const OrientedCount& oc) const;
  std::vector<int> visited_sites(const Instance& inst) const;  // ascending
  std::uint64_t key() const;

  friend bool operator==(const ShiftColumn&, const ShiftColumn&) = default;
};

// Shortest open path through the given sites (ascending, unique), via
// subset DP on the travel matrix. Empty or singleton sets cost 0.
Minutes min_path_travel(const std::vector<int>& sites,
                        const std::vector<std::vector<Minutes>>& travel);

// Same, but also returns the lexicographically smallest optimal visit order
// (permutation enumeration; |sites| <= 8).
std::pair<Minutes, std::vector<int>> min_path_order(
    const std::vector<int>& sites, const std::vector<std::vector<Minutes>>& travel);

// Checks the valid-shift definition from raw fields: counts positive and on
// at most one orientation per pair, work sites inside the column's region,
// n <= circuits per pair, and theta * n_cir + min travel <= duration.
bool validate_column(const ShiftColumn& col, const Instance& inst);

// Deduplicating store shared across windows and master solves.
class ColumnPool {
 public:
  bool add(ShiftColumn col);  // false if an identical column is present
  void clear();
  const std::vector<ShiftColumn>& columns() const { return cols_; }
  std::size_t size() const { return cols_.size(); }

 private:
  std::vector<ShiftColumn> cols_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

}  // namespace netmig
