#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "walklab/lattice.hpp"
#include "walklab/walk.hpp"

namespace walklab {

/// Open-addressing map from lattice site to dense id. Coordinates live in a
/// flat registry, d per site; insertion order is first-visit order. Memory is
/// proportional to the number of distinct sites, not to any bounding box.
template <typename CoordT>
class BasicSiteMap {
 public:
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  explicit BasicSiteMap(int dimension, std::size_t expected_sites = 0)
      : dim_(dimension) {
    std::size_t cap = 64;
    while (cap < 2 * expected_sites) cap <<= 1;
    table_.assign(cap, 0);
    mask_ = cap - 1;
  }

  int dimension() const { return dim_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }

  std::uint32_t find(const CoordT* z) const {
    std::size_t i = hash_coords(z) & mask_;
    for (;;) {
      const std::uint32_t slot = table_[i];
      if (slot == 0) return npos;
      if (equals(slot - 1, z)) return slot - 1;
      i = (i + 1) & mask_;
    }
  }

  std::uint32_t find_or_insert(const CoordT* z, bool& inserted) {
    if (size() * 10 >= table_.size() * 7) grow();
    std::size_t i = hash_coords(z) & mask_;
    for (;;) {
      const std::uint32_t slot = table_[i];
      if (slot == 0) {
        const std::uint32_t id = static_cast<std::uint32_t>(size());
        coords_.insert(coords_.end(), z, z + dim_);
        table_[i] = id + 1;
        inserted = true;
        return id;
      }
      if (equals(slot - 1, z)) {
        inserted = false;
        return slot - 1;
      }
      i = (i + 1) & mask_;
    }
  }

  const CoordT* site(std::uint32_t id) const {
    return coords_.data() + static_cast<std::size_t>(id) * dim_;
  }

 private:
  bool equals(std::uint32_t id, const CoordT* z) const {
    const CoordT* s = site(id);
    for (int i = 0; i < dim_; ++i)
      if (s[i] != z[i]) return false;
    return true;
  }

  std::uint64_t hash_coords(const CoordT* z) const {
    std::uint64_t h = 0x243F6A8885A308D3ULL;
    for (int i = 0; i < dim_; ++i)
      h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(z[i])));
    return h;
  }

  void grow() {
    std::vector<std::uint32_t> old;
    old.swap(table_);
    table_.assign(old.size() * 2, 0);
    mask_ = table_.size() - 1;
    const std::uint32_t n = static_cast<std::uint32_t>(size());
    for (std::uint32_t id = 0; id < n; ++id) {
      std::size_t i = hash_coords(site(id)) & mask_;
      while (table_[i] != 0) i = (i + 1) & mask_;
      table_[i] = id + 1;
    }
  }

  int dim_;
  std::uint64_t mask_ = 0;
  std::vector<std::uint32_t> table_;  // site id + 1; 0 marks an empty slot
  std::vector<CoordT> coords_;
};

using SiteMap = BasicSiteMap<std::int32_t>;

/// Histograms of local-time levels. q(k) counts sites with xi(z,n) = k over
/// visited sites (k >= 1). u(k) counts sites visited by time n whose local
/// time at the cap horizon equals k; with no cap board it coincides with q.
/// u is cap-dependent by construction and is reported at the stated cap.
struct LevelCounts {
  std::map<std::int64_t, std::int64_t> q;
  std::map<std::int64_t, std::int64_t> u;
};

/// zeta_n and nu_n: counts of walk positions whose two-point-set translate
/// {S_j, S_j + e_1} (resp. unit-sphere translate around S_j + e_1) was never
/// touched by an earlier step. The first step always counts as new.
struct NewPointCounters {
  std::int64_t upsilon_new = 0;
  std::int64_t gamma_new = 0;
};

/// Per-run accounting of local times: xi(z, n) for every visited site, the
/// first-visit order, level counts, maxima, and the new-point counters.
/// Single writer per walk stream; all queries are read-only snapshots.
class TallyBoard {
 public:
  explicit TallyBoard(int dimension, std::int64_t expected_sites = 0);

  /// Consumes one step. Events must arrive in order (time = steps_consumed+1).
  void ingest(const StepEvent& event);

  /// Drains `walk` up to `until_time` (or to its horizon when negative).
  void consume(Walk& walk, std::int64_t until_time = -1);

  int dimension() const { return map_.dimension(); }
  std::int64_t steps_consumed() const { return steps_; }
  std::size_t distinct_sites() const { return map_.size(); }

  /// xi(z, n): number of visits to z during steps 1..n.
  std::int64_t local_time(const LatticePoint& z) const;
  /// xi(n) = max_z xi(z, n).
  std::int64_t max_local_time() const { return max_count_; }

  NewPointCounters new_point_counters() const { return counters_; }

  /// Occupation time of `set` translated by `shift`: sum of local times.
  std::int64_t occupation_time(std::span<const LatticePoint> set,
                               const LatticePoint& shift) const;

  /// Xi(z, n): occupation time of the unit sphere centered at z.
  std::int64_t sphere_occupation(const LatticePoint& center) const;

  /// Xi*(A, n) = sup_u Xi(A + u, n). Exact: only translates that intersect
  /// the visited set can be nonzero, so the sup runs over those.
  std::int64_t max_occupation_over_translates(std::span<const LatticePoint> set) const;

  LevelCounts level_counts() const;
  /// Level counts with u taken against a longer-horizon board of the same
  /// trajectory (the infinity surrogate).
  LevelCounts level_counts(const TallyBoard& cap_board) const;

  /// eta(n) = max over sites visited by time n (origin included, k = 0) of
  /// their local time at the cap horizon.
  std::int64_t eta_statistic(const TallyBoard& cap_board) const;

  /// f(site_id, coords [dimension() int32 values], local_time, first_visit).
  /// Iteration order is first-visit order.
  template <typename F>
  void for_each_site(F&& f) const {
    const std::uint32_t n = static_cast<std::uint32_t>(map_.size());
    for (std::uint32_t id = 0; id < n; ++id)
      f(id, map_.site(id), static_cast<std::int64_t>(counts_[id]),
        static_cast<std::int64_t>(first_time_[id]));
  }

  LatticePoint site_point(std::uint32_t id) const;
  std::int64_t site_local_time(std::uint32_t id) const { return counts_[id]; }
  std::int64_t site_first_visit(std::uint32_t id) const { return first_time_[id]; }

  // Raw-coordinate probes for hot loops; `z` points at dimension() values.
  std::int64_t local_time_raw(const std::int32_t* z) const;
  std::int64_t sphere_occupation_raw(const std::int32_t* z) const;

 private:
  void require_extension(const TallyBoard& cap_board) const;

  SiteMap map_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> first_time_;
  std::vector<std::int32_t> gamma_offsets_;  // e_1 + e_i for i = 1..2d, flat
  NewPointCounters counters_;
  std::int64_t steps_ = 0;
  std::int64_t max_count_ = 0;
};

}  // namespace walklab
