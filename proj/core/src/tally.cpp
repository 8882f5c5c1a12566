#include "walklab/tally.hpp"

#include <algorithm>
#include <stdexcept>

namespace walklab {

namespace {

constexpr std::int64_t kCoordLimit = (1LL << 31) - 4;

// Narrows a point to the 32-bit registry layout. Out-of-range coordinates
// cannot belong to any visited site (|coordinate| <= horizon < 2^31).
bool narrow(const LatticePoint& p, std::int32_t* out) {
  for (int i = 0; i < p.dimension(); ++i) {
    const std::int64_t c = p[i];
    if (c > kCoordLimit || c < -kCoordLimit) return false;
    out[i] = static_cast<std::int32_t>(c);
  }
  return true;
}

}  // namespace

TallyBoard::TallyBoard(int dimension, std::int64_t expected_sites)
    : map_(dimension, expected_sites > 0 ? static_cast<std::size_t>(expected_sites) : 0) {
  if (dimension < kMinDimension || dimension > kMaxDimension)
    throw std::invalid_argument("TallyBoard: dimension out of range");
  if (expected_sites > 0) {
    counts_.reserve(static_cast<std::size_t>(expected_sites));
    first_time_.reserve(static_cast<std::size_t>(expected_sites));
  }
  gamma_offsets_.resize(static_cast<std::size_t>(2 * dimension) * dimension, 0);
  for (int i = 1; i <= 2 * dimension; ++i) {
    const LatticePoint off = direction_offset(dimension, i);  // e_i
    std::int32_t* row = gamma_offsets_.data() + static_cast<std::size_t>(i - 1) * dimension;
    for (int j = 0; j < dimension; ++j) row[j] = static_cast<std::int32_t>(off[j]);
    row[0] += 1;  // shift by e_1: Gamma = e_1 + S(1)
  }
}

void TallyBoard::ingest(const StepEvent& event) {
  const int d = dimension();
  if (event.position.dimension() != d)
    throw std::invalid_argument("TallyBoard::ingest: dimension mismatch");
  if (event.time != steps_ + 1)
    throw std::invalid_argument("TallyBoard::ingest: out-of-order step event");

  std::array<std::int32_t, kMaxDimension> z;
  if (!narrow(event.position, z.data()))
    throw std::invalid_argument("TallyBoard::ingest: coordinate out of 32-bit range");

  // New-point probes run against visits 1..j-1, i.e. before recording S_j.
  std::array<std::int32_t, kMaxDimension> nb = z;
  nb[0] += 1;  // S_j + e_1
  const bool site_seen = map_.find(z.data()) != SiteMap::npos;
  const bool partner_seen = map_.find(nb.data()) != SiteMap::npos;
  if (!site_seen && !partner_seen) ++counters_.upsilon_new;

  bool gamma_new = true;
  for (int i = 0; i < 2 * d && gamma_new; ++i) {
    const std::int32_t* off = gamma_offsets_.data() + static_cast<std::size_t>(i) * d;
    for (int j = 0; j < d; ++j) nb[j] = z[j] + off[j];
    if (map_.find(nb.data()) != SiteMap::npos) gamma_new = false;
  }
  if (gamma_new) ++counters_.gamma_new;

  bool inserted = false;
  const std::uint32_t id = map_.find_or_insert(z.data(), inserted);
  if (inserted) {
    counts_.push_back(0);
    first_time_.push_back(static_cast<std::uint32_t>(event.time));
  }
  ++counts_[id];
  max_count_ = std::max<std::int64_t>(max_count_, counts_[id]);
  ++steps_;
}

void TallyBoard::consume(Walk& walk, std::int64_t until_time) {
  const std::int64_t stop =
      until_time < 0 ? walk.config().horizon : std::min(until_time, walk.config().horizon);
  if (walk.time() != steps_)
    throw std::invalid_argument("TallyBoard::consume: walk time does not match board");
  while (walk.time() < stop) ingest(walk.next());
}

std::int64_t TallyBoard::local_time(const LatticePoint& z) const {
  if (z.dimension() != dimension())
    throw std::invalid_argument("TallyBoard::local_time: dimension mismatch");
  std::array<std::int32_t, kMaxDimension> zz;
  if (!narrow(z, zz.data())) return 0;
  return local_time_raw(zz.data());
}

std::int64_t TallyBoard::local_time_raw(const std::int32_t* z) const {
  const std::uint32_t id = map_.find(z);
  return id == SiteMap::npos ? 0 : counts_[id];
}

std::int64_t TallyBoard::sphere_occupation_raw(const std::int32_t* z) const {
  const int d = dimension();
  std::array<std::int32_t, kMaxDimension> nb;
  for (int j = 0; j < d; ++j) nb[j] = z[j];
  std::int64_t total = 0;
  for (int axis = 0; axis < d; ++axis) {
    nb[axis] = z[axis] + 1;
    total += local_time_raw(nb.data());
    nb[axis] = z[axis] - 1;
    total += local_time_raw(nb.data());
    nb[axis] = z[axis];
  }
  return total;
}

std::int64_t TallyBoard::occupation_time(std::span<const LatticePoint> set,
                                         const LatticePoint& shift) const {
  std::int64_t total = 0;
  for (const LatticePoint& a : set) total += local_time(a + shift);
  return total;
}

std::int64_t TallyBoard::sphere_occupation(const LatticePoint& center) const {
  if (center.dimension() != dimension())
    throw std::invalid_argument("TallyBoard::sphere_occupation: dimension mismatch");
  std::array<std::int32_t, kMaxDimension> zz;
  if (!narrow(center, zz.data())) {
    // Far away from every visited site only if the sphere is too: fall back
    // to the exact 64-bit path.
    std::int64_t total = 0;
    for (const LatticePoint& e : unit_sphere(dimension())) total += local_time(center + e);
    return total;
  }
  return sphere_occupation_raw(zz.data());
}

std::int64_t TallyBoard::max_occupation_over_translates(std::span<const LatticePoint> set) const {
  const int d = dimension();
  if (set.empty() || map_.size() == 0) return 0;
  for (const LatticePoint& a : set)
    if (a.dimension() != d)
      throw std::invalid_argument("max_occupation_over_translates: dimension mismatch");

  // Candidate shifts u with (A + u) hitting the visited set: u = v - a.
  BasicSiteMap<std::int64_t> candidates(d, map_.size());
  std::array<std::int64_t, kMaxDimension> u;
  std::array<std::int32_t, kMaxDimension> w;
  std::int64_t best = 0;
  const std::uint32_t n = static_cast<std::uint32_t>(map_.size());
  for (std::uint32_t id = 0; id < n; ++id) {
    const std::int32_t* v = map_.site(id);
    for (const LatticePoint& a : set) {
      for (int j = 0; j < d; ++j) u[j] = static_cast<std::int64_t>(v[j]) - a[j];
      bool fresh = false;
      candidates.find_or_insert(u.data(), fresh);
      if (!fresh) continue;
      std::int64_t total = 0;
      for (const LatticePoint& b : set) {
        bool in_range = true;
        for (int j = 0; j < d; ++j) {
          const std::int64_t c = u[j] + b[j];
          if (c > kCoordLimit || c < -kCoordLimit) {
            in_range = false;
            break;
          }
          w[j] = static_cast<std::int32_t>(c);
        }
        if (in_range) total += local_time_raw(w.data());
      }
      best = std::max(best, total);
    }
  }
  return best;
}

LevelCounts TallyBoard::level_counts() const {
  LevelCounts lc;
  for (const std::uint32_t c : counts_) ++lc.q[c];
  lc.u = lc.q;
  return lc;
}

void TallyBoard::require_extension(const TallyBoard& cap_board) const {
  if (cap_board.dimension() != dimension())
    throw std::invalid_argument("cap board dimension mismatch");
  if (cap_board.steps_consumed() < steps_consumed())
    throw std::invalid_argument("cap board horizon is shorter than the board's");
}

LevelCounts TallyBoard::level_counts(const TallyBoard& cap_board) const {
  require_extension(cap_board);
  LevelCounts lc;
  const std::uint32_t n = static_cast<std::uint32_t>(map_.size());
  for (std::uint32_t id = 0; id < n; ++id) {
    ++lc.q[counts_[id]];
    const std::int64_t at_cap = cap_board.local_time_raw(map_.site(id));
    if (at_cap < counts_[id])
      throw std::invalid_argument("cap board does not extend this trajectory");
    ++lc.u[at_cap];
  }
  return lc;
}

std::int64_t TallyBoard::eta_statistic(const TallyBoard& cap_board) const {
  require_extension(cap_board);
  const int d = dimension();
  std::array<std::int32_t, kMaxDimension> origin{};
  for (int j = 0; j < d; ++j) origin[j] = 0;
  std::int64_t best = cap_board.local_time_raw(origin.data());  // k = 0 term
  const std::uint32_t n = static_cast<std::uint32_t>(map_.size());
  for (std::uint32_t id = 0; id < n; ++id) {
    const std::int64_t at_cap = cap_board.local_time_raw(map_.site(id));
    if (at_cap < counts_[id])
      throw std::invalid_argument("cap board does not extend this trajectory");
    best = std::max(best, at_cap);
  }
  return best;
}

LatticePoint TallyBoard::site_point(std::uint32_t id) const {
  const int d = dimension();
  LatticePoint p(d);
  const std::int32_t* z = map_.site(id);
  for (int j = 0; j < d; ++j) p[j] = z[j];
  return p;
}

}  // namespace walklab
