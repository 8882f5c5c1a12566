#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "walklab/lattice.hpp"
#include "walklab/rng.hpp"

namespace walklab {

// Keeps every coordinate within 32 bits so tally boards can store sites
// compactly (|coordinate| <= horizon).
inline constexpr std::int64_t kMaxWalkHorizon = (1LL << 31) - 8;

struct WalkConfig {
  int dimension = 3;
  std::int64_t horizon = 0;      // number of steps to emit
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;   // replication index

  void validate() const;
};

struct StepEvent {
  std::int64_t time = 0;     // 1-based step index
  LatticePoint position;     // S_time
  int direction_index = 0;   // 1..2d
};

/// Streams a simple symmetric walk on Z^d. S_0 = 0 is implicit (not emitted);
/// next()/advance() produce steps 1..horizon. Identical configs reproduce
/// identical trajectories bit for bit.
class Walk {
 public:
  explicit Walk(const WalkConfig& config);

  bool done() const { return time_ >= config_.horizon; }
  std::int64_t time() const { return time_; }
  const WalkConfig& config() const { return config_; }

  /// Advance one step without materializing an event. Returns the direction
  /// index in 1..2d.
  int advance();

  /// Advance one step and return the event (valid until the next call).
  const StepEvent& next();

  const LatticePoint& position() const { return pos_; }
  /// L1 norm of the current position, maintained incrementally.
  std::int64_t l1_norm() const { return l1_; }

 private:
  WalkConfig config_;
  CounterRng rng_;
  LatticePoint pos_;
  StepEvent event_;
  std::int64_t time_ = 0;
  std::int64_t l1_ = 0;
};

/// Materializes a full trajectory. Intended for small horizons; hot loops
/// should drive Walk directly.
std::vector<StepEvent> generate_walk(const WalkConfig& config);

/// min{ i >= 1 : S_i in targets } if it is <= cap, std::nullopt otherwise
/// (the T = infinity convention). Requires cap <= config.horizon.
std::optional<std::int64_t> first_hit_time(const WalkConfig& config,
                                           const std::vector<LatticePoint>& targets,
                                           std::int64_t cap);

}  // namespace walklab
