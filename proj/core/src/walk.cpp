#include "walklab/walk.hpp"

#include <stdexcept>

namespace walklab {

void WalkConfig::validate() const {
  if (dimension < kMinDimension)
    throw std::invalid_argument("WalkConfig: dimension must be >= 3 (the walk is transient only there)");
  if (dimension > kMaxDimension)
    throw std::invalid_argument("WalkConfig: dimension exceeds compiled-in bound");
  if (horizon < 1)
    throw std::invalid_argument("WalkConfig: horizon must be >= 1");
  if (horizon > kMaxWalkHorizon)
    throw std::invalid_argument("WalkConfig: horizon exceeds supported maximum");
}

namespace {
const WalkConfig& checked(const WalkConfig& config) {
  config.validate();
  return config;
}
}  // namespace

Walk::Walk(const WalkConfig& config)
    : config_(checked(config)),
      rng_(config.seed, config.stream_id),
      pos_(config.dimension),
      event_{0, LatticePoint(config.dimension), 0} {}

int Walk::advance() {
  const int d = config_.dimension;
  const int r = static_cast<int>(rng_.next_below(static_cast<std::uint32_t>(2 * d)));
  const int axis = r < d ? r : r - d;
  const std::int64_t before = pos_[axis] < 0 ? -pos_[axis] : pos_[axis];
  pos_[axis] += r < d ? 1 : -1;
  const std::int64_t after = pos_[axis] < 0 ? -pos_[axis] : pos_[axis];
  l1_ += after - before;
  ++time_;
  return r + 1;
}

const StepEvent& Walk::next() {
  event_.direction_index = advance();
  event_.time = time_;
  event_.position = pos_;
  return event_;
}

std::vector<StepEvent> generate_walk(const WalkConfig& config) {
  Walk walk(config);
  std::vector<StepEvent> events;
  events.reserve(static_cast<std::size_t>(config.horizon));
  while (!walk.done()) events.push_back(walk.next());
  return events;
}

std::optional<std::int64_t> first_hit_time(const WalkConfig& config,
                                           const std::vector<LatticePoint>& targets,
                                           std::int64_t cap) {
  if (targets.empty())
    throw std::invalid_argument("first_hit_time: target set must be nonempty");
  if (cap > config.horizon)
    throw std::invalid_argument("first_hit_time: cap exceeds the walk horizon");
  for (const LatticePoint& t : targets)
    if (t.dimension() != config.dimension)
      throw std::invalid_argument("first_hit_time: target dimension mismatch");

  Walk walk(config);
  while (walk.time() < cap) {
    walk.advance();
    for (const LatticePoint& t : targets)
      if (walk.position() == t) return walk.time();
  }
  return std::nullopt;
}

}  // namespace walklab
