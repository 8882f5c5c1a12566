#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace walklab {

inline constexpr int kMinDimension = 3;
// Inline-storage bound. The experiments target d in 3..5; bump and recompile
// if a higher dimension is ever needed.
inline constexpr int kMaxDimension = 8;

/// A site of Z^d. Coordinates are 64-bit signed; the dimension is fixed at
/// construction. Equality and hashing are coordinate-exact.
class LatticePoint {
 public:
  LatticePoint() = default;

  explicit LatticePoint(int dimension) : dim_(checked_dim(dimension)) {}

  LatticePoint(std::initializer_list<std::int64_t> coords)
      : dim_(checked_dim(static_cast<int>(coords.size()))) {
    int i = 0;
    for (std::int64_t c : coords) c_[i++] = c;
  }

  static LatticePoint origin(int dimension) { return LatticePoint(dimension); }

  /// +e_axis (or -e_axis when sign < 0), axis in [0, dimension).
  static LatticePoint unit(int dimension, int axis, int sign = 1) {
    LatticePoint p(dimension);
    if (axis < 0 || axis >= dimension)
      throw std::invalid_argument("LatticePoint::unit: axis out of range");
    p.c_[axis] = sign < 0 ? -1 : 1;
    return p;
  }

  int dimension() const { return dim_; }
  std::int64_t operator[](int i) const { return c_[i]; }
  std::int64_t& operator[](int i) { return c_[i]; }
  std::span<const std::int64_t> coords() const {
    return {c_.data(), static_cast<std::size_t>(dim_)};
  }

  bool operator==(const LatticePoint& o) const {
    if (dim_ != o.dim_) return false;
    for (int i = 0; i < dim_; ++i)
      if (c_[i] != o.c_[i]) return false;
    return true;
  }
  bool operator!=(const LatticePoint& o) const { return !(*this == o); }

  LatticePoint operator+(const LatticePoint& o) const {
    LatticePoint r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[i] += o.c_[i];
    return r;
  }
  LatticePoint operator-(const LatticePoint& o) const {
    LatticePoint r = *this;
    for (int i = 0; i < dim_; ++i) r.c_[i] -= o.c_[i];
    return r;
  }

  std::int64_t l1_norm() const {
    std::int64_t s = 0;
    for (int i = 0; i < dim_; ++i) s += std::llabs(c_[i]);
    return s;
  }

  std::int64_t coordinate_sum() const {
    std::int64_t s = 0;
    for (int i = 0; i < dim_; ++i) s += c_[i];
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << c_[i];
    os << ')';
    return os.str();
  }

 private:
  static int checked_dim(int d) {
    if (d < 1 || d > kMaxDimension)
      throw std::invalid_argument("LatticePoint: dimension out of range");
    return d;
  }

  std::array<std::int64_t, kMaxDimension> c_{};
  int dim_ = 0;
};

/// Direction indices run 1..2d: index i <= d steps +e_i, index d+j steps -e_j.
inline LatticePoint direction_offset(int dimension, int direction_index) {
  if (direction_index < 1 || direction_index > 2 * dimension)
    throw std::invalid_argument("direction index out of range");
  const int axis = (direction_index - 1) % dimension;
  return LatticePoint::unit(dimension, axis, direction_index <= dimension ? 1 : -1);
}

/// The surface of the unit ball around the origin: the 2d signed unit vectors.
inline std::vector<LatticePoint> unit_sphere(int dimension) {
  std::vector<LatticePoint> s;
  s.reserve(2 * static_cast<std::size_t>(dimension));
  for (int i = 1; i <= 2 * dimension; ++i) s.push_back(direction_offset(dimension, i));
  return s;
}

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const {
    std::uint64_t h = 0x243F6A8885A308D3ULL ^ static_cast<std::uint64_t>(p.dimension());
    for (int i = 0; i < p.dimension(); ++i) {
      std::uint64_t z = h ^ static_cast<std::uint64_t>(p[i]);
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      h = z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace walklab
