#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpkit/error.hpp"

namespace hpkit {

// Coordinates are limited to +/-2^15 so a point packs into 48 bits and point
// sets can be hashed with fixed-width keys. Everything this library works
// with fits comfortably.
inline constexpr int kCoordLimit = 32768;  // valid range is [-32768, 32767]

struct Point {
  int x = 0;
  int y = 0;
  int z = 0;
  // Lexicographic order over (x, y, z); value ordering everywhere.
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

constexpr Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Point operator-(const Point& a) { return {-a.x, -a.y, -a.z}; }

constexpr bool in_coord_range(const Point& p) {
  return p.x >= -kCoordLimit && p.x < kCoordLimit && p.y >= -kCoordLimit && p.y < kCoordLimit &&
         p.z >= -kCoordLimit && p.z < kCoordLimit;
}

// 48-bit key; requires in_coord_range(p).
constexpr uint64_t pack_point(const Point& p) {
  return (uint64_t(uint16_t(p.x + kCoordLimit)) << 32) | (uint64_t(uint16_t(p.y + kCoordLimit)) << 16) |
         uint64_t(uint16_t(p.z + kCoordLimit));
}

struct PointHash {
  size_t operator()(const Point& p) const {
    uint64_t z = pack_point(p) + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return size_t(z ^ (z >> 31));
  }
};

// Signed coordinate permutation: output axis i takes sign[i] * input axis perm[i].
// All point-symmetry maps of the supported lattices have this form.
struct Transform {
  std::array<int8_t, 3> perm;
  std::array<int8_t, 3> sign;

  Point apply(const Point& p) const {
    const int c[3] = {p.x, p.y, p.z};
    return {sign[0] * c[perm[0]], sign[1] * c[perm[1]], sign[2] * c[perm[2]]};
  }
  int det() const;
  friend bool operator==(const Transform&, const Transform&) = default;
};

enum class LatticeKind { Cubic, Fcc, Sqr };

// A lattice: membership predicate, neighbor vector set and point-symmetry
// group. The three supported lattices are immutable singletons.
//
//   cubic  all of Z^3, 6 neighbor vectors, group order 48
//   fcc    even-coordinate-sum sublattice of Z^3, 12 neighbor vectors
//          of type (+-1,+-1,0), group order 48
//   sqr    z = 0 plane of Z^3 (2D test lattice), 4 neighbor vectors,
//          group order 8
class Lattice {
 public:
  static const Lattice& cubic();
  static const Lattice& fcc();
  static const Lattice& sqr();
  // Accepts "cubic", "fcc", "sqr"; throws ArgumentError otherwise.
  static const Lattice& by_name(std::string_view name);

  LatticeKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  // Sorted lexicographically; closed under negation.
  const std::vector<Point>& neighbor_vectors() const { return neighbors_; }
  // Full point-symmetry group including reflections, identity first.
  const std::vector<Transform>& point_group() const { return group_; }

  bool contains(const Point& p) const {
    switch (kind_) {
      case LatticeKind::Cubic: return true;
      case LatticeKind::Fcc: return ((p.x + p.y + p.z) & 1) == 0;
      case LatticeKind::Sqr: return p.z == 0;
    }
    return false;
  }

  bool is_neighbor_vector(const Point& v) const {
    const int ax = v.x < 0 ? -v.x : v.x;
    const int ay = v.y < 0 ? -v.y : v.y;
    const int az = v.z < 0 ? -v.z : v.z;
    switch (kind_) {
      case LatticeKind::Cubic: return ax + ay + az == 1;
      case LatticeKind::Fcc: return ax + ay + az == 2 && ax <= 1 && ay <= 1 && az <= 1;
      case LatticeKind::Sqr: return az == 0 && ax + ay == 1;
    }
    return false;
  }

  // Checked variant: p and q must be lattice members.
  bool is_neighbor(const Point& p, const Point& q) const;

 private:
  Lattice(LatticeKind kind, std::string name, std::vector<Point> neighbors, std::vector<Transform> group);

  LatticeKind kind_;
  std::string name_;
  std::vector<Point> neighbors_;
  std::vector<Transform> group_;
};

// Translation that normalizes a set/tuple with the given coordinate-wise
// minimum corner: the corner goes to the origin, except on FCC where an
// odd-sum corner goes to (0,0,1) so the image stays on the lattice.
Point normalizing_shift(const Lattice& lattice, const Point& min_corner);

// Canonical form of an unordered point set: the lexicographically smallest
// normalized image over the given symmetry maps (default: the full point
// group). Result is sorted; idempotent; constant on orbits under
// (symmetry map o lattice translation). Throws ArgumentError on an empty
// set, MembershipError on non-members, CapacityError out of coordinate range.
std::vector<Point> canonicalize_point_set(const Lattice& lattice, std::span<const Point> points,
                                          std::span<const Transform> group = {});

// Same minimization for an ordered tuple (order is preserved and compared
// element-wise). Used for equivalence-class keys. Empty tuples are legal and
// canonicalize to themselves.
std::vector<Point> canonicalize_point_tuple(const Lattice& lattice, std::span<const Point> points,
                                            std::span<const Transform> group = {});

}  // namespace hpkit
