#include "hpkit/lattice.hpp"

#include <algorithm>

namespace hpkit {

int Transform::det() const {
  const int p0 = perm[0], p1 = perm[1], p2 = perm[2];
  const bool even =
      (p0 == 0 && p1 == 1 && p2 == 2) || (p0 == 1 && p1 == 2 && p2 == 0) || (p0 == 2 && p1 == 0 && p2 == 1);
  return (even ? 1 : -1) * sign[0] * sign[1] * sign[2];
}

namespace {

std::vector<Transform> signed_permutations(bool fix_z) {
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<Transform> out;
  for (const auto& p : kPerms) {
    if (fix_z && p[2] != 2) continue;
    for (int bits = 0; bits < 8; ++bits) {
      Transform t;
      t.perm = {int8_t(p[0]), int8_t(p[1]), int8_t(p[2])};
      t.sign = {int8_t((bits & 1) ? -1 : 1), int8_t((bits & 2) ? -1 : 1), int8_t((bits & 4) ? -1 : 1)};
      if (fix_z && t.sign[2] < 0) continue;
      out.push_back(t);
    }
  }
  // Identity first, rest in generation order.
  const Transform id{{0, 1, 2}, {1, 1, 1}};
  auto it = std::find(out.begin(), out.end(), id);
  std::rotate(out.begin(), it, it + 1);
  return out;
}

std::vector<Point> cubic_neighbors() {
  std::vector<Point> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Point> fcc_neighbors() {
  std::vector<Point> v;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      v.push_back({a, b, 0});
      v.push_back({a, 0, b});
      v.push_back({0, a, b});
    }
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Point> sqr_neighbors() {
  std::vector<Point> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Lattice::Lattice(LatticeKind kind, std::string name, std::vector<Point> neighbors, std::vector<Transform> group)
    : kind_(kind), name_(std::move(name)), neighbors_(std::move(neighbors)), group_(std::move(group)) {}

const Lattice& Lattice::cubic() {
  static const Lattice instance(LatticeKind::Cubic, "cubic", cubic_neighbors(), signed_permutations(false));
  return instance;
}

const Lattice& Lattice::fcc() {
  static const Lattice instance(LatticeKind::Fcc, "fcc", fcc_neighbors(), signed_permutations(false));
  return instance;
}

const Lattice& Lattice::sqr() {
  static const Lattice instance(LatticeKind::Sqr, "sqr", sqr_neighbors(), signed_permutations(true));
  return instance;
}

const Lattice& Lattice::by_name(std::string_view name) {
  if (name == "cubic") return cubic();
  if (name == "fcc") return fcc();
  if (name == "sqr") return sqr();
  throw ArgumentError("unknown lattice '" + std::string(name) + "' (expected cubic, fcc or sqr)");
}

bool Lattice::is_neighbor(const Point& p, const Point& q) const {
  if (!contains(p) || !contains(q)) throw MembershipError("point is not a member of lattice " + name_);
  return is_neighbor_vector(p - q);
}

Point normalizing_shift(const Lattice& lattice, const Point& min_corner) {
  Point t = -min_corner;
  if (lattice.kind() == LatticeKind::Fcc && ((min_corner.x + min_corner.y + min_corner.z) & 1)) t.z += 1;
  return t;
}

namespace {

void check_input(const Lattice& lattice, std::span<const Point> points) {
  for (const Point& p : points) {
    if (!in_coord_range(p)) throw CapacityError("point coordinate outside the supported +/-2^15 range");
    if (!lattice.contains(p)) throw MembershipError("point is not a member of lattice " + lattice.name());
  }
}

Point min_corner_of(std::span<const Point> pts) {
  Point m = pts[0];
  for (const Point& p : pts) {
    m.x = std::min(m.x, p.x);
    m.y = std::min(m.y, p.y);
    m.z = std::min(m.z, p.z);
  }
  return m;
}

std::vector<Point> canonicalize_impl(const Lattice& lattice, std::span<const Point> points,
                                     std::span<const Transform> group, bool sorted_set) {
  if (group.empty()) group = lattice.point_group();
  std::vector<Point> best;
  std::vector<Point> image(points.size());
  for (const Transform& g : group) {
    for (size_t i = 0; i < points.size(); ++i) image[i] = g.apply(points[i]);
    const Point t = normalizing_shift(lattice, min_corner_of(image));
    for (Point& p : image) p = p + t;
    if (sorted_set) std::sort(image.begin(), image.end());
    if (best.empty() || image < best) best = image;
  }
  for (const Point& p : best)
    if (!in_coord_range(p)) throw CapacityError("point set too spread out to canonicalize");
  return best;
}

}  // namespace

std::vector<Point> canonicalize_point_set(const Lattice& lattice, std::span<const Point> points,
                                          std::span<const Transform> group) {
  if (points.empty()) throw ArgumentError("cannot canonicalize an empty point set");
  check_input(lattice, points);
  return canonicalize_impl(lattice, points, group, true);
}

std::vector<Point> canonicalize_point_tuple(const Lattice& lattice, std::span<const Point> points,
                                            std::span<const Transform> group) {
  if (points.empty()) return {};
  check_input(lattice, points);
  return canonicalize_impl(lattice, points, group, false);
}

}  // namespace hpkit
