#include "hpkit/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace hpkit {

namespace {

// Dense occupancy over [-radius, radius]^3, 0 = empty.
struct Grid {
  int radius;
  int side;
  std::vector<int16_t> cells;

  explicit Grid(int radius) : radius(radius), side(2 * radius + 1), cells(size_t(side) * side * side, 0) {}

  size_t index(const Point& p) const {
    return (size_t(p.x + radius) * size_t(side) + size_t(p.y + radius)) * size_t(side) + size_t(p.z + radius);
  }
  int16_t at(const Point& p) const { return cells[index(p)]; }
  void set(const Point& p, int16_t v) { cells[index(p)] = v; }
};

// Lex-leader state: transforms that map the placed prefix to itself. A new
// element q prunes the branch when some active transform sends it strictly
// below q (the transformed copy would enumerate earlier).
struct ActiveStack {
  std::vector<std::vector<uint8_t>> ids;

  void init(size_t depth_count, size_t group_size) {
    ids.assign(depth_count, {});
    ids[0].resize(group_size);
    for (size_t i = 0; i < group_size; ++i) ids[0][i] = uint8_t(i);
  }
};

// steps sorted ascending = value order of the enumeration.
template <class Leaf>
class WalkEnumerator {
 public:
  WalkEnumerator(int n, const Lattice& lattice, bool reduce, Leaf leaf)
      : n_(n), lattice_(lattice), reduce_(reduce), leaf_(leaf), grid_(n) {
    pts_.resize(size_t(n));
    if (reduce_) active_.init(size_t(n), lattice_.point_group().size());
  }

  void run() {
    pts_[0] = {0, 0, 0};
    grid_.set(pts_[0], 1);
    dfs(1);
    grid_.set(pts_[0], 0);
  }

 protected:
  bool dfs(int depth) {
    if (depth == n_) return leaf_(std::span<const Point>(pts_));
    const auto& group = lattice_.point_group();
    for (const Point& v : lattice_.neighbor_vectors()) {
      const Point q = pts_[size_t(depth - 1)] + v;
      if (grid_.at(q) != 0) continue;
      if (reduce_) {
        bool canonical = true;
        auto& next_active = active_.ids[size_t(depth)];
        next_active.clear();
        for (uint8_t id : active_.ids[size_t(depth - 1)]) {
          const Point gq = group[id].apply(q);
          if (gq < q) {
            canonical = false;
            break;
          }
          if (gq == q) next_active.push_back(id);
        }
        if (!canonical) continue;
      }
      pts_[size_t(depth)] = q;
      grid_.set(q, int16_t(depth + 1));
      const bool keep_going = dfs(depth + 1);
      grid_.set(q, 0);
      if (!keep_going) return false;
    }
    return true;
  }

  int n_;
  const Lattice& lattice_;
  bool reduce_;
  Leaf leaf_;
  Grid grid_;
  std::vector<Point> pts_;
  ActiveStack active_;
};

void check_bound(int n, const Lattice& lattice, ModelKind kind) {
  if (n < 1) throw ArgumentError("length must be at least 1");
  const int bound = oracle_max_length(lattice, kind);
  if (n > bound)
    throw CapacityError("length " + std::to_string(n) + " exceeds the exhaustive-enumeration bound " +
                        std::to_string(bound) + " for lattice " + lattice.name());
}

// Shared accumulator for optimal-set statistics.
struct OptimalAggregate {
  const HpSequence& seq;
  const Lattice& lattice;
  ModelKind kind;
  Energy best = std::numeric_limits<Energy>::max();
  uint64_t count = 0;
  std::map<std::vector<Point>, OracleClass> classes;
  std::vector<Point> key_scratch;

  OptimalAggregate(const HpSequence& seq, const Lattice& lattice, ModelKind kind)
      : seq(seq), lattice(lattice), kind(kind) {}

  void add(Energy e, const Conformation& conf) {
    if (e > best) return;
    if (e < best) {
      best = e;
      count = 0;
      classes.clear();
    }
    ++count;
    key_scratch.clear();
    const auto& source = kind == ModelKind::Backbone ? conf.backbone : conf.side_chains;
    for (int i : seq.h_indices()) key_scratch.push_back(source[size_t(i)]);
    std::vector<Point> key = canonicalize_point_tuple(lattice, key_scratch);
    auto [it, inserted] = classes.try_emplace(std::move(key));
    if (inserted) {
      it->second.key = it->first;
      it->second.member = conf;
    }
    ++it->second.size;
  }

  OracleResult finish() && {
    OracleResult result;
    result.optimal_energy = best == std::numeric_limits<Energy>::max() ? 0 : best;
    result.degeneracy = count;
    result.core_degeneracy = classes.size();
    result.classes.reserve(classes.size());
    for (auto& [key, cls] : classes) result.classes.push_back(std::move(cls));
    return result;
  }
};

OracleResult brute_force_backbone(const HpSequence& seq, const Lattice& lattice) {
  const int n = seq.length();
  OptimalAggregate agg(seq, lattice, ModelKind::Backbone);
  Grid grid(n);
  std::vector<Point> pts(size_t(n));
  ActiveStack active;
  const auto& group = lattice.point_group();
  active.init(size_t(std::max(n, 1)), group.size());
  Conformation conf;

  // contacts[d] = non-consecutive HH contacts among the first d+1 monomers.
  std::vector<int> contacts(size_t(n), 0);

  std::function<void(int)> dfs = [&](int depth) {
    if (depth == n) {
      conf.backbone = pts;
      agg.add(Energy(-contacts[size_t(n - 1)]), conf);
      return;
    }
    for (const Point& v : lattice.neighbor_vectors()) {
      const Point q = pts[size_t(depth - 1)] + v;
      if (grid.at(q) != 0) continue;
      bool canonical = true;
      auto& next_active = active.ids[size_t(depth)];
      next_active.clear();
      for (uint8_t id : active.ids[size_t(depth - 1)]) {
        const Point gq = group[id].apply(q);
        if (gq < q) {
          canonical = false;
          break;
        }
        if (gq == q) next_active.push_back(id);
      }
      if (!canonical) continue;

      int gained = 0;
      if (seq.is_h(depth)) {
        for (const Point& u : lattice.neighbor_vectors()) {
          const int16_t occ = grid.at(q + u);
          if (occ != 0 && occ != depth && seq.is_h(occ - 1)) ++gained;  // occ == depth is the chain predecessor
        }
      }
      contacts[size_t(depth)] = contacts[size_t(depth - 1)] + gained;
      pts[size_t(depth)] = q;
      grid.set(q, int16_t(depth + 1));
      dfs(depth + 1);
      grid.set(q, 0);
    }
  };

  pts[0] = {0, 0, 0};
  grid.set(pts[0], 1);
  if (n == 1) {
    conf.backbone = pts;
    agg.add(0, conf);
  } else {
    dfs(1);
  }
  grid.set(pts[0], 0);
  return std::move(agg).finish();
}

OracleResult brute_force_side_chain(const HpSequence& seq, const Lattice& lattice) {
  const int n = seq.length();
  OptimalAggregate agg(seq, lattice, ModelKind::SideChain);
  Grid grid(n + 1);
  // Element order: b_0, s_0, b_1, s_1, ... (2n points); this is also the
  // tuple order for the lex-leader reduction.
  std::vector<Point> bb(size_t(n)), sc(size_t(n));
  ActiveStack active;
  const auto& group = lattice.point_group();
  active.init(size_t(2 * n), group.size());
  std::vector<int> contacts(size_t(2 * n), 0);
  Conformation conf;
  constexpr int16_t kBackbone = 1, kSideP = 2, kSideH = 3;

  std::function<void(int)> dfs = [&](int element) {
    if (element == 2 * n) {
      conf.backbone = bb;
      conf.side_chains = sc;
      agg.add(Energy(-contacts[size_t(2 * n - 1)]), conf);
      return;
    }
    const int residue = element / 2;
    const bool placing_side = (element % 2) == 1;
    const Point& anchor = bb[size_t(placing_side ? residue : residue - 1)];
    for (const Point& v : lattice.neighbor_vectors()) {
      const Point q = anchor + v;
      if (grid.at(q) != 0) continue;
      bool canonical = true;
      auto& next_active = active.ids[size_t(element)];
      next_active.clear();
      for (uint8_t id : active.ids[size_t(element - 1)]) {
        const Point gq = group[id].apply(q);
        if (gq < q) {
          canonical = false;
          break;
        }
        if (gq == q) next_active.push_back(id);
      }
      if (!canonical) continue;

      int gained = 0;
      int16_t code = kBackbone;
      if (placing_side) {
        code = seq.is_h(residue) ? kSideH : kSideP;
        if (code == kSideH)
          for (const Point& u : lattice.neighbor_vectors())
            if (grid.at(q + u) == kSideH) ++gained;
      }
      contacts[size_t(element)] = contacts[size_t(element - 1)] + gained;
      if (placing_side)
        sc[size_t(residue)] = q;
      else
        bb[size_t(residue)] = q;
      grid.set(q, code);
      dfs(element + 1);
      grid.set(q, 0);
    }
  };

  bb[0] = {0, 0, 0};
  grid.set(bb[0], kBackbone);
  dfs(1);
  grid.set(bb[0], 0);
  return std::move(agg).finish();
}

}  // namespace

int oracle_max_length(const Lattice& lattice, ModelKind kind) {
  if (kind == ModelKind::Backbone) {
    switch (lattice.kind()) {
      case LatticeKind::Cubic: return 14;
      case LatticeKind::Fcc: return 10;
      case LatticeKind::Sqr: return 18;
    }
  }
  switch (lattice.kind()) {
    case LatticeKind::Cubic: return 8;
    case LatticeKind::Fcc: return 6;
    case LatticeKind::Sqr: return 10;
  }
  return 0;
}

void enumerate_saws(int n, const Lattice& lattice, bool symmetry_reduce,
                    const std::function<bool(std::span<const Point>)>& walk) {
  check_bound(n, lattice, ModelKind::Backbone);
  WalkEnumerator enumerator(n, lattice, symmetry_reduce, walk);
  enumerator.run();
}

OracleResult brute_force_optimal(const HpSequence& seq, const Lattice& lattice, ModelKind kind) {
  check_bound(seq.length(), lattice, kind);
  return kind == ModelKind::Backbone ? brute_force_backbone(seq, lattice) : brute_force_side_chain(seq, lattice);
}

std::vector<OracleClass> class_partition(const HpSequence& seq, std::span<const Conformation> structures,
                                         ModelKind kind, const Lattice& lattice) {
  std::map<std::vector<Point>, OracleClass> classes;
  std::vector<Point> scratch;
  for (const Conformation& conf : structures) {
    const ValidationReport report = validate_conformation(seq, conf, lattice, kind);
    if (!report.ok()) throw ValidationError("invalid structure: " + report.to_string());
    scratch.clear();
    const auto& source = kind == ModelKind::Backbone ? conf.backbone : conf.side_chains;
    for (int i : seq.h_indices()) scratch.push_back(source[size_t(i)]);
    std::vector<Point> key = canonicalize_point_tuple(lattice, scratch);
    auto [it, inserted] = classes.try_emplace(std::move(key));
    if (inserted) {
      it->second.key = it->first;
      it->second.member = conf;
    }
    ++it->second.size;
  }
  std::vector<OracleClass> out;
  out.reserve(classes.size());
  for (auto& [key, cls] : classes) out.push_back(std::move(cls));
  return out;
}

}  // namespace hpkit
