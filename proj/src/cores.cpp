#include "hpkit/cores.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace hpkit {

namespace {

struct BoxSpec {
  int a, b, c;
};

// All grid boxes with c <= b <= a <= dim_cap and volume <= vol_cap, ascending
// volume. Sorted dimensions are enough: the point groups of all supported
// lattices contain the axis permutations (x/y for sqr), so every orbit has a
// member whose bounding box has sorted dimensions.
std::vector<BoxSpec> box_family(const Lattice& lattice, int dim_cap, int vol_cap) {
  std::vector<BoxSpec> boxes;
  const bool planar = lattice.kind() == LatticeKind::Sqr;
  for (int a = 1; a <= dim_cap; ++a)
    for (int b = 1; b <= a; ++b)
      for (int c = 1; c <= (planar ? 1 : b); ++c)
        if (int64_t(a) * b * c <= vol_cap) boxes.push_back({a, b, c});
  std::stable_sort(boxes.begin(), boxes.end(),
                   [](const BoxSpec& l, const BoxSpec& r) { return l.a * l.b * l.c < r.a * r.b * r.c; });
  return boxes;
}

struct CellGraph {
  std::vector<Point> cells;  // box-local coordinates, lex sorted
  std::vector<std::vector<int>> adj;
  std::vector<uint8_t> face_mask;
  std::vector<uint8_t> suffix_mask;
};

// parity: -1 = all cells; 0/1 = fcc coordinate-sum class within the box.
CellGraph make_cells(const Lattice& lattice, const BoxSpec& box, int parity) {
  CellGraph g;
  std::vector<int> id(size_t(box.a) * size_t(box.b) * size_t(box.c), -1);
  auto slot = [&](int x, int y, int z) -> int& { return id[size_t((x * box.b + y) * box.c + z)]; };
  for (int x = 0; x < box.a; ++x)
    for (int y = 0; y < box.b; ++y)
      for (int z = 0; z < box.c; ++z) {
        if (parity >= 0 && ((x + y + z) & 1) != parity) continue;
        if (lattice.kind() == LatticeKind::Sqr && z != 0) continue;
        slot(x, y, z) = int(g.cells.size());
        g.cells.push_back({x, y, z});
      }
  g.adj.resize(g.cells.size());
  g.face_mask.resize(g.cells.size());
  for (int i = 0; i < int(g.cells.size()); ++i) {
    const Point& p = g.cells[size_t(i)];
    for (const Point& v : lattice.neighbor_vectors()) {
      const Point q = p + v;
      if (q.x < 0 || q.x >= box.a || q.y < 0 || q.y >= box.b || q.z < 0 || q.z >= box.c) continue;
      const int j = slot(q.x, q.y, q.z);
      if (j >= 0) g.adj[size_t(i)].push_back(j);
    }
    uint8_t m = 0;
    if (p.x == 0) m |= 1;
    if (p.x == box.a - 1) m |= 2;
    if (p.y == 0) m |= 4;
    if (p.y == box.b - 1) m |= 8;
    if (p.z == 0) m |= 16;
    if (p.z == box.c - 1) m |= 32;
    g.face_mask[size_t(i)] = m;
  }
  g.suffix_mask.assign(g.cells.size() + 1, 0);
  for (int i = int(g.cells.size()) - 1; i >= 0; --i)
    g.suffix_mask[size_t(i)] = uint8_t(g.suffix_mask[size_t(i + 1)] | g.face_mask[size_t(i)]);
  return g;
}

// Depth-first enumeration of anchored subsets (touching all box faces) in
// ascending cell order, pruned by an admissible bound on the contacts still
// reachable: current + best cross-adjacency sum + internal_bound[remaining].
class SetSearch {
 public:
  SetSearch(const CellGraph& g, int target, const std::vector<int>& internal_bound,
            const std::function<void(std::span<const int>, int)>& emit)
      : g_(g), target_(target), internal_bound_(internal_bound), emit_(emit) {
    adj_count_.assign(g_.cells.size(), 0);
    scratch_.reserve(g_.cells.size());
  }

  void run(int cmin) {
    cmin_ = cmin;
    chosen_.clear();
    recurse(0, 0, 0);
  }

  void raise_cmin(int cmin) { cmin_ = cmin > cmin_ ? cmin : cmin_; }

 private:
  void recurse(int next, int contacts, uint8_t touched) {
    const int r = target_ - int(chosen_.size());
    if (r == 0) {
      if (contacts >= cmin_ && touched == 63) emit_(chosen_, contacts);
      return;
    }
    const int cand = int(g_.cells.size()) - next;
    if (cand < r) return;
    if ((touched | g_.suffix_mask[size_t(next)]) != 63) return;

    scratch_.clear();
    for (int j = next; j < int(g_.cells.size()); ++j) scratch_.push_back(adj_count_[size_t(j)]);
    std::nth_element(scratch_.begin(), scratch_.begin() + (r - 1), scratch_.end(), std::greater<int>());
    int cross = 0;
    for (int i = 0; i < r; ++i) cross += scratch_[size_t(i)];
    if (contacts + cross + internal_bound_[size_t(r)] < cmin_) return;

    for (int j = next; j <= int(g_.cells.size()) - r; ++j) {
      const int gained = adj_count_[size_t(j)];
      for (int u : g_.adj[size_t(j)]) ++adj_count_[size_t(u)];
      chosen_.push_back(j);
      recurse(j + 1, contacts + gained, uint8_t(touched | g_.face_mask[size_t(j)]));
      chosen_.pop_back();
      for (int u : g_.adj[size_t(j)]) --adj_count_[size_t(u)];
    }
  }

  const CellGraph& g_;
  int target_;
  const std::vector<int>& internal_bound_;
  const std::function<void(std::span<const int>, int)>& emit_;
  std::vector<int> adj_count_;
  std::vector<int> chosen_;
  std::vector<int> scratch_;
  int cmin_ = 0;
};

std::vector<int> parity_passes(const Lattice& lattice) {
  if (lattice.kind() == LatticeKind::Fcc) return {0, 1};
  return {-1};
}

// internal_bound vector for a pass of the given size: table values for
// 0..size-1 plus a never-pruning sentinel at [size] (the root's remaining
// count has no precomputed bound).
std::vector<int> bound_vector(const std::vector<int>& table, int size) {
  std::vector<int> ib(table.begin(), table.begin() + size);
  ib.push_back(INT_MAX / 4);
  return ib;
}

// Admissible internal bound: true maximum contacts of any r-point set that
// fits in a volume <= vol_cap box. Every such set compactifies (closing empty
// slices, which never loses contacts) into a box with dimensions <= r on
// cubic/sqr and <= 2r-1 on fcc (parity-preserving shifts may leave one empty
// slice per gap), so a search over those small boxes is exact.
std::vector<int> small_table(const Lattice& lattice, int vol_cap, int up_to) {
  static std::map<std::pair<int, int>, std::vector<int>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto& table = cache[{int(lattice.kind()), vol_cap}];
  if (table.empty()) table = {0, 0};
  while (int(table.size()) <= up_to) {
    const int r = int(table.size());
    const int dim_cap = lattice.kind() == LatticeKind::Fcc ? 2 * r - 1 : r;
    int best = -1;
    const std::vector<int> ib = bound_vector(table, r);
    for (const BoxSpec& box : box_family(lattice, dim_cap, vol_cap)) {
      for (int parity : parity_passes(lattice)) {
        const CellGraph g = make_cells(lattice, box, parity);
        if (int(g.cells.size()) < r) continue;
        SetSearch* active = nullptr;
        const std::function<void(std::span<const int>, int)> emit = [&](std::span<const int>, int contacts) {
          if (contacts > best) {
            best = contacts;
            active->raise_cmin(best + 1);
          }
        };
        SetSearch search(g, r, ib, emit);
        active = &search;
        search.run(best + 1);
      }
    }
    table.push_back(best < 0 ? 0 : best);
  }
  return std::vector<int>(table.begin(), table.end());
}

void check_capacity(int nh, const Lattice& lattice, int max_nh) {
  const int cap = max_nh < 0 ? default_max_nh(lattice) : max_nh;
  if (nh < 1) throw ArgumentError("nH must be at least 1");
  if (nh > cap)
    throw CapacityError("nH " + std::to_string(nh) + " exceeds the supported bound " + std::to_string(cap) +
                        " for lattice " + lattice.name());
}

int family_max(int nh, const Lattice& lattice, int vol_cap, const std::vector<int>& table) {
  int best = -1;
  const std::vector<int> ib = bound_vector(table, nh);
  for (const BoxSpec& box : box_family(lattice, nh, vol_cap)) {
    for (int parity : parity_passes(lattice)) {
      const CellGraph g = make_cells(lattice, box, parity);
      if (int(g.cells.size()) < nh) continue;
      SetSearch* active = nullptr;
      const std::function<void(std::span<const int>, int)> emit = [&](std::span<const int>, int contacts) {
        if (contacts > best) {
          best = contacts;
          active->raise_cmin(best + 1);
        }
      };
      SetSearch search(g, nh, ib, emit);
      active = &search;
      search.run(best + 1);
    }
  }
  if (best < 0)
    throw CapacityError("volume cap " + std::to_string(vol_cap) + " cannot hold " + std::to_string(nh) + " points");
  return best;
}

// All canonical sets with contacts >= cmin, keyed by canonical form.
std::map<std::vector<Point>, int> enumerate_sets(int nh, const Lattice& lattice, int vol_cap, int cmin,
                                                 const std::vector<int>& table) {
  std::map<std::vector<Point>, int> canon;
  const std::vector<int> ib = bound_vector(table, nh);
  std::vector<Point> points(size_t(nh));
  for (const BoxSpec& box : box_family(lattice, nh, vol_cap)) {
    for (int parity : parity_passes(lattice)) {
      const CellGraph g = make_cells(lattice, box, parity);
      if (int(g.cells.size()) < nh) continue;
      const std::function<void(std::span<const int>, int)> emit = [&](std::span<const int> cells, int contacts) {
        for (size_t i = 0; i < cells.size(); ++i) {
          points[i] = g.cells[size_t(cells[i])];
          if (parity == 1) points[i].z += 1;  // odd class sits one step off the origin plane
        }
        canon.emplace(canonicalize_point_set(lattice, points), contacts);
      };
      SetSearch search(g, nh, ib, emit);
      search.run(cmin);
    }
  }
  return canon;
}

std::vector<CoreLayer> build_layers(int nh, const Lattice& lattice, int max_layers, int vol_cap) {
  const std::vector<int> table = small_table(lattice, vol_cap, nh - 1);
  const int fmax = family_max(nh, lattice, vol_cap, table);
  const int cmin = std::max(0, fmax - (max_layers - 1));
  const auto canon = enumerate_sets(nh, lattice, vol_cap, cmin, table);
  std::vector<CoreLayer> layers(size_t(max_layers));
  for (int k = 0; k < max_layers; ++k) {
    layers[size_t(k)].layer_index = k;
    layers[size_t(k)].contacts = fmax - k;
  }
  for (const auto& [points, contacts] : canon) {
    const int k = fmax - contacts;
    if (k >= 0 && k < max_layers) layers[size_t(k)].cores.push_back({points, contacts});
  }
  return layers;
}

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

int default_max_nh(const Lattice& lattice) { return lattice.kind() == LatticeKind::Fcc ? 14 : 20; }

int max_contacts(int nh, const Lattice& lattice, int volume_cap) {
  check_capacity(nh, lattice, -1);
  return family_max(nh, lattice, volume_cap, small_table(lattice, volume_cap, nh - 1));
}

CoreLayer enumerate_cores(int nh, const Lattice& lattice, int k, int volume_cap) {
  check_capacity(nh, lattice, -1);
  if (k < 0) throw ArgumentError("layer index must be non-negative");
  const std::vector<int> table = small_table(lattice, volume_cap, nh - 1);
  const int fmax = family_max(nh, lattice, volume_cap, table);
  CoreLayer layer;
  layer.layer_index = k;
  layer.contacts = fmax - k;
  if (layer.contacts < 0) return layer;  // below the contacts floor: empty
  for (const auto& [points, contacts] : enumerate_sets(nh, lattice, volume_cap, layer.contacts, table))
    if (contacts == layer.contacts) layer.cores.push_back({points, contacts});
  return layer;
}

CoreDatabase CoreDatabase::build(const Lattice& lattice, std::span<const int> nhs, const CoreBuildLimits& limits) {
  if (limits.max_layers < 1 || limits.max_layers > 10)
    throw ArgumentError("maxLayers must be between 1 and 10");
  if (limits.volume_cap < 1) throw ArgumentError("volume cap must be positive");
  for (int nh : nhs) check_capacity(nh, lattice, limits.max_nh);

  CoreDatabase db(lattice, limits.volume_cap);
  std::vector<int> sorted(nhs.begin(), nhs.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int nh : sorted) db.entries_[nh] = build_layers(nh, lattice, limits.max_layers, limits.volume_cap);
  return db;
}

int CoreDatabase::stored_layers(int nh) const {
  auto it = entries_.find(nh);
  return it == entries_.end() ? 0 : int(it->second.size());
}

const CoreLayer& CoreDatabase::layer(int nh, int k) const {
  auto it = entries_.find(nh);
  if (it == entries_.end() || k < 0 || k >= int(it->second.size()))
    throw ArgumentError("core database has no layer " + std::to_string(k) + " for nH " + std::to_string(nh));
  return it->second[size_t(k)];
}

std::vector<int> CoreDatabase::stored_nh() const {
  std::vector<int> out;
  for (const auto& [nh, layers] : entries_) out.push_back(nh);
  return out;
}

std::string CoreDatabase::to_text() const {
  std::ostringstream os;
  os << "HPCOREDB 1\n";
  os << "lattice " << lattice_->name() << "\n";
  os << "bound " << volume_cap_ << "\n";
  for (const auto& [nh, layers] : entries_) {
    for (const CoreLayer& layer : layers) {
      os << "nH " << nh << " layer " << layer.layer_index << " contacts " << layer.contacts << " count "
         << layer.cores.size() << "\n";
      for (const HCore& core : layer.cores) {
        for (size_t i = 0; i < core.points.size(); ++i) {
          const Point& p = core.points[i];
          if (i) os << ';';
          os << p.x << ',' << p.y << ',' << p.z;
        }
        os << "\n";
      }
    }
  }
  std::string body = os.str();
  body += "checksum " + hex16(fnv1a64(body)) + "\n";
  return body;
}

void CoreDatabase::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const std::string text = to_text();
  out.write(text.data(), std::streamsize(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

namespace {

// Line reader that tracks byte offsets for format diagnostics.
struct LineReader {
  std::string_view text;
  size_t pos = 0;

  bool next(std::string_view& line, size_t& line_start) {
    if (pos >= text.size()) return false;
    line_start = pos;
    const size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      // A database file always ends in a newline.
      throw DbFormatError("missing final newline", static_cast<long long>(text.size()));
    }
    line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return true;
  }
};

int parse_int(std::string_view s, size_t offset) {
  try {
    size_t used = 0;
    const int v = std::stoi(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DbFormatError("malformed integer '" + std::string(s) + "'", static_cast<long long>(offset));
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

}  // namespace

CoreDatabase CoreDatabase::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open core database " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  LineReader reader{text};
  std::string_view line;
  size_t at = 0;

  if (!reader.next(line, at) || line.substr(0, 8) != "HPCOREDB")
    throw DbFormatError("not a core database (missing HPCOREDB header)", 0);
  if (line != "HPCOREDB 1")
    throw DbFormatError("unsupported format version '" + std::string(line) + "'", static_cast<long long>(at));

  if (!reader.next(line, at) || line.substr(0, 8) != "lattice ")
    throw DbFormatError("missing lattice line", static_cast<long long>(at));
  const Lattice* lattice = nullptr;
  try {
    lattice = &Lattice::by_name(line.substr(8));
  } catch (const ArgumentError& e) {
    throw DbFormatError(e.what(), static_cast<long long>(at));
  }

  if (!reader.next(line, at) || line.substr(0, 6) != "bound ")
    throw DbFormatError("missing bound line", static_cast<long long>(at));
  const int volume_cap = parse_int(line.substr(6), at);

  CoreDatabase db(*lattice, volume_cap);
  while (true) {
    size_t line_start = 0;
    if (!reader.next(line, line_start))
      throw DbFormatError("missing checksum line", static_cast<long long>(text.size()));
    if (line.substr(0, 9) == "checksum ") {
      const std::string_view stored = line.substr(9);
      const std::string actual = hex16(fnv1a64(std::string_view(text).substr(0, line_start)));
      if (stored != actual)
        throw DbChecksumError("checksum mismatch: stored " + std::string(stored) + ", computed " + actual);
      if (reader.pos != text.size())
        throw DbFormatError("trailing data after checksum", static_cast<long long>(reader.pos));
      break;
    }

    // Block header: nH <n> layer <k> contacts <c> count <m>
    const auto fields = split(line, ' ');
    if (fields.size() != 8 || fields[0] != "nH" || fields[2] != "layer" || fields[4] != "contacts" ||
        fields[6] != "count")
      throw DbFormatError("malformed block header '" + std::string(line) + "'", static_cast<long long>(line_start));
    const int nh = parse_int(fields[1], line_start);
    const int k = parse_int(fields[3], line_start);
    const int contacts = parse_int(fields[5], line_start);
    const int count = parse_int(fields[7], line_start);
    if (nh < 1 || k < 0 || count < 0)
      throw DbFormatError("implausible block header '" + std::string(line) + "'", static_cast<long long>(line_start));

    auto& layers = db.entries_[nh];
    if (k != int(layers.size()))
      throw DbFormatError("layers for nH " + std::to_string(nh) + " are not contiguous",
                          static_cast<long long>(line_start));
    if (!layers.empty() && contacts != layers.back().contacts - 1)
      throw DbFormatError("layer contact counts must decrease by 1", static_cast<long long>(line_start));

    CoreLayer layer;
    layer.layer_index = k;
    layer.contacts = contacts;
    for (int i = 0; i < count; ++i) {
      size_t core_at = 0;
      if (!reader.next(line, core_at))
        throw DbFormatError("truncated core block", static_cast<long long>(text.size()));
      HCore core;
      core.contacts = contacts;
      for (std::string_view part : split(line, ';')) {
        const auto coords = split(part, ',');
        if (coords.size() != 3) throw DbFormatError("malformed core point", static_cast<long long>(core_at));
        core.points.push_back(
            {parse_int(coords[0], core_at), parse_int(coords[1], core_at), parse_int(coords[2], core_at)});
      }
      if (int(core.points.size()) != nh)
        throw DbIntegrityError("core has " + std::to_string(core.points.size()) + " points, expected " +
                                   std::to_string(nh),
                               nh, k, i);
      int recomputed = 0;
      for (size_t p = 0; p < core.points.size(); ++p)
        for (size_t q = p + 1; q < core.points.size(); ++q)
          if (lattice->is_neighbor_vector(core.points[p] - core.points[q])) ++recomputed;
      if (recomputed != contacts)
        throw DbIntegrityError("stored contact count " + std::to_string(contacts) + " does not match recomputed " +
                                   std::to_string(recomputed) + " (nH " + std::to_string(nh) + ", layer " +
                                   std::to_string(k) + ", core " + std::to_string(i) + ")",
                               nh, k, i);
      layer.cores.push_back(std::move(core));
    }
    layers.push_back(std::move(layer));
  }
  return db;
}

}  // namespace hpkit
