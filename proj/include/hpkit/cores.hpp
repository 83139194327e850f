#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "hpkit/lattice.hpp"

namespace hpkit {

// A packing of nH points in canonical form together with its number of
// lattice-neighbor point pairs.
struct HCore {
  std::vector<Point> points;  // canonical: canonicalize_point_set(points) == points
  int contacts = 0;
};

// All canonical nH-point sets with a fixed contact count, within the search
// bound. Layer k holds contact count maxContacts(nH) - k.
struct CoreLayer {
  int layer_index = 0;
  int contacts = 0;
  std::vector<HCore> cores;  // sorted by point list, pairwise distinct
};

struct CoreBuildLimits {
  int max_layers = 2;
  int volume_cap = 512;
  // Accept nH up to this; -1 selects the lattice default (cubic/sqr 20,
  // fcc 14). Builds beyond the default must raise it explicitly.
  int max_nh = -1;
};

int default_max_nh(const Lattice& lattice);

// Search bound: point sets are enumerated inside bounding boxes of a x b x c
// grid points with every dimension <= nH and a*b*c <= volume_cap, anchored so
// the set touches all six faces. Completeness claims are relative to this
// bound; it is recorded in the database header.
//
// Maximum pair-adjacency count over nH-point sets within the bound.
int max_contacts(int nh, const Lattice& lattice, int volume_cap = 512);

// The complete layer k for nH within the bound. A layer whose contact count
// would be negative is empty.
CoreLayer enumerate_cores(int nh, const Lattice& lattice, int k, int volume_cap = 512);

// Layered core storage for one lattice, persisted as plain text:
//
//   HPCOREDB 1
//   lattice <name>
//   bound <volume-cap>
//   nH <n> layer <k> contacts <c> count <m>
//   x,y,z;x,y,z;...                (m core lines, points sorted)
//   ...
//   checksum <16 hex digits>       (FNV-1a 64 over all preceding bytes)
class CoreDatabase {
 public:
  static CoreDatabase build(const Lattice& lattice, std::span<const int> nhs, const CoreBuildLimits& limits);
  static CoreDatabase load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::string to_text() const;

  const Lattice& lattice() const { return *lattice_; }
  int volume_cap() const { return volume_cap_; }
  // Number of contiguous layers materialized for nH (0 if absent).
  int stored_layers(int nh) const;
  const CoreLayer& layer(int nh, int k) const;
  std::vector<int> stored_nh() const;

 private:
  CoreDatabase(const Lattice& lattice, int volume_cap) : lattice_(&lattice), volume_cap_(volume_cap) {}

  const Lattice* lattice_;
  int volume_cap_;
  std::map<int, std::vector<CoreLayer>> entries_;
};

}  // namespace hpkit
